#pragma once

// Additive secret sharing over two domains:
//  * the ring Z_{2^ring_bits}, carrying fixed-point encoded reals, and
//  * the reals, where the shares of x are doubles summing to x. The exact
//    sigmoid needs this one because e^{a+b} = e^a * e^b only holds for
//    shares that add up over the reals, not modulo 2^l.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "pplr/matrix.hpp"
#include "pplr/random.hpp"

namespace pplr {

struct PartyId {
  std::uint32_t index = 0;
  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

struct FixedPointConfig {
  int ring_bits = 64;
  int frac_bits = 16;

  /// Throws InvalidArgument unless 0 < frac_bits < ring_bits - 1 and
  /// ring_bits <= 64.
  void validate() const;

  std::uint64_t mask() const noexcept {
    return ring_bits >= 64 ? ~std::uint64_t{0}
                           : (std::uint64_t{1} << ring_bits) - 1;
  }
  /// Largest magnitude encode_fixed accepts: 2^(ring_bits - frac_bits - 1).
  double max_magnitude() const;
  /// Interprets the low ring_bits of v as a two's-complement integer.
  std::int64_t to_signed(std::uint64_t v) const noexcept;
};

/// round(x * 2^frac_bits) mod 2^ring_bits. Throws OverflowError when
/// |x| >= max_magnitude().
std::uint64_t encode_fixed(double x, const FixedPointConfig& cfg);
double decode_fixed(std::uint64_t v, const FixedPointConfig& cfg);
Matrix<std::uint64_t> encode_fixed(const Matrix<double>& m,
                                   const FixedPointConfig& cfg);
Matrix<double> decode_fixed(const Matrix<std::uint64_t>& m,
                            const FixedPointConfig& cfg);

/// Default half-width of the uniform masks used for standalone real shares.
/// Hiding is statistical over a bounded interval, i.e. simulation grade.
inline constexpr double kDefaultRealMaskBound = 0x1.0p40;

struct RingShare {
  std::uint64_t value = 0;
  PartyId owner;
};

struct RealShare {
  double value = 0.0;
  PartyId owner;
  double mask_bound = kDefaultRealMaskBound;
};

using AnyShare = std::variant<RingShare, RealShare>;

/// One party's fragment of a shared matrix.
template <class T>
struct ShareMatrix {
  PartyId owner;
  Matrix<T> values;
};

using RingShareMatrix = ShareMatrix<std::uint64_t>;
using RealShareMatrix = ShareMatrix<double>;

std::vector<RingShare> share_ring(std::uint64_t secret, std::size_t n_parties,
                                  Rng& rng, const FixedPointConfig& cfg = {});
std::vector<RealShare> share_real(double secret, std::size_t n_parties,
                                  Rng& rng,
                                  double mask_bound = kDefaultRealMaskBound);

std::vector<RingShareMatrix> share_matrix(const Matrix<std::uint64_t>& secret,
                                          std::size_t n_parties, Rng& rng,
                                          const FixedPointConfig& cfg = {});
std::vector<RealShareMatrix> share_matrix(
    const Matrix<double>& secret, std::size_t n_parties, Rng& rng,
    double mask_bound = kDefaultRealMaskBound);

/// Sum of the shares modulo 2^ring_bits. `expected_parties` guards against
/// a missing or duplicated fragment.
std::uint64_t reconstruct_ring(std::span<const RingShare> shares,
                               std::size_t expected_parties,
                               const FixedPointConfig& cfg = {});
double reconstruct_real(std::span<const RealShare> shares,
                        std::size_t expected_parties);

/// Domain-checked reconstruction for heterogeneous collections; throws
/// InvalidArgument when ring and real shares are mixed.
std::variant<std::uint64_t, double> reconstruct(
    std::span<const AnyShare> shares, std::size_t expected_parties,
    const FixedPointConfig& cfg = {});

Matrix<std::uint64_t> reconstruct_matrix(
    std::span<const Matrix<std::uint64_t>> shares,
    const FixedPointConfig& cfg = {});
Matrix<double> reconstruct_matrix(std::span<const Matrix<double>> shares);

}  // namespace pplr
