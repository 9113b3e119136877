#include "pplr/sharing.hpp"

#include <cmath>
#include <string>

namespace pplr {

void FixedPointConfig::validate() const {
  if (ring_bits < 2 || ring_bits > 64) {
    throw InvalidArgument("ring_bits must lie in [2, 64], got " +
                          std::to_string(ring_bits));
  }
  if (frac_bits <= 0 || frac_bits >= ring_bits - 1) {
    throw InvalidArgument("frac_bits must satisfy 0 < frac_bits < ring_bits - 1");
  }
}

double FixedPointConfig::max_magnitude() const {
  return std::ldexp(1.0, ring_bits - frac_bits - 1);
}

std::int64_t FixedPointConfig::to_signed(std::uint64_t v) const noexcept {
  if (ring_bits >= 64) return static_cast<std::int64_t>(v);
  const int shift = 64 - ring_bits;
  return static_cast<std::int64_t>(v << shift) >> shift;
}

std::uint64_t encode_fixed(double x, const FixedPointConfig& cfg) {
  if (!std::isfinite(x) || std::fabs(x) >= cfg.max_magnitude()) {
    throw OverflowError("value " + std::to_string(x) +
                        " is outside the fixed-point range +-2^" +
                        std::to_string(cfg.ring_bits - cfg.frac_bits - 1));
  }
  const auto scaled = static_cast<std::int64_t>(
      std::nearbyint(std::ldexp(x, cfg.frac_bits)));
  return static_cast<std::uint64_t>(scaled) & cfg.mask();
}

double decode_fixed(std::uint64_t v, const FixedPointConfig& cfg) {
  return std::ldexp(static_cast<double>(cfg.to_signed(v & cfg.mask())),
                    -cfg.frac_bits);
}

Matrix<std::uint64_t> encode_fixed(const Matrix<double>& m,
                                   const FixedPointConfig& cfg) {
  Matrix<std::uint64_t> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = encode_fixed(m[i], cfg);
  return out;
}

Matrix<double> decode_fixed(const Matrix<std::uint64_t>& m,
                            const FixedPointConfig& cfg) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = decode_fixed(m[i], cfg);
  return out;
}

namespace {

void require_parties(std::size_t n) {
  if (n < 2) {
    throw InvalidArgument("additive sharing needs at least 2 parties, got " +
                          std::to_string(n));
  }
}

void require_count(std::size_t got, std::size_t expected) {
  if (got != expected) {
    throw InvalidArgument("reconstruction expects " + std::to_string(expected) +
                          " shares, got " + std::to_string(got));
  }
}

}  // namespace

std::vector<RingShare> share_ring(std::uint64_t secret, std::size_t n_parties,
                                  Rng& rng, const FixedPointConfig& cfg) {
  require_parties(n_parties);
  std::vector<RingShare> shares(n_parties);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i + 1 < n_parties; ++i) {
    shares[i] = {rng() & cfg.mask(), PartyId{static_cast<std::uint32_t>(i)}};
    sum += shares[i].value;
  }
  shares.back() = {(secret - sum) & cfg.mask(),
                   PartyId{static_cast<std::uint32_t>(n_parties - 1)}};
  return shares;
}

std::vector<RealShare> share_real(double secret, std::size_t n_parties,
                                  Rng& rng, double mask_bound) {
  require_parties(n_parties);
  if (!(mask_bound > 0.0)) throw InvalidArgument("mask_bound must be positive");
  std::vector<RealShare> shares(n_parties);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n_parties; ++i) {
    shares[i] = {uniform_real(rng, -mask_bound, mask_bound),
                 PartyId{static_cast<std::uint32_t>(i)}, mask_bound};
    sum += shares[i].value;
  }
  shares.back() = {secret - sum,
                   PartyId{static_cast<std::uint32_t>(n_parties - 1)},
                   mask_bound};
  return shares;
}

std::vector<RingShareMatrix> share_matrix(const Matrix<std::uint64_t>& secret,
                                          std::size_t n_parties, Rng& rng,
                                          const FixedPointConfig& cfg) {
  require_parties(n_parties);
  std::vector<RingShareMatrix> out(n_parties);
  for (std::size_t p = 0; p < n_parties; ++p) {
    out[p].owner = PartyId{static_cast<std::uint32_t>(p)};
    out[p].values = Matrix<std::uint64_t>(secret.rows(), secret.cols());
  }
  for (std::size_t i = 0; i < secret.size(); ++i) {
    std::uint64_t sum = 0;
    for (std::size_t p = 0; p + 1 < n_parties; ++p) {
      const std::uint64_t r = rng() & cfg.mask();
      out[p].values[i] = r;
      sum += r;
    }
    out.back().values[i] = (secret[i] - sum) & cfg.mask();
  }
  return out;
}

std::vector<RealShareMatrix> share_matrix(const Matrix<double>& secret,
                                          std::size_t n_parties, Rng& rng,
                                          double mask_bound) {
  require_parties(n_parties);
  std::vector<RealShareMatrix> out(n_parties);
  for (std::size_t p = 0; p < n_parties; ++p) {
    out[p].owner = PartyId{static_cast<std::uint32_t>(p)};
    out[p].values = Matrix<double>(secret.rows(), secret.cols());
  }
  for (std::size_t i = 0; i < secret.size(); ++i) {
    double sum = 0.0;
    for (std::size_t p = 0; p + 1 < n_parties; ++p) {
      const double r = uniform_real(rng, -mask_bound, mask_bound);
      out[p].values[i] = r;
      sum += r;
    }
    out.back().values[i] = secret[i] - sum;
  }
  return out;
}

std::uint64_t reconstruct_ring(std::span<const RingShare> shares,
                               std::size_t expected_parties,
                               const FixedPointConfig& cfg) {
  require_count(shares.size(), expected_parties);
  std::uint64_t sum = 0;
  for (const auto& s : shares) sum += s.value;
  return sum & cfg.mask();
}

double reconstruct_real(std::span<const RealShare> shares,
                        std::size_t expected_parties) {
  require_count(shares.size(), expected_parties);
  double sum = 0.0;
  for (const auto& s : shares) sum += s.value;
  return sum;
}

std::variant<std::uint64_t, double> reconstruct(
    std::span<const AnyShare> shares, std::size_t expected_parties,
    const FixedPointConfig& cfg) {
  require_count(shares.size(), expected_parties);
  if (shares.empty()) throw InvalidArgument("nothing to reconstruct");
  const bool ring = std::holds_alternative<RingShare>(shares.front());
  for (const auto& s : shares) {
    if (std::holds_alternative<RingShare>(s) != ring) {
      throw InvalidArgument("cannot reconstruct a mix of ring and real shares");
    }
  }
  if (ring) {
    std::uint64_t sum = 0;
    for (const auto& s : shares) sum += std::get<RingShare>(s).value;
    return sum & cfg.mask();
  }
  double sum = 0.0;
  for (const auto& s : shares) sum += std::get<RealShare>(s).value;
  return sum;
}

Matrix<std::uint64_t> reconstruct_matrix(
    std::span<const Matrix<std::uint64_t>> shares,
    const FixedPointConfig& cfg) {
  if (shares.size() < 2) throw InvalidArgument("need at least two shares");
  Matrix<std::uint64_t> out = shares.front();
  for (std::size_t p = 1; p < shares.size(); ++p) out += shares[p];
  for (auto& v : out.values()) v &= cfg.mask();
  return out;
}

Matrix<double> reconstruct_matrix(std::span<const Matrix<double>> shares) {
  if (shares.size() < 2) throw InvalidArgument("need at least two shares");
  Matrix<double> out = shares.front();
  for (std::size_t p = 1; p < shares.size(); ++p) out += shares[p];
  return out;
}

}  // namespace pplr
