#pragma once

// Secret-shared arithmetic executed by one computation party.
//
// A PartyRuntime owns one party's view: its randomness, its triples and its
// endpoint on the transport. Every protocol method is collective, so all
// parties must call the same methods in the same order; round tags are
// derived from a per-runtime operation counter, which keeps concurrent
// rounds apart on the links.
//
// Two arithmetic domains share one code path:
//  * Matrix<std::uint64_t>: fixed-point ring shares. Products carry
//    2*frac_bits fractional bits until truncate() brings them back.
//  * Matrix<double>: real shares, masked uniformly in [-mask, mask].
//
// Security settings:
//  * kHonestMajority3P: products use the replicated expansion
//      xy = sum_i (x_i y_i + x_i y_{i-1} + x_{i-1} y_i)
//    after resharing both inputs, followed by an output reshare.
//  * kDishonestMajority2P: products consume Beaver triples from a
//    TripleStore filled by the Dealer before the run.
//
// A planner runtime executes the same code without a transport: products
// return zeros and record the triple each would have consumed, reveals
// return ones. Because the protocols are data-oblivious, that dry run
// yields the exact triple schedule the dealer must provision.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "pplr/matrix.hpp"
#include "pplr/random.hpp"
#include "pplr/sharing.hpp"
#include "pplr/transport.hpp"

namespace pplr::mpc {

using RingMat = Matrix<std::uint64_t>;
using RealMat = Matrix<double>;

/// Mask half-width for real shares created inside protocols.
inline constexpr double kProtocolRealMask = 64.0;

enum class Setting { kHonestMajority3P, kDishonestMajority2P };

struct SecuritySetting {
  Setting variant = Setting::kHonestMajority3P;
  std::size_t n_parties = 3;
  std::size_t corruption_threshold = 1;

  static SecuritySetting honest_majority();
  static SecuritySetting dishonest_majority();
  void validate() const;
};

enum class ProductKind { kHadamard, kMatmul };

/// Shape of one triple: a is a_rows x a_cols, b is b_rows x b_cols.
struct TripleSpec {
  bool real = false;
  ProductKind kind = ProductKind::kHadamard;
  std::size_t a_rows = 0, a_cols = 0, b_rows = 0, b_cols = 0;
  friend bool operator==(const TripleSpec&, const TripleSpec&) = default;
};

/// One party's shares of a matrix triple (A, B, C = A op B).
template <class T>
struct MatrixTriple {
  ProductKind kind = ProductKind::kHadamard;
  Matrix<T> a, b, c;
  bool consumed = false;
};

/// Scalar Beaver triple share held by one party.
struct BeaverTriple {
  RingShare a, b, c;
  bool consumed = false;
};

/// Per-party queue of provisioned triples, consumed strictly in order.
class TripleStore {
 public:
  void push(MatrixTriple<std::uint64_t> t) { ring_.push_back(std::move(t)); }
  void push(MatrixTriple<double> t) { real_.push_back(std::move(t)); }

  template <class T>
  MatrixTriple<T> take(const TripleSpec& expected);

  std::size_t remaining() const noexcept { return ring_.size() + real_.size(); }

 private:
  std::deque<MatrixTriple<std::uint64_t>> ring_;
  std::deque<MatrixTriple<double>> real_;
};

/// Trusted initializer. Issues correlated randomness during setup and is
/// sealed before the protocol starts.
class Dealer {
 public:
  explicit Dealer(std::uint64_t seed, FixedPointConfig cfg = {},
                  double real_mask = kProtocolRealMask);

  std::vector<std::vector<BeaverTriple>> gen_triples(std::size_t count,
                                                     std::size_t n_parties);
  std::vector<TripleStore> provision(const std::vector<TripleSpec>& plan,
                                     std::size_t n_parties);

  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }
  std::uint64_t triples_issued() const noexcept { return issued_; }

 private:
  void require_open() const;

  Rng rng_;
  FixedPointConfig cfg_;
  double real_mask_;
  bool sealed_ = false;
  std::uint64_t issued_ = 0;
};

std::vector<std::vector<BeaverTriple>> dealer_gen_triples(Dealer& dealer,
                                                          std::size_t count,
                                                          std::size_t n_parties);

enum class RevealKind { kBeaverMask, kHessianTrace, kFinalModel, kGeneric };

std::string_view to_string(RevealKind kind);

struct RevealRecord {
  RevealKind kind;
  std::string label;
  std::uint32_t party;
  std::size_t elements;
};

/// Thread-safe log of every value opened to any party.
class RevealAudit {
 public:
  void record(RevealKind kind, std::string label, std::uint32_t party,
              std::size_t elements);
  std::vector<RevealRecord> entries() const;
  std::size_t count(RevealKind kind) const;

 private:
  mutable std::mutex mu_;
  std::vector<RevealRecord> entries_;
};

struct MulCounters {
  std::uint64_t invocations = 0;      // multiplication protocol runs
  std::uint64_t scalar_products = 0;  // elementwise multiplications inside them
  std::uint64_t truncations = 0;
  std::uint64_t reveals = 0;
};

class PartyRuntime {
 public:
  struct Options {
    RevealAudit* audit = nullptr;
    TripleStore* triples = nullptr;
    double real_mask = kProtocolRealMask;
  };

  PartyRuntime(PartyId self, SecuritySetting setting, net::Transport& transport,
               FixedPointConfig cfg, std::uint64_t seed, Options options);
  PartyRuntime(PartyId self, SecuritySetting setting, net::Transport& transport,
               FixedPointConfig cfg = {}, std::uint64_t seed = 0)
      : PartyRuntime(self, setting, transport, cfg, seed, Options{}) {}

  /// Transport-free dry run as party 0; see planned_triples().
  static PartyRuntime planner(SecuritySetting setting, FixedPointConfig cfg,
                              double real_mask = kProtocolRealMask);

  PartyId self() const noexcept { return self_; }
  std::size_t n_parties() const noexcept { return setting_.n_parties; }
  const SecuritySetting& setting() const noexcept { return setting_; }
  const FixedPointConfig& fixed_point() const noexcept { return cfg_; }
  double real_mask() const noexcept { return real_mask_; }
  bool planning() const noexcept { return transport_ == nullptr; }
  bool is_leader() const noexcept { return self_.index == 0; }
  const MulCounters& counters() const noexcept { return counters_; }
  const std::vector<TripleSpec>& planned_triples() const noexcept {
    return plan_;
  }
  Rng& rng() noexcept { return rng_; }

  // Local linear operations (no messages).
  template <class T>
  Matrix<T> add(const Matrix<T>& a, const Matrix<T>& b) const;
  template <class T>
  Matrix<T> sub(const Matrix<T>& a, const Matrix<T>& b) const;
  /// Adds a public matrix (party 0 absorbs it).
  template <class T>
  Matrix<T> add_public(const Matrix<T>& a, const Matrix<T>& pub) const;
  /// Adds a public real constant to every entry.
  RingMat add_constant(const RingMat& a, double c) const;
  RealMat add_constant(const RealMat& a, double c) const;
  /// Multiplies by a public real. Ring: encode c with enough precision,
  /// multiply locally, truncate.
  RingMat scale_public(const RingMat& a, double c);
  RealMat scale_public(const RealMat& a, double c);
  /// Local product with a public matrix: pub * a. Ring result has
  /// 2*frac_bits fractional bits when pub is fixed-point encoded.
  template <class T>
  Matrix<T> matmul_public_left(const Matrix<T>& pub, const Matrix<T>& a) const;

  /// Removes `bits` fractional bits. 2 parties: local shifts. 3 parties:
  /// party 2 folds its share into party 1 (1 message), parties 0 and 1
  /// shift, party 1 splits its result with party 2 (1 message).
  RingMat truncate(const RingMat& a, int bits);
  RingMat truncate(const RingMat& a) { return truncate(a, cfg_.frac_bits); }

  /// Secure product without any rescaling.
  template <class T>
  Matrix<T> mul_raw(const Matrix<T>& x, const Matrix<T>& y, ProductKind kind);
  /// Fixed-point products: mul_raw followed by truncate.
  RingMat hadamard(const RingMat& x, const RingMat& y);
  RingMat matmul(const RingMat& x, const RingMat& y);
  RealMat hadamard(const RealMat& x, const RealMat& y);
  RealMat matmul(const RealMat& x, const RealMat& y);

  /// Beaver product with an explicitly supplied triple.
  template <class T>
  Matrix<T> mul_beaver(const Matrix<T>& x, const Matrix<T>& y,
                       MatrixTriple<T>& triple);
  RingShare mul_beaver(RingShare x, RingShare y, BeaverTriple& triple);

  /// Fresh shares of the same secret (3 parties, 3 messages).
  template <class T>
  Matrix<T> reshare(const Matrix<T>& a);

  /// Opens a shared value to every party: n(n-1) messages.
  template <class T>
  Matrix<T> reveal(const Matrix<T>& a, RevealKind kind,
                   std::string_view label = {});

  /// Party `owner` splits a private matrix among all parties; everyone
  /// returns its own share. `secret` is only read at the owner.
  template <class T>
  Matrix<T> share_private(PartyId owner, const Matrix<T>& secret,
                          std::size_t rows, std::size_t cols,
                          double mask_bound = 0.0);

  /// Moves a real sharing onto party `target` plus small masks: every other
  /// party draws r in [-bound, bound], sends its share minus r to target
  /// and keeps r. n-1 messages; nothing is opened.
  RealMat concentrate(PartyId target, const RealMat& a, double bound);

  // Point-to-point helpers; no-ops while planning.
  template <class T>
  void send_matrix(PartyId to, const std::string& tag, const Matrix<T>& m);
  template <class T>
  Matrix<T> recv_matrix(PartyId from, const std::string& tag,
                        std::size_t rows, std::size_t cols);

  /// Unique tag for the next collective round.
  std::string next_tag(std::string_view op);

 private:
  PartyRuntime(PartyId self, SecuritySetting setting, net::Transport* transport,
               FixedPointConfig cfg, std::uint64_t seed, Options options);

  template <class T>
  Matrix<T> mul_3party(const Matrix<T>& x, const Matrix<T>& y,
                       ProductKind kind);
  template <class T>
  Matrix<T> random_like(std::size_t rows, std::size_t cols, double bound);

  PartyId self_;
  SecuritySetting setting_;
  net::Transport* transport_;
  FixedPointConfig cfg_;
  Rng rng_;
  RevealAudit* audit_;
  TripleStore* triples_;
  double real_mask_;
  MulCounters counters_;
  std::uint64_t op_counter_ = 0;
  std::vector<TripleSpec> plan_;
};

/// Generic product used by both domains.
template <class T>
Matrix<T> product(const Matrix<T>& a, const Matrix<T>& b, ProductKind kind) {
  return kind == ProductKind::kHadamard ? hadamard(a, b) : matmul(a, b);
}

}  // namespace pplr::mpc
