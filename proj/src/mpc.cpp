#include "pplr/mpc.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace pplr::mpc {

namespace {

template <class T>
constexpr bool kIsRing = std::is_same_v<T, std::uint64_t>;

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

std::size_t products_in(ProductKind kind, std::size_t ar, std::size_t ac,
                        std::size_t bc) {
  return kind == ProductKind::kHadamard ? ar * ac : ar * ac * bc;
}

void check_product_shapes(std::size_t ar, std::size_t ac, std::size_t br,
                          std::size_t bc, ProductKind kind) {
  const bool ok =
      kind == ProductKind::kHadamard ? (ar == br && ac == bc) : (ac == br);
  if (!ok) {
    throw InvalidArgument(std::string(kind == ProductKind::kHadamard
                                          ? "elementwise product"
                                          : "matrix product") +
                          ": shapes " + shape_str(ar, ac) + " and " +
                          shape_str(br, bc) + " are incompatible");
  }
}

std::size_t out_rows(ProductKind, std::size_t ar) { return ar; }
std::size_t out_cols(ProductKind kind, std::size_t ac, std::size_t bc) {
  return kind == ProductKind::kHadamard ? ac : bc;
}

std::uint64_t shift_down(std::uint64_t v, int bits, const FixedPointConfig& cfg) {
  return static_cast<std::uint64_t>(cfg.to_signed(v) >> bits) & cfg.mask();
}

}  // namespace

// ---------------------------------------------------------------------------
// Settings, triples, dealer, audit

SecuritySetting SecuritySetting::honest_majority() {
  return {Setting::kHonestMajority3P, 3, 1};
}

SecuritySetting SecuritySetting::dishonest_majority() {
  return {Setting::kDishonestMajority2P, 2, 1};
}

void SecuritySetting::validate() const {
  if (variant == Setting::kHonestMajority3P) {
    if (n_parties != 3) {
      throw InvalidArgument("honest-majority setting runs exactly 3 parties, got " +
                            std::to_string(n_parties));
    }
    if (2 * corruption_threshold >= n_parties) {
      throw InvalidArgument("honest majority requires t < n/2");
    }
  } else if (n_parties != 2) {
    throw InvalidArgument("dishonest-majority setting runs exactly 2 parties, got " +
                          std::to_string(n_parties));
  }
}

template <class T>
MatrixTriple<T> TripleStore::take(const TripleSpec& expected) {
  auto& queue = [this]() -> auto& {
    if constexpr (kIsRing<T>) return ring_;
    else return real_;
  }();
  if (queue.empty()) {
    throw ProtocolError("triple store exhausted: the dealer provisioned fewer "
                        "triples than the protocol consumed");
  }
  MatrixTriple<T> t = std::move(queue.front());
  queue.pop_front();
  if (t.kind != expected.kind || t.a.rows() != expected.a_rows ||
      t.a.cols() != expected.a_cols || t.b.rows() != expected.b_rows ||
      t.b.cols() != expected.b_cols) {
    throw ProtocolError("next triple does not match the requested product " +
                        shape_str(expected.a_rows, expected.a_cols) + " op " +
                        shape_str(expected.b_rows, expected.b_cols));
  }
  return t;
}

template MatrixTriple<std::uint64_t> TripleStore::take(const TripleSpec&);
template MatrixTriple<double> TripleStore::take(const TripleSpec&);

Dealer::Dealer(std::uint64_t seed, FixedPointConfig cfg, double real_mask)
    : rng_(derive_seed(seed, 0xDEA1)), cfg_(cfg), real_mask_(real_mask) {
  cfg_.validate();
  if (!(real_mask > 0.0)) throw InvalidArgument("dealer real mask must be positive");
}

void Dealer::require_open() const {
  if (sealed_) {
    throw ProtocolError("dealer is sealed: triples can only be issued before "
                        "the protocol starts");
  }
}

std::vector<std::vector<BeaverTriple>> Dealer::gen_triples(std::size_t count,
                                                           std::size_t n_parties) {
  require_open();
  if (n_parties < 2) throw InvalidArgument("triples need at least 2 parties");
  std::vector<std::vector<BeaverTriple>> out(n_parties);
  for (auto& v : out) v.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::uint64_t a = rng_() & cfg_.mask();
    const std::uint64_t b = rng_() & cfg_.mask();
    const std::uint64_t c = (a * b) & cfg_.mask();
    const auto sa = share_ring(a, n_parties, rng_, cfg_);
    const auto sb = share_ring(b, n_parties, rng_, cfg_);
    const auto sc = share_ring(c, n_parties, rng_, cfg_);
    for (std::size_t p = 0; p < n_parties; ++p) {
      out[p].push_back(BeaverTriple{sa[p], sb[p], sc[p], false});
    }
    ++issued_;
  }
  return out;
}

std::vector<TripleStore> Dealer::provision(const std::vector<TripleSpec>& plan,
                                           std::size_t n_parties) {
  require_open();
  if (n_parties < 2) throw InvalidArgument("triples need at least 2 parties");
  std::vector<TripleStore> stores(n_parties);
  for (const auto& spec : plan) {
    check_product_shapes(spec.a_rows, spec.a_cols, spec.b_rows, spec.b_cols,
                         spec.kind);
    auto emit = [&]<class T>(Matrix<T> a, Matrix<T> b) {
      Matrix<T> c = product(a, b, spec.kind);
      std::vector<ShareMatrix<T>> sa, sb, sc;
      if constexpr (kIsRing<T>) {
        for (auto& v : c.values()) v &= cfg_.mask();
        sa = share_matrix(a, n_parties, rng_, cfg_);
        sb = share_matrix(b, n_parties, rng_, cfg_);
        sc = share_matrix(c, n_parties, rng_, cfg_);
      } else {
        sa = share_matrix(a, n_parties, rng_, real_mask_);
        sb = share_matrix(b, n_parties, rng_, real_mask_);
        sc = share_matrix(c, n_parties, rng_, real_mask_);
      }
      for (std::size_t p = 0; p < n_parties; ++p) {
        stores[p].push(MatrixTriple<T>{spec.kind, std::move(sa[p].values),
                                       std::move(sb[p].values),
                                       std::move(sc[p].values), false});
      }
    };
    if (spec.real) {
      RealMat a(spec.a_rows, spec.a_cols), b(spec.b_rows, spec.b_cols);
      for (auto& v : a.values()) v = uniform_real(rng_, -real_mask_, real_mask_);
      for (auto& v : b.values()) v = uniform_real(rng_, -real_mask_, real_mask_);
      emit(std::move(a), std::move(b));
    } else {
      RingMat a(spec.a_rows, spec.a_cols), b(spec.b_rows, spec.b_cols);
      for (auto& v : a.values()) v = rng_() & cfg_.mask();
      for (auto& v : b.values()) v = rng_() & cfg_.mask();
      emit(std::move(a), std::move(b));
    }
    ++issued_;
  }
  return stores;
}

std::vector<std::vector<BeaverTriple>> dealer_gen_triples(Dealer& dealer,
                                                          std::size_t count,
                                                          std::size_t n_parties) {
  return dealer.gen_triples(count, n_parties);
}

std::string_view to_string(RevealKind kind) {
  switch (kind) {
    case RevealKind::kBeaverMask: return "beaver_mask";
    case RevealKind::kHessianTrace: return "hessian_trace";
    case RevealKind::kFinalModel: return "final_model";
    case RevealKind::kGeneric: return "generic";
  }
  return "unknown";
}

void RevealAudit::record(RevealKind kind, std::string label, std::uint32_t party,
                         std::size_t elements) {
  std::lock_guard lk(mu_);
  entries_.push_back({kind, std::move(label), party, elements});
}

std::vector<RevealRecord> RevealAudit::entries() const {
  std::lock_guard lk(mu_);
  return entries_;
}

std::size_t RevealAudit::count(RevealKind kind) const {
  std::lock_guard lk(mu_);
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.kind == kind;
  return n;
}

// ---------------------------------------------------------------------------
// PartyRuntime

PartyRuntime::PartyRuntime(PartyId self, SecuritySetting setting,
                           net::Transport& transport, FixedPointConfig cfg,
                           std::uint64_t seed, Options options)
    : PartyRuntime(self, setting, &transport, cfg, seed, options) {}

PartyRuntime::PartyRuntime(PartyId self, SecuritySetting setting,
                           net::Transport* transport, FixedPointConfig cfg,
                           std::uint64_t seed, Options options)
    : self_(self),
      setting_(setting),
      transport_(transport),
      cfg_(cfg),
      rng_(derive_seed(seed, 0x9A27, self.index)),
      audit_(options.audit),
      triples_(options.triples),
      real_mask_(options.real_mask) {
  setting_.validate();
  cfg_.validate();
  if (self.index >= setting_.n_parties) {
    throw InvalidArgument("party index " + std::to_string(self.index) +
                          " outside the computation parties");
  }
  if (transport_ != nullptr && transport_->endpoints() < setting_.n_parties) {
    throw InvalidArgument("transport has fewer endpoints than parties");
  }
  if (!(real_mask_ > 0.0)) throw InvalidArgument("real mask must be positive");
}

PartyRuntime PartyRuntime::planner(SecuritySetting setting, FixedPointConfig cfg,
                                   double real_mask) {
  return PartyRuntime(PartyId{0}, setting, nullptr, cfg, 0,
                      Options{nullptr, nullptr, real_mask});
}

std::string PartyRuntime::next_tag(std::string_view op) {
  return std::string(op) + "#" + std::to_string(op_counter_++);
}

template <class T>
void PartyRuntime::send_matrix(PartyId to, const std::string& tag,
                               const Matrix<T>& m) {
  if (planning()) return;
  if (m.empty()) throw InvalidArgument("cannot send an empty matrix");
  transport_->send(self_, to, tag, net::to_payload<T>(m.values()));
}

template <class T>
Matrix<T> PartyRuntime::recv_matrix(PartyId from, const std::string& tag,
                                    std::size_t rows, std::size_t cols) {
  if (planning()) return Matrix<T>(rows, cols);
  auto values = net::from_payload<T>(transport_->recv(self_, from, tag));
  if (values.size() != rows * cols) {
    throw ProtocolError("message '" + tag + "' from party " +
                        std::to_string(from.index) + " carries " +
                        std::to_string(values.size()) + " elements, expected " +
                        shape_str(rows, cols));
  }
  return Matrix<T>(rows, cols, std::move(values));
}

template <class T>
Matrix<T> PartyRuntime::random_like(std::size_t rows, std::size_t cols,
                                    double bound) {
  Matrix<T> r(rows, cols);
  for (auto& v : r.values()) {
    if constexpr (kIsRing<T>) v = rng_() & cfg_.mask();
    else v = uniform_real(rng_, -bound, bound);
  }
  return r;
}

template <class T>
Matrix<T> PartyRuntime::add(const Matrix<T>& a, const Matrix<T>& b) const {
  Matrix<T> out = a + b;
  if constexpr (kIsRing<T>) for (auto& v : out.values()) v &= cfg_.mask();
  return out;
}

template <class T>
Matrix<T> PartyRuntime::sub(const Matrix<T>& a, const Matrix<T>& b) const {
  Matrix<T> out = a - b;
  if constexpr (kIsRing<T>) for (auto& v : out.values()) v &= cfg_.mask();
  return out;
}

template <class T>
Matrix<T> PartyRuntime::add_public(const Matrix<T>& a, const Matrix<T>& pub) const {
  if (!a.same_shape(pub)) throw InvalidArgument("add_public: shape mismatch");
  if (!is_leader()) return a;
  return add(a, pub);
}

RingMat PartyRuntime::add_constant(const RingMat& a, double c) const {
  return add_public(a, RingMat(a.rows(), a.cols(), encode_fixed(c, cfg_)));
}

RealMat PartyRuntime::add_constant(const RealMat& a, double c) const {
  return add_public(a, RealMat(a.rows(), a.cols(), c));
}

RingMat PartyRuntime::scale_public(const RingMat& a, double c) {
  if (!std::isfinite(c)) throw InvalidArgument("scale_public: constant is not finite");
  if (c == 0.0) return RingMat(a.rows(), a.cols());
  const int s = std::max(0, 15 - std::ilogb(c));
  if (s > cfg_.ring_bits - cfg_.frac_bits - 2) {
    throw InvalidArgument("scale_public: constant " + std::to_string(c) +
                          " is too small for the ring");
  }
  const auto k = static_cast<std::int64_t>(std::llround(std::ldexp(c, s)));
  RingMat out = a * static_cast<std::uint64_t>(k);
  for (auto& v : out.values()) v &= cfg_.mask();
  return s == 0 ? out : truncate(out, s);
}

RealMat PartyRuntime::scale_public(const RealMat& a, double c) {
  if (!std::isfinite(c)) throw InvalidArgument("scale_public: constant is not finite");
  return a * c;
}

template <class T>
Matrix<T> PartyRuntime::matmul_public_left(const Matrix<T>& pub,
                                           const Matrix<T>& a) const {
  Matrix<T> out = pplr::matmul(pub, a);
  if constexpr (kIsRing<T>) for (auto& v : out.values()) v &= cfg_.mask();
  return out;
}

RingMat PartyRuntime::truncate(const RingMat& a, int bits) {
  if (bits <= 0 || bits >= cfg_.ring_bits - 1) {
    throw InvalidArgument("truncate: bit count out of range");
  }
  ++counters_.truncations;
  // Party 0 shifts its share, party 1 shifts the negation of its share and
  // negates back; the two errors cancel except with probability ~|x|/2^l.
  auto shift0 = [&](const RingMat& m) {
    return map(m, [&](std::uint64_t v) { return shift_down(v, bits, cfg_); });
  };
  auto shift1 = [&](const RingMat& m) {
    return map(m, [&](std::uint64_t v) {
      return (0 - shift_down((0 - v) & cfg_.mask(), bits, cfg_)) & cfg_.mask();
    });
  };
  if (setting_.n_parties == 2) return self_.index == 0 ? shift0(a) : shift1(a);

  const std::string tag = next_tag("trunc");
  switch (self_.index) {
    case 0:
      return shift0(a);
    case 1: {
      const RingMat folded = add(a, recv_matrix<std::uint64_t>(
                                        PartyId{2}, tag + ":fold", a.rows(), a.cols()));
      const RingMat r = random_like<std::uint64_t>(a.rows(), a.cols(), 0.0);
      send_matrix(PartyId{2}, tag + ":split", r);
      return sub(shift1(folded), r);
    }
    default:
      send_matrix(PartyId{1}, tag + ":fold", a);
      return recv_matrix<std::uint64_t>(PartyId{1}, tag + ":split", a.rows(),
                                        a.cols());
  }
}

template <class T>
Matrix<T> PartyRuntime::reshare(const Matrix<T>& a) {
  if (setting_.n_parties != 3) {
    throw InvalidArgument("reshare is defined for the 3-party setting");
  }
  const std::string tag = next_tag("reshare");
  if constexpr (kIsRing<T>) {
    // Party i sends r_i to its successor: a_i - r_i + r_{i-1}.
    const PartyId succ{(self_.index + 1) % 3};
    const PartyId pred{(self_.index + 2) % 3};
    const Matrix<T> r = random_like<T>(a.rows(), a.cols(), 0.0);
    send_matrix(succ, tag, r);
    const Matrix<T> r_pred = recv_matrix<T>(pred, tag, a.rows(), a.cols());
    return add(sub(a, r), r_pred);
  } else {
    // Real shares cannot wrap, so magnitudes must be reset instead: a chain
    // 0 -> 1 -> 2 -> 0 leaves party 1 with a fresh mask, party 0 with a sum
    // of two masks and folds everything else into party 2.
    const std::size_t r = a.rows(), c = a.cols();
    switch (self_.index) {
      case 0: {
        const Matrix<T> mask = random_like<T>(r, c, real_mask_);
        send_matrix(PartyId{1}, tag + ":0", sub(a, mask));
        const Matrix<T> ack = recv_matrix<T>(PartyId{2}, tag + ":2", r, c);
        return add(mask, ack);
      }
      case 1: {
        const Matrix<T> carry = recv_matrix<T>(PartyId{0}, tag + ":0", r, c);
        const Matrix<T> mask = random_like<T>(r, c, real_mask_);
        send_matrix(PartyId{2}, tag + ":1", sub(add(a, carry), mask));
        return mask;
      }
      default: {
        const Matrix<T> carry = recv_matrix<T>(PartyId{1}, tag + ":1", r, c);
        const Matrix<T> mask = random_like<T>(r, c, real_mask_);
        send_matrix(PartyId{0}, tag + ":2", mask);
        return sub(add(a, carry), mask);
      }
    }
  }
}

template <class T>
Matrix<T> PartyRuntime::mul_3party(const Matrix<T>& x, const Matrix<T>& y,
                                   ProductKind kind) {
  const std::string tag = next_tag("mul3");
  const PartyId succ{(self_.index + 1) % 3};
  const PartyId pred{(self_.index + 2) % 3};
  const Matrix<T> xs = reshare(x);
  const Matrix<T> ys = reshare(y);
  send_matrix(succ, tag + ":x", xs);
  send_matrix(succ, tag + ":y", ys);
  const Matrix<T> xp = recv_matrix<T>(pred, tag + ":x", x.rows(), x.cols());
  const Matrix<T> yp = recv_matrix<T>(pred, tag + ":y", y.rows(), y.cols());
  // x_i y_i + x_i y_{i-1} + x_{i-1} y_i; over i = 0..2 this covers all
  // nine cross terms exactly once.
  Matrix<T> z = product(xs, add(ys, yp), kind);
  z = add(z, product(xp, ys, kind));
  return reshare(z);
}

template <class T>
Matrix<T> PartyRuntime::mul_beaver(const Matrix<T>& x, const Matrix<T>& y,
                                   MatrixTriple<T>& triple) {
  if (triple.consumed) {
    throw ProtocolError("Beaver triple already consumed; triples are single-use");
  }
  if (!triple.a.same_shape(x) || !triple.b.same_shape(y)) {
    throw ProtocolError("Beaver triple shape does not match the operands");
  }
  triple.consumed = true;
  const Matrix<T> d = reveal(sub(x, triple.a), RevealKind::kBeaverMask, "d");
  const Matrix<T> e = reveal(sub(y, triple.b), RevealKind::kBeaverMask, "e");
  // The leader also carries d e, folded in as d (b + e).
  const Matrix<T> rhs = is_leader() ? add(triple.b, e) : triple.b;
  Matrix<T> w = add(triple.c, product(d, rhs, triple.kind));
  return add(w, product(triple.a, e, triple.kind));
}

RingShare PartyRuntime::mul_beaver(RingShare x, RingShare y, BeaverTriple& triple) {
  if (triple.consumed) {
    throw ProtocolError("Beaver triple already consumed; triples are single-use");
  }
  MatrixTriple<std::uint64_t> t{ProductKind::kHadamard,
                                RingMat(1, 1, triple.a.value),
                                RingMat(1, 1, triple.b.value),
                                RingMat(1, 1, triple.c.value), false};
  ++counters_.invocations;
  ++counters_.scalar_products;
  const RingMat w = mul_beaver(RingMat(1, 1, x.value), RingMat(1, 1, y.value), t);
  triple.consumed = true;
  return RingShare{w[0], self_};
}

template <class T>
Matrix<T> PartyRuntime::mul_raw(const Matrix<T>& x, const Matrix<T>& y,
                                ProductKind kind) {
  check_product_shapes(x.rows(), x.cols(), y.rows(), y.cols(), kind);
  ++counters_.invocations;
  counters_.scalar_products += products_in(kind, x.rows(), x.cols(), y.cols());
  if (setting_.variant == Setting::kHonestMajority3P) {
    if (planning()) return Matrix<T>(out_rows(kind, x.rows()), out_cols(kind, x.cols(), y.cols()));
    return mul_3party(x, y, kind);
  }
  const TripleSpec spec{!kIsRing<T>, kind, x.rows(), x.cols(), y.rows(), y.cols()};
  if (planning()) {
    plan_.push_back(spec);
    return Matrix<T>(out_rows(kind, x.rows()), out_cols(kind, x.cols(), y.cols()));
  }
  if (triples_ == nullptr) {
    throw ProtocolError("Beaver multiplication needs a provisioned triple store");
  }
  MatrixTriple<T> triple = triples_->take<T>(spec);
  return mul_beaver(x, y, triple);
}

RingMat PartyRuntime::hadamard(const RingMat& x, const RingMat& y) {
  return truncate(mul_raw(x, y, ProductKind::kHadamard));
}

RingMat PartyRuntime::matmul(const RingMat& x, const RingMat& y) {
  return truncate(mul_raw(x, y, ProductKind::kMatmul));
}

RealMat PartyRuntime::hadamard(const RealMat& x, const RealMat& y) {
  return mul_raw(x, y, ProductKind::kHadamard);
}

RealMat PartyRuntime::matmul(const RealMat& x, const RealMat& y) {
  return mul_raw(x, y, ProductKind::kMatmul);
}

template <class T>
Matrix<T> PartyRuntime::reveal(const Matrix<T>& a, RevealKind kind,
                               std::string_view label) {
  ++counters_.reveals;
  if (planning()) {
    if constexpr (kIsRing<T>) return RingMat(a.rows(), a.cols(), encode_fixed(1.0, cfg_));
    else return RealMat(a.rows(), a.cols(), 1.0);
  }
  const std::string tag = next_tag("reveal");
  for (std::uint32_t p = 0; p < setting_.n_parties; ++p) {
    if (p != self_.index) send_matrix(PartyId{p}, tag, a);
  }
  Matrix<T> sum = a;
  for (std::uint32_t p = 0; p < setting_.n_parties; ++p) {
    if (p != self_.index) {
      sum = add(sum, recv_matrix<T>(PartyId{p}, tag, a.rows(), a.cols()));
    }
  }
  if (audit_ != nullptr) {
    audit_->record(kind, std::string(label), self_.index, a.size());
  }
  return sum;
}

template <class T>
Matrix<T> PartyRuntime::share_private(PartyId owner, const Matrix<T>& secret,
                                      std::size_t rows, std::size_t cols,
                                      double mask_bound) {
  if (owner.index >= setting_.n_parties) {
    throw InvalidArgument("share_private: owner is not a computation party");
  }
  const std::string tag = next_tag("input");
  if (self_ != owner) return recv_matrix<T>(owner, tag, rows, cols);
  if (secret.rows() != rows || secret.cols() != cols) {
    throw InvalidArgument("share_private: secret shape differs from the agreed " +
                          shape_str(rows, cols));
  }
  std::vector<ShareMatrix<T>> shares;
  if constexpr (kIsRing<T>) {
    shares = share_matrix(secret, setting_.n_parties, rng_, cfg_);
  } else {
    shares = share_matrix(secret, setting_.n_parties, rng_,
                          mask_bound > 0.0 ? mask_bound : real_mask_);
  }
  for (std::uint32_t p = 0; p < setting_.n_parties; ++p) {
    if (p != self_.index) send_matrix(PartyId{p}, tag, shares[p].values);
  }
  return std::move(shares[self_.index].values);
}

RealMat PartyRuntime::concentrate(PartyId target, const RealMat& a, double bound) {
  if (!(bound > 0.0)) throw InvalidArgument("concentrate: bound must be positive");
  const std::string tag = next_tag("concentrate");
  if (self_ != target) {
    const RealMat r = random_like<double>(a.rows(), a.cols(), bound);
    send_matrix(target, tag, sub(a, r));
    return r;
  }
  RealMat sum = a;
  for (std::uint32_t p = 0; p < setting_.n_parties; ++p) {
    if (p != target.index) {
      sum = add(sum, recv_matrix<double>(PartyId{p}, tag, a.rows(), a.cols()));
    }
  }
  return sum;
}

#define PPLR_INSTANTIATE(T)                                                        \
  template Matrix<T> PartyRuntime::add(const Matrix<T>&, const Matrix<T>&) const;  \
  template Matrix<T> PartyRuntime::sub(const Matrix<T>&, const Matrix<T>&) const;  \
  template Matrix<T> PartyRuntime::add_public(const Matrix<T>&,                    \
                                              const Matrix<T>&) const;             \
  template Matrix<T> PartyRuntime::matmul_public_left(const Matrix<T>&,            \
                                                      const Matrix<T>&) const;     \
  template Matrix<T> PartyRuntime::mul_raw(const Matrix<T>&, const Matrix<T>&,     \
                                           ProductKind);                           \
  template Matrix<T> PartyRuntime::mul_beaver(const Matrix<T>&, const Matrix<T>&,  \
                                              MatrixTriple<T>&);                   \
  template Matrix<T> PartyRuntime::reshare(const Matrix<T>&);                      \
  template Matrix<T> PartyRuntime::reveal(const Matrix<T>&, RevealKind,            \
                                          std::string_view);                       \
  template Matrix<T> PartyRuntime::share_private(PartyId, const Matrix<T>&,        \
                                                 std::size_t, std::size_t, double); \
  template void PartyRuntime::send_matrix(PartyId, const std::string&,             \
                                          const Matrix<T>&);                       \
  template Matrix<T> PartyRuntime::recv_matrix(PartyId, const std::string&,        \
                                               std::size_t, std::size_t);

PPLR_INSTANTIATE(std::uint64_t)
PPLR_INSTANTIATE(double)

#undef PPLR_INSTANTIATE

}  // namespace pplr::mpc
