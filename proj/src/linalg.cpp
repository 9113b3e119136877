#include "pplr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace pplr::linalg {

using mpc::PartyRuntime;
using mpc::ProductKind;
using mpc::RevealKind;

InversionConfig InversionConfig::manual(double c, int iterations) {
  InversionConfig cfg;
  cfg.iterations = iterations;
  cfg.scaling = ScalingMode::kManual;
  cfg.manual_c = c;
  return cfg;
}

void InversionConfig::validate() const {
  if (iterations < 1) throw InvalidArgument("inversion needs at least one iteration");
  if (scaling == ScalingMode::kManual && !(manual_c > 0.0 && std::isfinite(manual_c))) {
    throw InvalidArgument("manual inversion constant c must be positive and finite");
  }
}

namespace {

/// Shares of a public matrix: the leader holds it, everyone else holds 0.
template <class T>
Matrix<T> public_share(const PartyRuntime& rt, const Matrix<double>& pub) {
  if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!rt.is_leader()) return Matrix<T>(pub.rows(), pub.cols());
    return encode_fixed(pub, rt.fixed_point());
  } else {
    if (!rt.is_leader()) return Matrix<T>(pub.rows(), pub.cols());
    return pub;
  }
}

template <class T>
Matrix<T> secure_product(PartyRuntime& rt, const Matrix<T>& a, const Matrix<T>& b,
                         ProductKind kind) {
  return kind == ProductKind::kHadamard ? rt.hadamard(a, b) : rt.matmul(a, b);
}

template <class T>
Matrix<T> nardi_shared(PartyRuntime& rt, const Matrix<T>& b, double c,
                       const InversionConfig& cfg, ProductKind kind,
                       const Matrix<double>& x0_public) {
  // 2I (matrix) or 2 (elementwise) as a public operand.
  const Matrix<double> two_public =
      kind == ProductKind::kMatmul ? Matrix<double>::identity(b.rows(), 2.0)
                                   : Matrix<double>(b.rows(), b.cols(), 2.0);
  const Matrix<T> two = public_share<T>(rt, two_public);
  const Matrix<T> zero(b.rows(), b.cols());
  Matrix<T> x = public_share<T>(rt, x0_public);
  Matrix<T> m = rt.scale_public(b, 1.0 / c);
  // Every update is a single product, so the iterate is always a fresh
  // protocol output; with real shares this keeps share magnitudes bounded.
  for (int s = 0; s < cfg.iterations; ++s) {
    const bool last = s + 1 == cfg.iterations;
    const Matrix<T> two_minus_m = rt.add(two, rt.sub(zero, m));
    if (cfg.form == NardiForm::kSelfCorrecting) {
      x = secure_product(rt, two_minus_m, x, kind);
      if (!last) m = secure_product(rt, x, b, kind);
    } else {
      Matrix<T> next = secure_product(rt, x, two_minus_m, kind);
      if (!last) m = secure_product(rt, m, two_minus_m, kind);
      x = std::move(next);
    }
  }
  return x;
}

}  // namespace

template <class T>
Matrix<T> mat_mul_shared(PartyRuntime& rt, const Matrix<T>& a, const Matrix<T>& b) {
  return rt.matmul(a, b);
}

template <class T>
Matrix<T> invert_scalar_shared(PartyRuntime& rt, const Matrix<T>& b,
                               const InversionConfig& cfg) {
  cfg.validate();
  if (cfg.scaling != ScalingMode::kManual) {
    throw InvalidArgument("scalar inversion needs a public constant c (manual "
                          "scaling); the trace of a scalar is the secret itself");
  }
  return nardi_shared(rt, b, cfg.manual_c, cfg, ProductKind::kHadamard,
                      Matrix<double>(b.rows(), b.cols(), 1.0 / cfg.manual_c));
}

template <class T>
Matrix<T> invert_matrix_shared(PartyRuntime& rt, const Matrix<T>& b,
                               const InversionConfig& cfg) {
  cfg.validate();
  if (b.rows() != b.cols() || b.empty()) {
    throw InvalidArgument("matrix inversion needs a non-empty square matrix, got " +
                          std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  double c = cfg.manual_c;
  if (cfg.scaling == ScalingMode::kTraceBased) {
    const Matrix<T> opened =
        rt.reveal(Matrix<T>(1, 1, trace(b)), RevealKind::kHessianTrace, "trace");
    if constexpr (std::is_same_v<T, std::uint64_t>) {
      c = decode_fixed(opened[0], rt.fixed_point());
    } else {
      c = opened[0];
    }
    if (!(c > 0.0)) {
      throw ProtocolError("trace of the matrix to invert is " + std::to_string(c) +
                          "; the matrix is not positive definite");
    }
  }
  return nardi_shared(rt, b, c, cfg, ProductKind::kMatmul,
                      Matrix<double>::identity(b.rows(), 1.0 / c));
}

template <class T>
Matrix<T> invert_negative_definite_shared(PartyRuntime& rt, const Matrix<T>& b,
                                          const InversionConfig& cfg) {
  const Matrix<T> zero(b.rows(), b.cols());
  const Matrix<T> inv = invert_matrix_shared(rt, rt.sub(zero, b), cfg);
  return rt.sub(zero, inv);
}

template Matrix<std::uint64_t> mat_mul_shared(PartyRuntime&, const Matrix<std::uint64_t>&,
                                              const Matrix<std::uint64_t>&);
template Matrix<double> mat_mul_shared(PartyRuntime&, const Matrix<double>&,
                                       const Matrix<double>&);
template Matrix<std::uint64_t> invert_scalar_shared(PartyRuntime&,
                                                    const Matrix<std::uint64_t>&,
                                                    const InversionConfig&);
template Matrix<double> invert_scalar_shared(PartyRuntime&, const Matrix<double>&,
                                             const InversionConfig&);
template Matrix<std::uint64_t> invert_matrix_shared(PartyRuntime&,
                                                    const Matrix<std::uint64_t>&,
                                                    const InversionConfig&);
template Matrix<double> invert_matrix_shared(PartyRuntime&, const Matrix<double>&,
                                             const InversionConfig&);
template Matrix<std::uint64_t> invert_negative_definite_shared(
    PartyRuntime&, const Matrix<std::uint64_t>&, const InversionConfig&);
template Matrix<double> invert_negative_definite_shared(PartyRuntime&,
                                                        const Matrix<double>&,
                                                        const InversionConfig&);

NardiTrace nardi_plain(const Matrix<double>& b, double c, int iterations,
                       NardiForm form) {
  if (b.rows() != b.cols()) throw InvalidArgument("nardi_plain: matrix not square");
  if (!(c > 0.0)) throw InvalidArgument("nardi_plain: c must be positive");
  if (iterations < 0) throw InvalidArgument("nardi_plain: negative iteration count");
  NardiTrace t;
  Matrix<double> x = Matrix<double>::identity(b.rows(), 1.0 / c);
  Matrix<double> m = b * (1.0 / c);
  t.x.push_back(x);
  t.m.push_back(m);
  for (int s = 0; s < iterations; ++s) {
    if (form == NardiForm::kSelfCorrecting) {
      x = x * 2.0 - matmul(m, x);
      m = matmul(x, b);
    } else {
      Matrix<double> next = x * 2.0 - matmul(x, m);
      m = m * 2.0 - matmul(m, m);
      x = std::move(next);
    }
    t.x.push_back(x);
    t.m.push_back(m);
  }
  return t;
}

Matrix<double> invert_plain_nardi(const Matrix<double>& b, const InversionConfig& cfg) {
  cfg.validate();
  const double c = cfg.scaling == ScalingMode::kTraceBased ? trace(b) : cfg.manual_c;
  if (!(c > 0.0)) throw InvalidArgument("invert_plain_nardi: trace is not positive");
  return nardi_plain(b, c, cfg.iterations, cfg.form).x.back();
}

double inverse_residual(const Matrix<double>& x, const Matrix<double>& b) {
  Matrix<double> r = matmul(x, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    r(i, i) -= 1.0;
    double row = 0.0;
    for (std::size_t j = 0; j < r.cols(); ++j) row += std::fabs(r(i, j));
    worst = std::max(worst, row);
  }
  return worst;
}

}  // namespace pplr::linalg
