#include "pplr/sigmoid.hpp"

#include <cmath>
#include <string>

#include "pplr/linalg.hpp"

namespace pplr::sigmoid {

double sigmoid_plain(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

const PolyCoefficients& PolyCoefficients::for_degree(int degree) {
  static const PolyCoefficients g3{3, {1.20096, -0.81562}};
  static const PolyCoefficients g5{5, {1.53048, -2.3533056, 1.3511295}};
  static const PolyCoefficients g7{7, {1.73496, -4.19407, 5.43402, -2.50739}};
  switch (degree) {
    case 3: return g3;
    case 5: return g5;
    case 7: return g7;
    default:
      throw InvalidArgument("sigmoid polynomial degree must be 3, 5 or 7, got " +
                            std::to_string(degree));
  }
}

double sigmoid_poly_plain(double z, int degree) {
  const auto& p = PolyCoefficients::for_degree(degree);
  const double u = z * p.arg_scale;
  const double u2 = u * u;
  double acc = 0.0;
  for (auto it = p.odd.rbegin(); it != p.odd.rend(); ++it) acc = acc * u2 + *it;
  return p.constant + u * acc;
}

int poly_multiplications(int degree) {
  PolyCoefficients::for_degree(degree);
  return (degree + 1) / 2;
}

void SigmoidMethod::validate() const {
  if (kind == SigmoidKind::kPoly) PolyCoefficients::for_degree(degree);
}

void ExactSigmoidConfig::validate() const {
  if (!(exp_mask > 0.0) || exp_mask > 64.0) {
    throw InvalidArgument("exp_mask must lie in (0, 64]");
  }
  if (!(z_max > 0.0) || z_max > 600.0) throw InvalidArgument("z_max must lie in (0, 600]");
  if (min_iterations < 1) throw InvalidArgument("min_iterations must be positive");
}

double ExactSigmoidConfig::inversion_constant() const { return 1.0 + std::exp(z_max); }

int ExactSigmoidConfig::iterations() const {
  const int needed = static_cast<int>(std::ceil(std::log2(inversion_constant()))) + 6;
  return std::max(min_iterations, needed);
}

template <class T>
Matrix<T> sigmoid_poly_shared(mpc::PartyRuntime& rt, const Matrix<T>& z, int degree) {
  const auto& p = PolyCoefficients::for_degree(degree);
  const Matrix<T> u = rt.scale_public(z, p.arg_scale);
  const Matrix<T> u2 = rt.hadamard(u, u);
  Matrix<T> acc = rt.scale_public(u, p.odd[0]);
  Matrix<T> power = u;
  for (std::size_t k = 1; k < p.odd.size(); ++k) {
    power = rt.hadamard(power, u2);
    acc = rt.add(acc, rt.scale_public(power, p.odd[k]));
  }
  return rt.add_constant(acc, p.constant);
}

template Matrix<std::uint64_t> sigmoid_poly_shared(mpc::PartyRuntime&,
                                                   const Matrix<std::uint64_t>&, int);
template Matrix<double> sigmoid_poly_shared(mpc::PartyRuntime&, const Matrix<double>&,
                                            int);

mpc::RealMat sigmoid_exact_shared(mpc::PartyRuntime& rt, const mpc::RealMat& z,
                                  const ExactSigmoidConfig& cfg) {
  cfg.validate();
  // Beyond this exp() leaves the double range.
  constexpr double kExpLimit = 700.0;
  const mpc::RealMat local = rt.concentrate(PartyId{0}, z, cfg.exp_mask);
  mpc::RealMat v(local.rows(), local.cols());
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (!(std::fabs(local[i]) <= kExpLimit)) {
      throw ProtocolError("exponent share " + std::to_string(local[i]) +
                          " is outside exp()'s range; |z| exceeds the supported "
                          "bound or the mask bound is too large");
    }
    v[i] = std::exp(-local[i]);
  }
  mpc::RealMat e;
  for (std::uint32_t p = 0; p < rt.n_parties(); ++p) {
    mpc::RealMat factor = rt.share_private(PartyId{p}, v, v.rows(), v.cols());
    e = p == 0 ? std::move(factor) : rt.hadamard(e, factor);
  }
  const mpc::RealMat b = rt.add_constant(e, 1.0);
  return linalg::invert_scalar_shared(
      rt, b, linalg::InversionConfig::manual(cfg.inversion_constant(), cfg.iterations()));
}

std::uint64_t exact_sigmoid_messages(const mpc::SecuritySetting& setting,
                                     const ExactSigmoidConfig& cfg) {
  const std::uint64_t n = setting.n_parties;
  const std::uint64_t per_mul =
      setting.variant == mpc::Setting::kHonestMajority3P ? 15 : 2 * n * (n - 1);
  const std::uint64_t muls = (n - 1) + 2 * static_cast<std::uint64_t>(cfg.iterations()) - 1;
  return (n - 1) + n * (n - 1) + muls * per_mul;
}

}  // namespace pplr::sigmoid
