#pragma once

// Logistic function: plaintext reference, least-squares odd polynomials on
// [-8, 8], and two shared evaluations.
//
// g_d(z) = 0.5 + sum_k a_k (z/8)^(2k-1). The shared version needs
// (d + 1) / 2 multiplications: u^2 once, then u^3, u^5, ... by repeated
// multiplication with u^2.
//
// The exact shared version works on real shares:
//   1. concentrate z onto party 0 with small masks on the others so every
//      share stays in exp()'s range,
//   2. each party exponentiates -z_i locally and shares the result,
//   3. n - 1 products give e^{-z},
//   4. 1 / (1 + e^{-z}) by scalar Newton inversion with the public bound
//      c = 1 + e^{z_max}, valid while |z| <= z_max.
//
// Real-share products carry an absolute error near eps * mask^2 (~1e-12 at
// the default masks), and the inversion starts from 1/c, so z_max cannot be
// pushed much past 20 before the first iterate drowns in that noise.

#include <array>
#include <span>
#include <vector>

#include "pplr/matrix.hpp"
#include "pplr/mpc.hpp"

namespace pplr::sigmoid {

double sigmoid_plain(double z);

struct PolyCoefficients {
  int degree;
  std::vector<double> odd;  // coefficients of u, u^3, u^5, ...
  double constant = 0.5;
  double arg_scale = 0.125;

  static const PolyCoefficients& for_degree(int degree);
};

double sigmoid_poly_plain(double z, int degree);

/// Multiplications used by sigmoid_poly_shared for a degree.
int poly_multiplications(int degree);

enum class SigmoidKind { kExactExpShares, kPoly };

struct SigmoidMethod {
  SigmoidKind kind = SigmoidKind::kPoly;
  int degree = 3;

  static SigmoidMethod exact() { return {SigmoidKind::kExactExpShares, 0}; }
  static SigmoidMethod poly(int degree) { return {SigmoidKind::kPoly, degree}; }
  void validate() const;
  friend bool operator==(const SigmoidMethod&, const SigmoidMethod&) = default;
};

struct ExactSigmoidConfig {
  double exp_mask = 4.0;      // half-width of the masks left on parties 1..n-1
  double z_max = 16.0;        // |z| bound the inversion constant is sized for
  int min_iterations = 24;

  void validate() const;
  double inversion_constant() const;
  /// max(min_iterations, ceil(log2 c) + 6).
  int iterations() const;
};

template <class T>
Matrix<T> sigmoid_poly_shared(mpc::PartyRuntime& rt, const Matrix<T>& z,
                              int degree);

mpc::RealMat sigmoid_exact_shared(mpc::PartyRuntime& rt, const mpc::RealMat& z,
                                  const ExactSigmoidConfig& cfg = {});

/// Messages one sigmoid_exact_shared call puts on the wire, independent of
/// the vector length (every round carries the whole vector).
std::uint64_t exact_sigmoid_messages(const mpc::SecuritySetting& setting,
                                     const ExactSigmoidConfig& cfg);

}  // namespace pplr::sigmoid
