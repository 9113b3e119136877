#pragma once

// Matrix products and Newton-type (Nardi / Schulz) inversion on shares.
//
// Starting from X_0 = I/c and M_0 = X_0 B, each step doubles the number of
// correct bits once the spectrum of M is inside (0, 2):
//
//   literal form          X' = X (2I - M),   M' = M (2I - M)
//   self-correcting form  X' = (2I - M) X,   M' = X' B
//
// Both produce the same iterates in exact arithmetic. The literal form lets
// rounding noise in M drift away from X B, which at 16 fractional bits
// leaves residuals around 5e-3 on condition numbers near 100; recomputing M
// from B every step removes that drift and is the default.

#include <vector>

#include "pplr/matrix.hpp"
#include "pplr/mpc.hpp"

namespace pplr::linalg {

enum class ScalingMode { kTraceBased, kManual };
enum class NardiForm { kSelfCorrecting, kLiteral };

struct InversionConfig {
  int iterations = 24;
  ScalingMode scaling = ScalingMode::kTraceBased;
  double manual_c = 0.0;
  NardiForm form = NardiForm::kSelfCorrecting;

  static InversionConfig manual(double c, int iterations = 24);
  void validate() const;
};

template <class T>
Matrix<T> mat_mul_shared(mpc::PartyRuntime& rt, const Matrix<T>& a,
                         const Matrix<T>& b);

/// Elementwise reciprocal of a shared vector or matrix. Needs a public c
/// (Manual scaling) with every b/c in (0, 2).
template <class T>
Matrix<T> invert_scalar_shared(mpc::PartyRuntime& rt, const Matrix<T>& b,
                               const InversionConfig& cfg);

/// Inverse of a shared symmetric positive definite matrix. TraceBased
/// scaling opens trace(B), logged as a Hessian-trace reveal.
template <class T>
Matrix<T> invert_matrix_shared(mpc::PartyRuntime& rt, const Matrix<T>& b,
                               const InversionConfig& cfg);

/// Inverse of a negative definite matrix via -( (-B)^{-1} ).
template <class T>
Matrix<T> invert_negative_definite_shared(mpc::PartyRuntime& rt,
                                          const Matrix<T>& b,
                                          const InversionConfig& cfg);

/// Plaintext run of the same iteration. iterates[s] holds (X_s, M_s) for
/// s = 0..iterations, so tests can inspect convergence and the X B = M
/// identity.
struct NardiTrace {
  std::vector<Matrix<double>> x;
  std::vector<Matrix<double>> m;
};

NardiTrace nardi_plain(const Matrix<double>& b, double c, int iterations,
                       NardiForm form = NardiForm::kSelfCorrecting);

Matrix<double> invert_plain_nardi(const Matrix<double>& b,
                                  const InversionConfig& cfg);

/// Induced infinity norm of X B - I (largest absolute row sum).
double inverse_residual(const Matrix<double>& x, const Matrix<double>& b);

}  // namespace pplr::linalg
