#pragma once

// Logistic regression by Newton-Raphson with the fixed Hessian
// H = -(1/4) X^T X, in plaintext and on secret shares.
//
// The shared protocols invert the scaled matrix B = X^T X / (4n) rather than
// H itself so its entries stay O(1) in fixed point; n is public. The update
//   beta <- beta + B^{-1} (X^T (y - pi) / n)
// equals beta - H^{-1} X^T (y - pi).
//
// Accurate protocols run in the real-share domain with the exact sigmoid;
// approximation protocols run on fixed-point ring shares with g_d.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pplr/data.hpp"
#include "pplr/linalg.hpp"
#include "pplr/mpc.hpp"
#include "pplr/sigmoid.hpp"
#include "pplr/transport.hpp"

namespace pplr {

struct ModelParams {
  std::vector<double> beta;
};

namespace logreg {

enum class Protocol { kOlr, kAccurateBmpc, kAccurateCmpc, kBmpc, kCmpc };

std::string_view to_string(Protocol p);
/// Accepts the CLI spellings: olr, bmpc, cmpc, accurate-bmpc, accurate-cmpc.
Protocol parse_protocol(std::string_view name);
bool is_mpc(Protocol p);
bool is_accurate(Protocol p);
mpc::SecuritySetting setting_for(Protocol p);

struct TrainConfig {
  int n_iter = 15;
  Protocol protocol = Protocol::kOlr;
  sigmoid::SigmoidMethod sigmoid = sigmoid::SigmoidMethod::exact();
  FixedPointConfig fixed_point;
  linalg::InversionConfig inversion;
  sigmoid::ExactSigmoidConfig exact;
  double real_mask = mpc::kProtocolRealMask;
  std::uint64_t seed = 1;
  std::size_t data_owners = 2;
  net::SchedulingMode scheduling = net::SchedulingMode::kCooperative;

  /// Config with the sigmoid the protocol is defined with: exact for OLR and
  /// the accurate protocols, g_degree for BMPC / CMPC.
  static TrainConfig for_protocol(Protocol p, int degree = 3);
  std::size_t parties() const;
  void validate() const;
};

// --- plaintext reference -------------------------------------------------

/// Full form: sum_i [ y_i z_i - log(1 + e^{z_i}) ], z = X beta.
double log_likelihood(const Matrix<double>& X, std::span<const double> y,
                      std::span<const double> beta);
/// X^T (y - pi).
std::vector<double> gradient_plain(const Matrix<double>& X, std::span<const double> y,
                                   std::span<const double> pi);

struct FixedHessian {
  Matrix<double> H;      // -(1/4) X^T X
  Matrix<double> H_inv;
};
FixedHessian fixed_hessian_plain(const Matrix<double>& X);

enum class HessianMode { kFull, kFixed };

/// n_iter Newton updates from beta = 0. `method` picks the sigmoid used for
/// pi (exact or g_d).
ModelParams train_plain_newton(const Dataset& d, int n_iter, HessianMode mode,
                               sigmoid::SigmoidMethod method = sigmoid::SigmoidMethod::exact());

/// Plaintext run of exactly the shared pipeline: scaled Hessian, Nardi
/// inversion with the configured iterations, configured sigmoid.
ModelParams train_plain_mirror(const Dataset& d, const TrainConfig& cfg);

// --- shared protocols ----------------------------------------------------

/// One computation party's program. X, y are its shares; n_records is public.
template <class T>
Matrix<T> newton_program(mpc::PartyRuntime& rt, const Matrix<T>& X, const Matrix<T>& y,
                         std::size_t n_records, const TrainConfig& cfg);

struct TrainResult {
  ModelParams params;
  mpc::MulCounters counters;          // party 0
  net::ChannelStats stats;            // whole session
  net::LinkCounters computation;      // links between computation parties only
  std::vector<mpc::RevealRecord> reveals;
  std::uint64_t triples_issued = 0;
  std::size_t parties = 0;
  double seconds = 0.0;
};

TrainResult train_accurate_mpc(const Dataset& d, const TrainConfig& cfg);
TrainResult train_approx_mpc(const Dataset& d, const TrainConfig& cfg);
/// Dispatches on cfg.protocol; OLR runs the plaintext fixed-Hessian trainer.
TrainResult train(const Dataset& d, const TrainConfig& cfg);

// --- evaluation ----------------------------------------------------------

std::vector<double> predict(const ModelParams& params, const Matrix<double>& X);
/// p >= threshold -> 1.
std::vector<int> classify(std::span<const double> probabilities, double threshold = 0.5);
/// Percentage of matching labels.
double accuracy(std::span<const int> predicted, std::span<const double> truth);
/// Mann-Whitney AUC with midranks for ties. Throws DataError if only one
/// class is present.
double auc(std::span<const double> scores, std::span<const double> truth);

}  // namespace logreg
}  // namespace pplr
