#include "pplr/logreg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <type_traits>

namespace pplr::logreg {

namespace {

using EigenMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EigenMat> view(const Matrix<double>& m) {
  return {m.values().data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

Matrix<double> from_eigen(const EigenMat& e) {
  Matrix<double> out(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  std::copy(e.data(), e.data() + e.size(), out.values().begin());
  return out;
}

Matrix<double> inverse_spd(const Matrix<double>& a, const char* what) {
  Eigen::LDLT<EigenMat> ldlt(view(a));
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().cwiseAbs().minCoeff() <= 1e-12 * ldlt.vectorD().cwiseAbs().maxCoeff()) {
    throw DataError(std::string(what) + " is singular; the design matrix is rank deficient");
  }
  const EigenMat inv = ldlt.solve(EigenMat::Identity(a.rows(), a.cols()));
  return from_eigen(inv);
}

std::vector<double> mat_vec(const Matrix<double>& X, std::span<const double> v) {
  if (X.cols() != v.size()) throw InvalidArgument("dimension mismatch in X * beta");
  std::vector<double> out(X.rows(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < X.cols(); ++j) s += X(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double eval_sigmoid(double z, const sigmoid::SigmoidMethod& method) {
  return method.kind == sigmoid::SigmoidKind::kPoly
             ? sigmoid::sigmoid_poly_plain(z, method.degree)
             : sigmoid::sigmoid_plain(z);
}

}  // namespace

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::kOlr: return "olr";
    case Protocol::kAccurateBmpc: return "accurate-bmpc";
    case Protocol::kAccurateCmpc: return "accurate-cmpc";
    case Protocol::kBmpc: return "bmpc";
    case Protocol::kCmpc: return "cmpc";
  }
  return "unknown";
}

Protocol parse_protocol(std::string_view name) {
  for (Protocol p : {Protocol::kOlr, Protocol::kAccurateBmpc, Protocol::kAccurateCmpc,
                     Protocol::kBmpc, Protocol::kCmpc}) {
    if (name == to_string(p)) return p;
  }
  throw InvalidArgument("unknown protocol '" + std::string(name) +
                        "' (expected olr, bmpc, cmpc, accurate-bmpc or accurate-cmpc)");
}

bool is_mpc(Protocol p) { return p != Protocol::kOlr; }

bool is_accurate(Protocol p) {
  return p == Protocol::kAccurateBmpc || p == Protocol::kAccurateCmpc;
}

mpc::SecuritySetting setting_for(Protocol p) {
  switch (p) {
    case Protocol::kAccurateBmpc:
    case Protocol::kBmpc:
      return mpc::SecuritySetting::dishonest_majority();
    case Protocol::kAccurateCmpc:
    case Protocol::kCmpc:
      return mpc::SecuritySetting::honest_majority();
    case Protocol::kOlr:
      break;
  }
  throw InvalidArgument("OLR has no security setting");
}

TrainConfig TrainConfig::for_protocol(Protocol p, int degree) {
  TrainConfig cfg;
  cfg.protocol = p;
  cfg.sigmoid = (p == Protocol::kBmpc || p == Protocol::kCmpc)
                    ? sigmoid::SigmoidMethod::poly(degree)
                    : sigmoid::SigmoidMethod::exact();
  return cfg;
}

std::size_t TrainConfig::parties() const {
  return is_mpc(protocol) ? setting_for(protocol).n_parties : 0;
}

void TrainConfig::validate() const {
  if (n_iter < 1) throw InvalidArgument("n_iter must be at least 1");
  sigmoid.validate();
  fixed_point.validate();
  inversion.validate();
  exact.validate();
  if (!(real_mask > 0.0)) throw InvalidArgument("real mask must be positive");
  if (data_owners == 0) throw InvalidArgument("need at least one data owner");
  const bool exact_sigmoid = sigmoid.kind == sigmoid::SigmoidKind::kExactExpShares;
  if (is_accurate(protocol) && !exact_sigmoid) {
    throw InvalidArgument(std::string(to_string(protocol)) +
                          " evaluates the exact sigmoid; a polynomial was requested");
  }
  if ((protocol == Protocol::kBmpc || protocol == Protocol::kCmpc) && exact_sigmoid) {
    throw InvalidArgument(std::string(to_string(protocol)) +
                          " uses a polynomial sigmoid; pick degree 3, 5 or 7");
  }
}

// ---------------------------------------------------------------------------
// Plaintext

double log_likelihood(const Matrix<double>& X, std::span<const double> y,
                      std::span<const double> beta) {
  if (y.size() != X.rows()) throw InvalidArgument("log_likelihood: label count mismatch");
  const auto z = mat_vec(X, beta);
  double ll = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    // log(1 + e^z) without overflow
    const double softplus = z[i] > 0 ? z[i] + std::log1p(std::exp(-z[i]))
                                     : std::log1p(std::exp(z[i]));
    ll += y[i] * z[i] - softplus;
  }
  return ll;
}

std::vector<double> gradient_plain(const Matrix<double>& X, std::span<const double> y,
                                   std::span<const double> pi) {
  if (y.size() != X.rows() || pi.size() != X.rows()) {
    throw InvalidArgument("gradient_plain: X has " + std::to_string(X.rows()) +
                          " rows, y has " + std::to_string(y.size()) + ", pi has " +
                          std::to_string(pi.size()));
  }
  std::vector<double> g(X.cols(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const double r = y[i] - pi[i];
    for (std::size_t j = 0; j < X.cols(); ++j) g[j] += X(i, j) * r;
  }
  return g;
}

FixedHessian fixed_hessian_plain(const Matrix<double>& X) {
  Matrix<double> xtx = matmul_transposed_lhs(X, X);
  FixedHessian out;
  out.H = xtx * -0.25;
  out.H_inv = inverse_spd(xtx * 0.25, "X^T X") * -1.0;
  return out;
}

ModelParams train_plain_newton(const Dataset& d, int n_iter, HessianMode mode,
                               sigmoid::SigmoidMethod method) {
  d.validate();
  method.validate();
  if (n_iter < 1) throw InvalidArgument("n_iter must be at least 1");
  const std::size_t m = d.features();
  std::vector<double> beta(m, 0.0);
  Matrix<double> neg_h_inv;
  if (mode == HessianMode::kFixed) neg_h_inv = fixed_hessian_plain(d.X).H_inv * -1.0;
  for (int it = 0; it < n_iter; ++it) {
    auto pi = mat_vec(d.X, beta);
    for (auto& v : pi) v = eval_sigmoid(v, method);
    const auto g = gradient_plain(d.X, d.y, pi);
    Matrix<double> step_matrix;
    if (mode == HessianMode::kFull) {
      // X^T W X with w_i = pi_i (1 - pi_i)
      Matrix<double> wx = d.X;
      for (std::size_t i = 0; i < wx.rows(); ++i) {
        const double w = pi[i] * (1.0 - pi[i]);
        for (std::size_t j = 0; j < m; ++j) wx(i, j) *= w;
      }
      step_matrix = inverse_spd(matmul_transposed_lhs(d.X, wx), "X^T W X");
    } else {
      step_matrix = neg_h_inv;
    }
    const auto step = mat_vec(step_matrix, g);
    for (std::size_t j = 0; j < m; ++j) beta[j] += step[j];
  }
  return {beta};
}

ModelParams train_plain_mirror(const Dataset& d, const TrainConfig& cfg) {
  d.validate();
  cfg.validate();
  const double n = static_cast<double>(d.records());
  const Matrix<double> b = matmul_transposed_lhs(d.X, d.X) * (1.0 / (4.0 * n));
  const Matrix<double> b_inv = linalg::invert_plain_nardi(b, cfg.inversion);
  std::vector<double> beta(d.features(), 0.0);
  for (int it = 0; it < cfg.n_iter; ++it) {
    auto pi = mat_vec(d.X, beta);
    for (auto& v : pi) v = eval_sigmoid(v, cfg.sigmoid);
    auto g = gradient_plain(d.X, d.y, pi);
    for (auto& v : g) v /= n;
    const auto step = mat_vec(b_inv, g);
    for (std::size_t j = 0; j < beta.size(); ++j) beta[j] += step[j];
  }
  return {beta};
}

// ---------------------------------------------------------------------------
// Shared

template <class T>
Matrix<T> newton_program(mpc::PartyRuntime& rt, const Matrix<T>& X, const Matrix<T>& y,
                         std::size_t n_records, const TrainConfig& cfg) {
  constexpr bool kRing = std::is_same_v<T, std::uint64_t>;
  if (X.rows() != n_records || y.rows() != n_records || y.cols() != 1) {
    throw ProtocolError("received data shares do not match the agreed record count");
  }
  const auto n = static_cast<double>(n_records);
  const Matrix<T> Xt = X.transposed();
  const Matrix<T> b = rt.scale_public(rt.matmul(Xt, X), 1.0 / (4.0 * n));
  const Matrix<T> b_inv = linalg::invert_matrix_shared(rt, b, cfg.inversion);

  Matrix<T> beta(X.cols(), 1);
  for (int it = 0; it < cfg.n_iter; ++it) {
    const Matrix<T> z = rt.matmul(X, beta);
    Matrix<T> pi;
    if (cfg.sigmoid.kind == sigmoid::SigmoidKind::kPoly) {
      pi = sigmoid::sigmoid_poly_shared(rt, z, cfg.sigmoid.degree);
    } else if constexpr (kRing) {
      throw InvalidArgument("the exact sigmoid needs real-domain shares");
    } else {
      pi = sigmoid::sigmoid_exact_shared(rt, z, cfg.exact);
    }
    const Matrix<T> grad = rt.scale_public(rt.matmul(Xt, rt.sub(y, pi)), 1.0 / n);
    beta = rt.add(beta, rt.matmul(b_inv, grad));
  }
  return beta;
}

template Matrix<std::uint64_t> newton_program(mpc::PartyRuntime&, const Matrix<std::uint64_t>&,
                                              const Matrix<std::uint64_t>&, std::size_t,
                                              const TrainConfig&);
template Matrix<double> newton_program(mpc::PartyRuntime&, const Matrix<double>&,
                                       const Matrix<double>&, std::size_t,
                                       const TrainConfig&);

namespace {

// Endpoint layout: computation parties [0, n), data owners [n, n + k),
// result party n + k.
template <class T>
TrainResult run_session(const Dataset& d, const TrainConfig& cfg) {
  constexpr bool kRing = std::is_same_v<T, std::uint64_t>;
  d.validate();
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const mpc::SecuritySetting setting = setting_for(cfg.protocol);
  const std::size_t n = setting.n_parties;
  const std::size_t k = cfg.data_owners;
  const std::size_t records = d.records();
  const std::size_t m = d.features();
  const auto shards = data::partition_horizontal(d, k, cfg.seed);

  TrainResult result;
  result.parties = n;

  // Offline phase: the protocol is data-oblivious, so a dry run on zeros
  // tells the dealer exactly which triples to prepare.
  std::vector<mpc::TripleStore> stores;
  if (setting.variant == mpc::Setting::kDishonestMajority2P) {
    auto planner = mpc::PartyRuntime::planner(setting, cfg.fixed_point, cfg.real_mask);
    newton_program<T>(planner, Matrix<T>(records, m), Matrix<T>(records, 1), records, cfg);
    mpc::Dealer dealer(derive_seed(cfg.seed, 0xD1), cfg.fixed_point, cfg.real_mask);
    stores = dealer.provision(planner.planned_triples(), n);
    dealer.seal();
    result.triples_issued = dealer.triples_issued();
  }

  net::Transport transport(n + k + 1, cfg.scheduling);
  mpc::RevealAudit audit;
  std::vector<PartyId> owners;
  for (std::size_t o = 0; o < k; ++o) owners.push_back(PartyId{static_cast<std::uint32_t>(n + o)});
  const PartyId result_party{static_cast<std::uint32_t>(n + k)};
  std::vector<mpc::MulCounters> counters(n);

  std::vector<std::pair<PartyId, std::function<void()>>> bodies;
  for (std::size_t o = 0; o < k; ++o) {
    bodies.emplace_back(owners[o], [&, o] {
      Rng rng(derive_seed(cfg.seed, 0x0E, o));
      if constexpr (kRing) {
        data::owner_share_and_submit(shards[o], owners[o], n, cfg.fixed_point, transport, rng);
      } else {
        data::owner_share_and_submit_real(shards[o], owners[o], n, cfg.real_mask, transport,
                                          rng);
      }
    });
  }
  for (std::size_t p = 0; p < n; ++p) {
    bodies.emplace_back(PartyId{static_cast<std::uint32_t>(p)}, [&, p] {
      const PartyId self{static_cast<std::uint32_t>(p)};
      mpc::PartyRuntime rt(self, setting, transport, cfg.fixed_point, cfg.seed,
                           {&audit, stores.empty() ? nullptr : &stores[p], cfg.real_mask});
      const auto input = data::receive_owner_blocks<T>(transport, self, owners);
      const Matrix<T> beta = newton_program(rt, input.X, input.y, records, cfg);
      rt.send_matrix(result_party, "beta", beta);
      counters[p] = rt.counters();
    });
  }
  std::vector<double> beta(m, 0.0);
  bodies.emplace_back(result_party, [&] {
    std::vector<Matrix<T>> parts;
    for (std::uint32_t p = 0; p < n; ++p) {
      parts.push_back(Matrix<T>(m, 1, net::from_payload<T>(
                                          transport.recv(result_party, PartyId{p}, "beta"))));
    }
    audit.record(mpc::RevealKind::kFinalModel, "beta", result_party.index, m);
    if constexpr (kRing) {
      const auto sum = decode_fixed(reconstruct_matrix(std::span<const Matrix<T>>(parts),
                                                       cfg.fixed_point),
                                    cfg.fixed_point);
      std::copy(sum.values().begin(), sum.values().end(), beta.begin());
    } else {
      const auto sum = reconstruct_matrix(std::span<const Matrix<T>>(parts));
      std::copy(sum.values().begin(), sum.values().end(), beta.begin());
    }
  });
  transport.run(std::move(bodies));

  result.params.beta = std::move(beta);
  result.counters = counters[0];
  result.stats = transport.snapshot_stats();
  result.computation = result.stats.among_first(static_cast<std::uint32_t>(n));
  result.reveals = audit.entries();
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

TrainResult train_accurate_mpc(const Dataset& d, const TrainConfig& cfg) {
  if (!is_accurate(cfg.protocol)) {
    throw InvalidArgument("train_accurate_mpc needs accurate-bmpc or accurate-cmpc");
  }
  return run_session<double>(d, cfg);
}

TrainResult train_approx_mpc(const Dataset& d, const TrainConfig& cfg) {
  if (cfg.protocol != Protocol::kBmpc && cfg.protocol != Protocol::kCmpc) {
    throw InvalidArgument("train_approx_mpc needs bmpc or cmpc");
  }
  return run_session<std::uint64_t>(d, cfg);
}

TrainResult train(const Dataset& d, const TrainConfig& cfg) {
  cfg.validate();
  if (is_accurate(cfg.protocol)) return train_accurate_mpc(d, cfg);
  if (is_mpc(cfg.protocol)) return train_approx_mpc(d, cfg);
  const auto start = std::chrono::steady_clock::now();
  TrainResult r;
  r.params = train_plain_newton(d, cfg.n_iter, HessianMode::kFixed, cfg.sigmoid);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// ---------------------------------------------------------------------------
// Evaluation

std::vector<double> predict(const ModelParams& params, const Matrix<double>& X) {
  auto p = mat_vec(X, params.beta);
  for (auto& v : p) v = sigmoid::sigmoid_plain(v);
  return p;
}

std::vector<int> classify(std::span<const double> probabilities, double threshold) {
  std::vector<int> out;
  out.reserve(probabilities.size());
  for (double p : probabilities) out.push_back(p >= threshold ? 1 : 0);
  return out;
}

double accuracy(std::span<const int> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw InvalidArgument("accuracy: label vectors must be non-empty and equally long");
  }
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    hit += static_cast<double>(predicted[i]) == truth[i];
  }
  return 100.0 * static_cast<double>(hit) / static_cast<double>(truth.size());
}

double auc(std::span<const double> scores, std::span<const double> truth) {
  if (scores.size() != truth.size()) throw InvalidArgument("auc: length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // ranks i+1..j
    for (std::size_t t = i; t < j; ++t) {
      if (truth[order[t]] == 1.0) {
        pos_rank_sum += midrank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw DataError("AUC is undefined when only one class is present");
  }
  const double np = static_cast<double>(n_pos);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

}  // namespace pplr::logreg
