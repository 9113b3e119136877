#pragma once

// Experiment drivers behind the CLI: train-and-evaluate, timing sweeps,
// communication accounting and the published-table comparisons.
//
// Every report embeds the effective configuration. Apart from fields named
// "seconds" the output is a pure function of the inputs and the seed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pplr/data.hpp"
#include "pplr/logreg.hpp"

namespace pplr::harness {

struct RunOptions {
  logreg::TrainConfig train;
  std::string data_path;        // informational, copied into reports
  double test_fraction = 0.25;  // 0 trains and scores on every record
  bool standardize = true;

  void validate() const;
};

struct Evaluation {
  logreg::TrainResult result;
  std::vector<std::string> columns;  // raw column names, intercept first
  std::vector<double> beta;          // in raw feature units
  std::vector<double> beta_model;    // as trained (standardized units if on)
  double accuracy = 0.0;             // percent, on the test part
  double auc = 0.0;
  std::size_t train_records = 0;
  std::size_t test_records = 0;
  std::vector<std::string> warnings;
};

Evaluation train_and_evaluate(const Dataset& d, const RunOptions& opts);

std::string report_json(const Evaluation& e, const RunOptions& opts);
std::string report_text(const Evaluation& e, const RunOptions& opts);
/// One coefficient per line, raw feature units, intercept first.
std::string model_text(const Evaluation& e);

// --- timing sweeps -------------------------------------------------------

struct BenchOptions {
  std::vector<std::size_t> records{1000, 5000, 10000};
  std::vector<std::size_t> features{50};
  std::vector<logreg::Protocol> protocols{logreg::Protocol::kOlr, logreg::Protocol::kBmpc,
                                          logreg::Protocol::kCmpc};
  int repeats = 10;
  int degree = 3;
  int n_iter = 15;
  std::uint64_t seed = 1;

  void validate() const;
};

struct BenchRow {
  std::size_t records = 0;
  std::size_t features = 0;
  logreg::Protocol protocol = logreg::Protocol::kOlr;
  int repeats = 0;
  double mean_seconds = 0.0;
};

/// Repeats run sequentially; every size uses one synthetic dataset shared by
/// all protocols.
std::vector<BenchRow> run_bench(const BenchOptions& opts);
std::string bench_csv(const std::vector<BenchRow>& rows);

// --- communication -------------------------------------------------------

/// Messages one multiplication costs on its own, measured on a fresh
/// session: `total` across all parties, `per_party` from party 0.
struct MulCost {
  std::uint64_t total = 0;
  std::uint64_t per_party = 0;
};
MulCost measure_multiplication(logreg::Protocol protocol);

struct CommRow {
  logreg::Protocol protocol = logreg::Protocol::kOlr;
  std::string sigmoid;
  std::size_t parties = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t truncations = 0;
  std::uint64_t reveals = 0;
  std::uint64_t messages = 0;  // between computation parties
  std::uint64_t bytes = 0;
  MulCost per_mult;
  double seconds = 0.0;
};

struct CommReport {
  std::vector<CommRow> rows;
  std::size_t records = 0;
  std::size_t features = 0;
};

/// Trains every protocol (degree `degree` for the approximations) on `d`.
CommReport run_comm_report(const Dataset& d, const RunOptions& base, int degree);
std::string comm_report_json(const CommReport& r, const RunOptions& base);
std::string comm_report_text(const CommReport& r, const RunOptions& base);

// Figures quoted with the published cost analysis.
inline constexpr int kPublishedCmpcMessagesPerMult = 15;
inline constexpr int kPublishedBeaverMessagesPerParty = 2;
inline constexpr int kPublishedBitsPerMessage = 32;
inline constexpr int kPublishedCmpcBitsPerMult = 420;
inline constexpr int kPublishedMinMults = 100;
inline constexpr int kPublishedMaxMults = 300;
inline constexpr double kPublishedCmpcKilobits = 42.0;
inline constexpr double kPublishedBmpcKilobits = 12.5;

// --- published tables ----------------------------------------------------

struct CoefficientColumn {
  std::string name;  // "OLR", "Accurate BMPC", "BMPC g3", ...
  logreg::Protocol protocol;
  int degree;        // 0 for the exact sigmoid
  std::vector<double> published;
};
/// LBW coefficients as published, nine per column.
const std::vector<CoefficientColumn>& published_lbw_coefficients();

struct AccuracyCell {
  double accuracy;  // percent
  double auc;
};
struct AccuracyRow {
  std::string dataset;  // file stem: pima, pcs, lbw, uis
  int degree;           // 0 = no approximation (OLR only)
  std::optional<AccuracyCell> cmpc, bmpc;
  AccuracyCell olr;
};
const std::vector<AccuracyRow>& published_accuracy();

struct TablesOptions {
  std::string data_dir = "data";
  RunOptions base;
};

struct CoefficientResult {
  std::string name;
  std::vector<double> beta;
  std::vector<double> delta;  // ours - published
};

struct AccuracyResult {
  std::string dataset;
  int degree;
  std::optional<AccuracyCell> cmpc, bmpc;
  AccuracyCell olr;
};

struct Tables {
  std::vector<std::string> lbw_columns;
  std::vector<CoefficientResult> coefficients;
  std::vector<AccuracyResult> accuracy;
  std::vector<std::string> missing;  // datasets not found under data_dir
};

/// Needs lbw.csv; other missing datasets are listed rather than fatal.
Tables reproduce_tables(const TablesOptions& opts);
std::string tables_json(const Tables& t, const TablesOptions& opts);
std::string tables_text(const Tables& t, const TablesOptions& opts);

/// Effective configuration as embedded in every report.
std::string config_json(const RunOptions& opts, int indent = 2);

}  // namespace pplr::harness
