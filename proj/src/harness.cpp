#include "pplr/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "pplr/error.hpp"

namespace pplr::harness {

using logreg::Protocol;
using nlohmann::ordered_json;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sigmoid_name(const sigmoid::SigmoidMethod& m) {
  return m.kind == sigmoid::SigmoidKind::kPoly ? "g" + std::to_string(m.degree) : "exact";
}

logreg::TrainConfig with_protocol(const logreg::TrainConfig& base, Protocol p, int degree) {
  logreg::TrainConfig cfg = base;
  cfg.protocol = p;
  if (p == Protocol::kBmpc || p == Protocol::kCmpc) {
    cfg.sigmoid = sigmoid::SigmoidMethod::poly(degree);
  } else if (logreg::is_accurate(p)) {
    cfg.sigmoid = sigmoid::SigmoidMethod::exact();
  } else {
    cfg.sigmoid = degree == 0 ? sigmoid::SigmoidMethod::exact()
                              : sigmoid::SigmoidMethod::poly(degree);
  }
  return cfg;
}

ordered_json config_object(const RunOptions& opts) {
  const auto& t = opts.train;
  ordered_json j;
  j["protocol"] = std::string(logreg::to_string(t.protocol));
  j["parties"] = t.parties();
  j["data_owners"] = t.data_owners;
  j["iters"] = t.n_iter;
  j["sigmoid"] = sigmoid_name(t.sigmoid);
  j["ring_bits"] = t.fixed_point.ring_bits;
  j["frac_bits"] = t.fixed_point.frac_bits;
  j["inv_iters"] = t.inversion.iterations;
  j["inv_scaling"] =
      t.inversion.scaling == linalg::ScalingMode::kTraceBased ? "trace" : "manual";
  j["inv_form"] =
      t.inversion.form == linalg::NardiForm::kSelfCorrecting ? "self-correcting" : "literal";
  j["real_mask"] = t.real_mask;
  j["exp_mask"] = t.exact.exp_mask;
  j["exp_z_max"] = t.exact.z_max;
  j["exp_inv_iters"] = t.exact.iterations();
  j["seed"] = t.seed;
  j["split"] = opts.test_fraction;
  j["standardize"] = opts.standardize;
  j["data"] = opts.data_path;
  return j;
}

ordered_json beta_object(const std::vector<std::string>& names, const std::vector<double>& b) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < b.size(); ++i) {
    j[i < names.size() ? names[i] : "beta" + std::to_string(i)] = b[i];
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

// ---------------------------------------------------------------------------
// train and evaluate

void RunOptions::validate() const {
  train.validate();
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw InvalidArgument("split must lie in [0, 1), got " + std::to_string(test_fraction));
  }
}

std::string config_json(const RunOptions& opts, int indent) {
  return config_object(opts).dump(indent);
}

Evaluation train_and_evaluate(const Dataset& d, const RunOptions& opts) {
  opts.validate();
  d.validate();
  Dataset train_raw = d, test_raw = d;
  if (opts.test_fraction > 0.0) {
    auto split = data::stratified_split(d, opts.test_fraction, opts.train.seed);
    train_raw = std::move(split.train);
    test_raw = std::move(split.test);
  }

  Evaluation e;
  e.columns = d.columns;
  e.train_records = train_raw.records();
  e.test_records = test_raw.records();

  Dataset train_set = train_raw;
  Matrix<double> test_x = test_raw.X;
  std::optional<data::Scaler> scaler;
  if (opts.standardize) {
    auto st = data::standardize(train_raw);
    train_set = std::move(st.data);
    test_x = st.scaler.transform(test_raw.X);
    e.warnings = std::move(st.warnings);
    scaler = std::move(st.scaler);
  }

  e.result = logreg::train(train_set, opts.train);
  e.beta_model = e.result.params.beta;
  e.beta = scaler ? scaler->inverse_beta(e.beta_model) : e.beta_model;

  const auto scores = logreg::predict(e.result.params, test_x);
  e.accuracy = logreg::accuracy(logreg::classify(scores), test_raw.y);
  e.auc = logreg::auc(scores, test_raw.y);
  return e;
}

std::string report_json(const Evaluation& e, const RunOptions& opts) {
  ordered_json j;
  j["config"] = config_object(opts);
  j["records"] = {{"train", e.train_records}, {"test", e.test_records}};
  j["beta"] = beta_object(e.columns, e.beta);
  j["accuracy"] = e.accuracy;
  j["auc"] = e.auc;
  j["communication"] = {{"multiplications", e.result.counters.invocations},
                        {"truncations", e.result.counters.truncations},
                        {"messages", e.result.computation.messages},
                        {"bytes", e.result.computation.bytes},
                        {"messages_total", e.result.stats.messages_sent},
                        {"bytes_total", e.result.stats.bytes_sent},
                        {"triples", e.result.triples_issued}};
  ordered_json reveals = ordered_json::array();
  for (const auto& r : e.result.reveals) {
    if (r.party != 0) continue;
    reveals.push_back({{"kind", std::string(mpc::to_string(r.kind))},
                       {"label", r.label},
                       {"elements", r.elements}});
  }
  j["reveals_party0"] = reveals;
  j["warnings"] = e.warnings;
  j["seconds"] = e.result.seconds;
  return dump(j);
}

std::string report_text(const Evaluation& e, const RunOptions& opts) {
  std::ostringstream out;
  out << "# config " << config_json(opts, -1) << "\n";
  out << "records  train=" << e.train_records << " test=" << e.test_records << "\n";
  out << "accuracy " << fmt("%.2f%%", e.accuracy) << "\n";
  out << "auc      " << fmt("%.4f", e.auc) << "\n";
  out << "beta (raw units)\n";
  for (std::size_t i = 0; i < e.beta.size(); ++i) {
    const std::string name = i < e.columns.size() ? e.columns[i] : "beta" + std::to_string(i);
    char line[128];
    std::snprintf(line, sizeof line, "  %-12s % .6f\n", name.c_str(), e.beta[i]);
    out << line;
  }
  const auto& r = e.result;
  out << "mpc      multiplications=" << r.counters.invocations
      << " messages=" << r.computation.messages << " bytes=" << r.computation.bytes
      << " triples=" << r.triples_issued << "\n";
  for (const auto& w : e.warnings) out << "warning  " << w << "\n";
  out << "seconds  " << fmt("%.3f", r.seconds) << "\n";
  return out.str();
}

std::string model_text(const Evaluation& e) {
  std::string out;
  for (double b : e.beta) out += fmt("%.17g", b) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// bench

void BenchOptions::validate() const {
  if (repeats < 1) throw InvalidArgument("repeats must be at least 1");
  if (records.empty() || features.empty()) {
    throw InvalidArgument("bench needs at least one record count and one feature count");
  }
  if (protocols.empty()) throw InvalidArgument("bench needs at least one protocol");
  for (auto r : records) {
    if (r < 4) throw InvalidArgument("bench record counts must be at least 4");
  }
  for (auto f : features) {
    if (f < 1) throw InvalidArgument("bench feature counts must be at least 1");
  }
  if (n_iter < 1) throw InvalidArgument("iters must be at least 1");
}

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  opts.validate();
  std::vector<BenchRow> rows;
  for (std::size_t f : opts.features) {
    for (std::size_t n : opts.records) {
      data::SyntheticSpec spec;
      spec.records = n;
      spec.features = f;
      spec.seed = opts.seed;
      // Keeps the logits O(1) however many features there are.
      spec.beta_scale = 1.0 / std::sqrt(static_cast<double>(f));
      const Dataset d = data::standardize(data::make_synthetic(spec).data).data;
      for (Protocol p : opts.protocols) {
        auto cfg = with_protocol(logreg::TrainConfig{}, p, opts.degree);
        cfg.n_iter = opts.n_iter;
        cfg.seed = opts.seed;
        (void)logreg::train(d, cfg);  // untimed warm-up
        double total = 0.0;
        for (int r = 0; r < opts.repeats; ++r) {
          const auto start = std::chrono::steady_clock::now();
          (void)logreg::train(d, cfg);
          total += std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                       .count();
        }
        rows.push_back({n, f, p, opts.repeats, total / opts.repeats});
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = "records,features,protocol,repeats,mean_seconds\n";
  for (const auto& r : rows) {
    out += std::to_string(r.records) + "," + std::to_string(r.features) + "," +
           std::string(logreg::to_string(r.protocol)) + "," + std::to_string(r.repeats) +
           "," + fmt("%.6f", r.mean_seconds) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// communication

MulCost measure_multiplication(Protocol protocol) {
  if (!logreg::is_mpc(protocol)) return {};
  const auto setting = logreg::setting_for(protocol);
  const std::size_t n = setting.n_parties;
  const mpc::RingMat a(1, 1, 3), b(1, 1, 5);

  std::vector<mpc::TripleStore> stores;
  if (setting.variant == mpc::Setting::kDishonestMajority2P) {
    auto planner = mpc::PartyRuntime::planner(setting, {});
    (void)planner.mul_raw(a, b, mpc::ProductKind::kHadamard);
    mpc::Dealer dealer(1);
    stores = dealer.provision(planner.planned_triples(), n);
    dealer.seal();
  }
  net::Transport transport(n);
  std::vector<std::pair<PartyId, std::function<void()>>> bodies;
  for (std::uint32_t p = 0; p < n; ++p) {
    bodies.emplace_back(PartyId{p}, [&, p] {
      mpc::PartyRuntime::Options o;
      o.triples = stores.empty() ? nullptr : &stores[p];
      mpc::PartyRuntime rt(PartyId{p}, setting, transport, {}, 1, o);
      (void)rt.mul_raw(a, b, mpc::ProductKind::kHadamard);
    });
  }
  transport.run(std::move(bodies));
  const auto stats = transport.snapshot_stats();
  return {stats.messages_sent, stats.messages_from(0)};
}

CommReport run_comm_report(const Dataset& d, const RunOptions& base, int degree) {
  base.validate();
  sigmoid::SigmoidMethod::poly(degree).validate();
  CommReport rep;
  const Dataset train_set = base.standardize ? data::standardize(d).data : d;
  rep.records = train_set.records();
  rep.features = train_set.features();
  for (Protocol p : {Protocol::kOlr, Protocol::kAccurateBmpc, Protocol::kBmpc,
                     Protocol::kAccurateCmpc, Protocol::kCmpc}) {
    const auto cfg = with_protocol(base.train, p, logreg::is_accurate(p) || p == Protocol::kOlr
                                                      ? 0
                                                      : degree);
    const auto r = logreg::train(train_set, cfg);
    CommRow row;
    row.protocol = p;
    row.sigmoid = sigmoid_name(cfg.sigmoid);
    row.parties = r.parties;
    row.multiplications = r.counters.invocations;
    row.truncations = r.counters.truncations;
    row.reveals = r.counters.reveals;
    row.messages = r.computation.messages;
    row.bytes = r.computation.bytes;
    row.per_mult = measure_multiplication(p);
    row.seconds = r.seconds;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

ordered_json published_comm() {
  return {{"cmpc_messages_per_mult", kPublishedCmpcMessagesPerMult},
          {"beaver_messages_per_party", kPublishedBeaverMessagesPerParty},
          {"bits_per_message", kPublishedBitsPerMessage},
          {"cmpc_bits_per_mult", kPublishedCmpcBitsPerMult},
          {"cmpc_mults_min", kPublishedMinMults},
          {"cmpc_mults_max", kPublishedMaxMults},
          {"cmpc_total_kilobits_min", kPublishedCmpcKilobits},
          {"bmpc_total_kilobits", kPublishedBmpcKilobits}};
}

}  // namespace

std::string comm_report_json(const CommReport& r, const RunOptions& base) {
  ordered_json j;
  j["config"] = config_object(base);
  j["records"] = r.records;
  j["features"] = r.features;
  j["published"] = published_comm();
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"protocol", std::string(logreg::to_string(row.protocol))},
                    {"sigmoid", row.sigmoid},
                    {"parties", row.parties},
                    {"multiplications", row.multiplications},
                    {"truncations", row.truncations},
                    {"reveals", row.reveals},
                    {"messages", row.messages},
                    {"bytes", row.bytes},
                    {"messages_per_mult", row.per_mult.total},
                    {"messages_per_mult_per_party", row.per_mult.per_party},
                    {"seconds", row.seconds}});
  }
  j["measured"] = rows;
  return dump(j);
}

std::string comm_report_text(const CommReport& r, const RunOptions& base) {
  std::ostringstream out;
  out << "# config " << config_json(base, -1) << "\n";
  out << "# data " << r.records << " records x " << r.features << " columns\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-6s %7s %8s %8s %10s %12s %9s %9s\n", "protocol",
                "sigma", "parties", "mults", "truncs", "messages", "bytes", "msg/mult",
                "msg/party");
  out << line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-14s %-6s %7zu %8llu %8llu %10llu %12llu %9llu %9llu\n",
                  std::string(logreg::to_string(row.protocol)).c_str(), row.sigmoid.c_str(),
                  row.parties, static_cast<unsigned long long>(row.multiplications),
                  static_cast<unsigned long long>(row.truncations),
                  static_cast<unsigned long long>(row.messages),
                  static_cast<unsigned long long>(row.bytes),
                  static_cast<unsigned long long>(row.per_mult.total),
                  static_cast<unsigned long long>(row.per_mult.per_party));
    out << line;
  }
  out << "published: cmpc " << kPublishedCmpcMessagesPerMult << " messages per mult ("
      << kPublishedCmpcBitsPerMult << " bits), " << kPublishedMinMults << "-"
      << kPublishedMaxMults << " mults, >= " << fmt("%.1f", kPublishedCmpcKilobits)
      << " Kb per run; bmpc " << kPublishedBeaverMessagesPerParty
      << " messages per party per mult, " << fmt("%.1f", kPublishedBmpcKilobits)
      << " Kb per run\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// published tables

const std::vector<CoefficientColumn>& published_lbw_coefficients() {
  static const std::vector<CoefficientColumn> cols = {
      {"OLR", Protocol::kOlr, 0,
       {0.01574, 0.01127, 0.78666, -0.47132, -1.32410, -0.75584, -2.20748, -0.96060, -0.24569}},
      {"Accurate BMPC", Protocol::kAccurateBmpc, 0,
       {0.01577, 0.01123, 0.78152, -0.46992, -1.31870, -0.75594, -2.20104, -0.95756, -0.24476}},
      {"BMPC g3", Protocol::kBmpc, 3,
       {0.01761, 0.01171, 0.67763, -0.48975, -1.24442, -0.86971, -2.48191, -0.99906, -0.21884}},
      {"BMPC g5", Protocol::kBmpc, 5,
       {0.01580, 0.01061, 0.62479, -0.44423, -1.13786, -0.78142, -2.23117, -0.90459, -0.20160}},
      {"BMPC g7", Protocol::kBmpc, 7,
       {0.01480, 0.01006, 0.60392, -0.42170, -1.08974, -0.73330, -2.09511, -0.85667, -0.19465}},
      {"Accurate CMPC", Protocol::kAccurateCmpc, 0,
       {0.01574, 0.01127, 0.78662, -0.47131, -1.32405, -0.75583, -2.20743, -0.96058, -0.24568}},
      {"CMPC g3", Protocol::kCmpc, 3,
       {0.02214, 0.01534, 0.95081, -0.63960, -1.68676, -1.09894, -3.15262, -1.30317, -0.30509}},
      {"CMPC g5", Protocol::kCmpc, 5,
       {0.01793, 0.01266, 0.81191, -0.52621, -1.41595, -0.88944, -2.56252, -1.07358, -0.25879}},
      {"CMPC g7", Protocol::kCmpc, 7,
       {0.01630, 0.01166, 0.77010, -0.48340, -1.32408, -0.80596, -2.33208, -0.98838, -0.24367}},
  };
  return cols;
}

const std::vector<AccuracyRow>& published_accuracy() {
  using C = AccuracyCell;
  static const std::vector<AccuracyRow> rows = {
      {"pima", 3, C{71.87, 0.740}, C{71.87, 0.740}, C{71.87, 0.740}},
      {"pima", 5, C{71.87, 0.741}, C{71.87, 0.740}, C{71.87, 0.740}},
      {"pima", 7, C{71.87, 0.741}, C{71.87, 0.741}, C{71.87, 0.741}},
      {"pima", 0, std::nullopt, std::nullopt, C{71.87, 0.741}},
      {"pcs", 3, C{81.05, 0.842}, C{81.05, 0.846}, C{80.00, 0.846}},
      {"pcs", 5, C{81.05, 0.845}, C{81.05, 0.847}, C{80.00, 0.847}},
      {"pcs", 7, C{81.05, 0.847}, C{81.05, 0.848}, C{81.05, 0.848}},
      {"pcs", 0, std::nullopt, std::nullopt, C{81.05, 0.848}},
      {"lbw", 3, C{64.58, 0.519}, C{64.58, 0.519}, C{64.58, 0.519}},
      {"lbw", 5, C{64.58, 0.519}, C{64.58, 0.519}, C{64.58, 0.519}},
      {"lbw", 7, C{62.50, 0.519}, C{62.50, 0.517}, C{64.58, 0.519}},
      {"lbw", 0, std::nullopt, std::nullopt, C{62.50, 0.523}},
      {"uis", 3, C{73.61, 0.651}, C{73.61, 0.651}, C{73.61, 0.651}},
      {"uis", 5, C{72.91, 0.652}, C{72.91, 0.652}, C{72.91, 0.652}},
      {"uis", 7, C{72.91, 0.655}, C{73.61, 0.651}, C{72.91, 0.655}},
      {"uis", 0, std::nullopt, std::nullopt, C{72.22, 0.656}},
  };
  return rows;
}

Tables reproduce_tables(const TablesOptions& opts) {
  opts.base.validate();
  namespace fs = std::filesystem;
  auto path_of = [&](const std::string& stem) {
    return (fs::path(opts.data_dir) / (stem + ".csv")).string();
  };

  Tables t;
  const std::string lbw_path = path_of("lbw");
  if (!fs::exists(lbw_path)) {
    throw DataError("dataset " + lbw_path +
                    " not found; run tools/fetch_datasets.py --out " + opts.data_dir);
  }

  // Coefficients: the full LBW data, no hold-out.
  {
    const Dataset lbw = data::load_csv(lbw_path);
    t.lbw_columns = lbw.columns;
    RunOptions run = opts.base;
    run.test_fraction = 0.0;
    run.data_path = lbw_path;
    for (const auto& col : published_lbw_coefficients()) {
      run.train = with_protocol(opts.base.train, col.protocol, col.degree);
      const Evaluation e = train_and_evaluate(lbw, run);
      CoefficientResult r;
      r.name = col.name;
      r.beta = e.beta;
      for (std::size_t i = 0; i < r.beta.size() && i < col.published.size(); ++i) {
        r.delta.push_back(r.beta[i] - col.published[i]);
      }
      t.coefficients.push_back(std::move(r));
    }
  }

  // Accuracy / AUC on the configured hold-out split.
  std::string current;
  std::optional<Dataset> loaded;
  for (const auto& pub : published_accuracy()) {
    if (pub.dataset != current) {
      current = pub.dataset;
      loaded.reset();
      const std::string p = path_of(current);
      if (fs::exists(p)) {
        loaded = data::load_csv(p);
      } else {
        t.missing.push_back(p);
      }
    }
    if (!loaded) continue;
    RunOptions run = opts.base;
    run.data_path = path_of(current);
    auto cell = [&](Protocol p) {
      run.train = with_protocol(opts.base.train, p, pub.degree);
      const Evaluation e = train_and_evaluate(*loaded, run);
      return AccuracyCell{e.accuracy, e.auc};
    };
    AccuracyResult r;
    r.dataset = pub.dataset;
    r.degree = pub.degree;
    if (pub.degree != 0) {
      r.cmpc = cell(Protocol::kCmpc);
      r.bmpc = cell(Protocol::kBmpc);
    }
    r.olr = cell(Protocol::kOlr);
    t.accuracy.push_back(std::move(r));
  }
  return t;
}

namespace {

const AccuracyRow& published_row(const std::string& dataset, int degree) {
  for (const auto& r : published_accuracy()) {
    if (r.dataset == dataset && r.degree == degree) return r;
  }
  throw InvalidArgument("no published accuracy row for " + dataset);
}

ordered_json cell_json(const std::optional<AccuracyCell>& ours,
                       const std::optional<AccuracyCell>& pub) {
  if (!ours) return nullptr;
  ordered_json j = {{"accuracy", ours->accuracy}, {"auc", ours->auc}};
  if (pub) {
    j["published_accuracy"] = pub->accuracy;
    j["published_auc"] = pub->auc;
    j["delta_accuracy"] = ours->accuracy - pub->accuracy;
    j["delta_auc"] = ours->auc - pub->auc;
  }
  return j;
}

}  // namespace

std::string tables_json(const Tables& t, const TablesOptions& opts) {
  ordered_json j;
  j["config"] = config_object(opts.base);
  j["data_dir"] = opts.data_dir;
  ordered_json coef = ordered_json::array();
  const auto& pub = published_lbw_coefficients();
  for (std::size_t c = 0; c < t.coefficients.size(); ++c) {
    const auto& r = t.coefficients[c];
    coef.push_back({{"column", r.name},
                    {"beta", r.beta},
                    {"published", pub[c].published},
                    {"delta", r.delta}});
  }
  j["lbw_columns"] = t.lbw_columns;
  j["coefficients"] = coef;
  ordered_json acc = ordered_json::array();
  for (const auto& r : t.accuracy) {
    const auto& p = published_row(r.dataset, r.degree);
    acc.push_back({{"dataset", r.dataset},
                   {"degree", r.degree},
                   {"cmpc", cell_json(r.cmpc, p.cmpc)},
                   {"bmpc", cell_json(r.bmpc, p.bmpc)},
                   {"olr", cell_json(r.olr, p.olr)}});
  }
  j["accuracy"] = acc;
  j["missing"] = t.missing;
  return dump(j);
}

std::string tables_text(const Tables& t, const TablesOptions& opts) {
  std::ostringstream out;
  out << "# config " << config_json(opts.base, -1) << "\n";
  out << "# LBW coefficients (raw units), ours / delta vs published\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-10s", "beta");
  out << buf;
  for (const auto& r : t.coefficients) {
    std::snprintf(buf, sizeof buf, " %21s", r.name.c_str());
    out << buf;
  }
  out << "\n";
  const std::size_t rows = t.coefficients.empty() ? 0 : t.coefficients.front().beta.size();
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string name = i < t.lbw_columns.size() ? t.lbw_columns[i] : "?";
    std::snprintf(buf, sizeof buf, "%-10s", name.c_str());
    out << buf;
    for (const auto& r : t.coefficients) {
      const double d = i < r.delta.size() ? r.delta[i] : NAN;
      std::snprintf(buf, sizeof buf, " %10.5f/%+10.5f", r.beta[i], d);
      out << buf;
    }
    out << "\n";
  }
  out << "\n# accuracy % / AUC on the hold-out split, ours (delta vs published)\n";
  std::snprintf(buf, sizeof buf, "%-6s %-6s %-26s %-26s %-26s\n", "data", "g(x)", "CMPC",
                "BMPC", "OLR");
  out << buf;
  auto cell = [&](const std::optional<AccuracyCell>& ours,
                  const std::optional<AccuracyCell>& pub) {
    if (!ours || !pub) return std::string("-");
    char c[64];
    std::snprintf(c, sizeof c, "%.2f(%+.2f) %.3f(%+.3f)", ours->accuracy,
                  ours->accuracy - pub->accuracy, ours->auc, ours->auc - pub->auc);
    return std::string(c);
  };
  for (const auto& r : t.accuracy) {
    const auto& p = published_row(r.dataset, r.degree);
    const std::string deg = r.degree == 0 ? "exact" : std::to_string(r.degree);
    std::snprintf(buf, sizeof buf, "%-6s %-6s %-26s %-26s %-26s\n", r.dataset.c_str(),
                  deg.c_str(), cell(r.cmpc, p.cmpc).c_str(), cell(r.bmpc, p.bmpc).c_str(),
                  cell(r.olr, p.olr).c_str());
    out << buf;
  }
  for (const auto& m : t.missing) {
    out << "missing  " << m << " (run tools/fetch_datasets.py)\n";
  }
  return out.str();
}

}  // namespace pplr::harness
