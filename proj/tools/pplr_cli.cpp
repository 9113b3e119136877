// pplr command line: train, bench, comm-report, reproduce-tables.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 protocol error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pplr/pplr.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kProtocol = 3 };

int exit_for(pplr_status s) {
  switch (s) {
    case PPLR_OK: return kOk;
    case PPLR_ERR_INVALID_ARGUMENT: return kUsage;
    case PPLR_ERR_DATA:
    case PPLR_ERR_IO: return kData;
    default: return kProtocol;
  }
}

struct Failure {
  int code;
};

void check(pplr_status s) {
  if (s == PPLR_OK) return;
  std::cerr << "pplr: " << pplr_status_name(s) << ": " << pplr_last_error() << "\n";
  throw Failure{exit_for(s)};
}

// Owning wrappers so early exits release handles.
struct Config {
  pplr_config* p = nullptr;
  ~Config() { pplr_config_free(p); }
};
struct Data {
  pplr_dataset* p = nullptr;
  ~Data() { pplr_dataset_free(p); }
};
struct Result {
  pplr_result* p = nullptr;
  ~Result() { pplr_result_free(p); }
};
struct Text {
  char* p = nullptr;
  ~Text() { pplr_string_free(p); }
};

struct Flags {
  std::string protocol = "olr";
  std::string data;
  std::optional<int> iters, degree, parties, frac_bits, inv_iters, repeats, owners;
  std::optional<long long> seed;
  std::optional<double> split;
  std::optional<std::string> sigmoid, standardize;
  std::string out;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Flags& f, bool with_protocol) {
  if (with_protocol) {
    cmd->add_option("--protocol", f.protocol, "olr, bmpc, cmpc, accurate-bmpc, accurate-cmpc")
        ->check(CLI::IsMember({"olr", "bmpc", "cmpc", "accurate-bmpc", "accurate-cmpc"}));
    cmd->add_option("--parties", f.parties, "computation parties (must match the protocol)");
    cmd->add_option("--sigmoid", f.sigmoid, "exact or poly")
        ->check(CLI::IsMember({"exact", "poly"}));
  }
  cmd->add_option("--iters", f.iters, "Newton iterations (default 15)");
  cmd->add_option("--sigmoid-degree", f.degree, "polynomial degree: 3, 5 or 7")
      ->check(CLI::IsMember({3, 5, 7}));
  cmd->add_option("--frac-bits", f.frac_bits, "fixed-point fractional bits (default 16)");
  cmd->add_option("--inv-iters", f.inv_iters, "Hessian inversion iterations (default 24)");
  cmd->add_option("--seed", f.seed, "seed for shares, splits and triples (default 1)");
  cmd->add_option("--split", f.split, "hold-out fraction (default 0.25)");
  cmd->add_option("--standardize", f.standardize, "on or off (default on)")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--data-owners", f.owners, "data owners partitioning the records");
  cmd->add_option("--out", f.out, "output file");
}

void apply(const Flags& f, Config& cfg) {
  check(pplr_config_new(f.protocol.c_str(), &cfg.p));
  auto set_int = [&](const char* k, auto v) {
    if (v) check(pplr_config_set_int(cfg.p, k, static_cast<int64_t>(*v)));
  };
  set_int("iters", f.iters);
  set_int("sigmoid-degree", f.degree);
  set_int("parties", f.parties);
  set_int("frac-bits", f.frac_bits);
  set_int("inv-iters", f.inv_iters);
  set_int("seed", f.seed);
  set_int("repeats", f.repeats);
  set_int("data-owners", f.owners);
  if (f.standardize) {
    check(pplr_config_set_int(cfg.p, "standardize", *f.standardize == "on" ? 1 : 0));
  }
  if (f.split) check(pplr_config_set_real(cfg.p, "split", *f.split));
  if (f.sigmoid) check(pplr_config_set_string(cfg.p, "sigmoid", f.sigmoid->c_str()));
  if (!f.data.empty()) check(pplr_config_set_string(cfg.p, "data", f.data.c_str()));
  check(pplr_config_validate(cfg.p));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) {
    std::cerr << "pplr: cannot write " << path << "\n";
    throw Failure{kData};
  }
}

pplr_format format_of(const std::string& s) {
  return s == "json" ? PPLR_FORMAT_JSON : PPLR_FORMAT_TEXT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving logistic regression over secret shares"};
  app.require_subcommand(1);

  Flags train_f;
  std::string report_path;
  auto* train = app.add_subcommand("train", "train one protocol and evaluate on a hold-out split");
  add_common(train, train_f, true);
  train->add_option("--data", train_f.data, "CSV with a header and the label last")
      ->required();
  train->add_option("--report", report_path, "also write the JSON report here");
  train->add_option("--format", train_f.format, "stdout report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  Flags bench_f;
  bench_f.protocol.clear();
  std::vector<std::size_t> records{1000, 5000, 10000}, features{50};
  auto* bench = app.add_subcommand("bench", "wall-clock sweep over synthetic data (CSV)");
  bench->add_option("--protocol", bench_f.protocol, "single protocol (default olr, bmpc, cmpc)")
      ->check(CLI::IsMember({"olr", "bmpc", "cmpc", "accurate-bmpc", "accurate-cmpc"}));
  bench->add_option("--records", records, "record counts to sweep")->delimiter(',');
  bench->add_option("--features", features, "feature counts to sweep")->delimiter(',');
  bench->add_option("--repeats", bench_f.repeats, "runs averaged per point (default 10)");
  add_common(bench, bench_f, false);

  Flags comm_f;
  std::size_t comm_records = 189, comm_features = 8;
  auto* comm = app.add_subcommand("comm-report", "messages, bytes and multiplications per protocol");
  add_common(comm, comm_f, false);
  comm->add_option("--data", comm_f.data, "CSV (default: synthetic data)");
  comm->add_option("--records", comm_records, "synthetic records when --data is absent");
  comm->add_option("--features", comm_features, "synthetic features when --data is absent");
  comm->add_option("--format", comm_f.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  Flags tables_f;
  std::string data_dir = "data";
  auto* tables = app.add_subcommand("reproduce-tables",
                                    "coefficient and accuracy tables against published values");
  add_common(tables, tables_f, false);
  tables->add_option("--data-dir", data_dir, "directory holding lbw.csv, pima.csv, pcs.csv, uis.csv");
  tables->add_option("--format", tables_f.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (train->parsed()) {
      Config cfg;
      apply(train_f, cfg);
      Data d;
      check(pplr_dataset_load_csv(train_f.data.c_str(), &d.p));
      Result r;
      check(pplr_train(d.p, cfg.p, &r.p));
      Text text;
      check(pplr_result_report(r.p, format_of(train_f.format), &text.p));
      std::cout << text.p;
      if (!train_f.out.empty()) check(pplr_result_write_model(r.p, train_f.out.c_str()));
      if (!report_path.empty()) {
        Text json;
        check(pplr_result_report(r.p, PPLR_FORMAT_JSON, &json.p));
        emit(json.p, report_path);
      }
    } else if (bench->parsed()) {
      const bool all = bench_f.protocol.empty();
      if (all) bench_f.protocol = "olr";
      Config cfg;
      apply(bench_f, cfg);
      Text csv;
      check(pplr_bench(cfg.p, records.data(), records.size(), features.data(), features.size(),
                       all ? 1 : 0, &csv.p));
      emit(csv.p, bench_f.out);
    } else if (comm->parsed()) {
      Config cfg;
      apply(comm_f, cfg);
      Data d;
      if (comm_f.data.empty()) {
        const auto seed = static_cast<uint64_t>(comm_f.seed.value_or(1));
        check(pplr_dataset_synthetic(comm_records, comm_features, seed, 0.0, &d.p));
      } else {
        check(pplr_dataset_load_csv(comm_f.data.c_str(), &d.p));
      }
      Text text;
      check(pplr_comm_report(d.p, cfg.p, format_of(comm_f.format), &text.p));
      emit(text.p, comm_f.out);
    } else if (tables->parsed()) {
      Config cfg;
      apply(tables_f, cfg);
      Text text;
      check(pplr_reproduce_tables(data_dir.c_str(), cfg.p, format_of(tables_f.format), &text.p));
      emit(text.p, tables_f.out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
