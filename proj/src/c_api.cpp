#include "pplr/pplr.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "pplr/error.hpp"
#include "pplr/harness.hpp"

using namespace pplr;

struct pplr_config {
  harness::RunOptions run;
  std::optional<int> parties;
  std::optional<bool> exact;  // --sigmoid; unset means the protocol's own
  int degree = 3;
  int repeats = 10;
};

struct pplr_dataset {
  Dataset data;
};

struct pplr_result {
  harness::Evaluation eval;
  harness::RunOptions run;
};

namespace {

thread_local std::string g_last_error;

pplr_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::kInvalidArgument: return PPLR_ERR_INVALID_ARGUMENT;
    case ErrorCode::kData: return PPLR_ERR_DATA;
    case ErrorCode::kProtocol: return PPLR_ERR_PROTOCOL;
    case ErrorCode::kOverflow: return PPLR_ERR_OVERFLOW;
    case ErrorCode::kDeadlock: return PPLR_ERR_DEADLOCK;
    case ErrorCode::kIo: return PPLR_ERR_IO;
  }
  return PPLR_ERR_INTERNAL;
}

template <class F>
pplr_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return PPLR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown failure";
  }
  return PPLR_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " must not be NULL");
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

/// Effective run options: protocol defaults plus explicit overrides, with
/// every cross-flag check applied.
harness::RunOptions resolve(const pplr_config& c) {
  harness::RunOptions run = c.run;
  auto& t = run.train;
  const auto p = t.protocol;
  const std::string name(logreg::to_string(p));
  if (c.parties) {
    if (!logreg::is_mpc(p)) {
      throw InvalidArgument("olr trains in plaintext; --parties does not apply");
    }
    const int want = static_cast<int>(logreg::setting_for(p).n_parties);
    if (*c.parties != want) {
      throw InvalidArgument(name + " runs " + std::to_string(want) +
                            " computation parties, --parties " + std::to_string(*c.parties) +
                            " given");
    }
  }
  const bool poly_protocol = p == logreg::Protocol::kBmpc || p == logreg::Protocol::kCmpc;
  const bool exact = c.exact.value_or(!poly_protocol);
  if (exact && poly_protocol) {
    throw InvalidArgument(name + " evaluates a polynomial sigmoid; use --sigmoid poly");
  }
  if (!exact && logreg::is_accurate(p)) {
    throw InvalidArgument(name + " evaluates the exact sigmoid; use --sigmoid exact");
  }
  t.sigmoid = exact ? sigmoid::SigmoidMethod::exact() : sigmoid::SigmoidMethod::poly(c.degree);
  sigmoid::SigmoidMethod::poly(c.degree).validate();
  run.validate();
  return run;
}

}  // namespace

extern "C" {

const char* pplr_version(void) { return "0.1.0"; }

const char* pplr_last_error(void) { return g_last_error.c_str(); }

const char* pplr_status_name(pplr_status status) {
  switch (status) {
    case PPLR_OK: return "ok";
    case PPLR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PPLR_ERR_DATA: return "data error";
    case PPLR_ERR_PROTOCOL: return "protocol error";
    case PPLR_ERR_OVERFLOW: return "overflow";
    case PPLR_ERR_DEADLOCK: return "deadlock";
    case PPLR_ERR_IO: return "i/o error";
    case PPLR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pplr_string_free(char* s) { std::free(s); }

pplr_status pplr_config_new(const char* protocol, pplr_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto cfg = std::make_unique<pplr_config>();
    if (protocol != nullptr) cfg->run.train.protocol = logreg::parse_protocol(protocol);
    *out = cfg.release();
  });
}

void pplr_config_free(pplr_config* cfg) { delete cfg; }

pplr_status pplr_config_set_int(pplr_config* cfg, const char* key, int64_t value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    const std::string k = key;
    auto as_int = [&](int64_t lo, int64_t hi) {
      if (value < lo || value > hi) {
        throw InvalidArgument(k + " must lie in [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "], got " + std::to_string(value));
      }
      return static_cast<int>(value);
    };
    auto& t = cfg->run.train;
    if (k == "iters") {
      t.n_iter = as_int(1, 100000);
    } else if (k == "sigmoid-degree") {
      cfg->degree = as_int(0, 100);
      sigmoid::SigmoidMethod::poly(cfg->degree).validate();
    } else if (k == "parties") {
      cfg->parties = as_int(2, 3);
    } else if (k == "frac-bits") {
      t.fixed_point.frac_bits = as_int(1, 62);
      t.fixed_point.validate();
    } else if (k == "inv-iters") {
      t.inversion.iterations = as_int(1, 1000);
    } else if (k == "seed") {
      if (value < 0) throw InvalidArgument("seed must be non-negative");
      t.seed = static_cast<std::uint64_t>(value);
    } else if (k == "standardize") {
      cfg->run.standardize = as_int(0, 1) != 0;
    } else if (k == "repeats") {
      cfg->repeats = as_int(1, 1000000);
    } else if (k == "data-owners") {
      t.data_owners = static_cast<std::size_t>(as_int(1, 1000));
    } else {
      throw InvalidArgument("unknown integer setting '" + k + "'");
    }
  });
}

pplr_status pplr_config_set_real(pplr_config* cfg, const char* key, double value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    const std::string k = key;
    if (k == "split") {
      if (!(value >= 0.0 && value < 1.0)) {
        throw InvalidArgument("split must lie in [0, 1), got " + std::to_string(value));
      }
      cfg->run.test_fraction = value;
    } else {
      throw InvalidArgument("unknown real setting '" + k + "'");
    }
  });
}

pplr_status pplr_config_set_string(pplr_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    const std::string k = key, v = value;
    if (k == "protocol") {
      cfg->run.train.protocol = logreg::parse_protocol(v);
    } else if (k == "sigmoid") {
      if (v == "exact") {
        cfg->exact = true;
      } else if (v == "poly") {
        cfg->exact = false;
      } else {
        throw InvalidArgument("sigmoid must be 'exact' or 'poly', got '" + v + "'");
      }
    } else if (k == "data") {
      cfg->run.data_path = v;
    } else {
      throw InvalidArgument("unknown string setting '" + k + "'");
    }
  });
}

pplr_status pplr_config_validate(const pplr_config* cfg) {
  return guarded([&] {
    require(cfg, "config");
    (void)resolve(*cfg);
  });
}

pplr_status pplr_config_json(const pplr_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    *out = copy_out(harness::config_json(resolve(*cfg)));
  });
}

pplr_status pplr_dataset_load_csv(const char* path, pplr_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    auto d = std::make_unique<pplr_dataset>();
    d->data = data::load_csv(path);
    *out = d.release();
  });
}

pplr_status pplr_dataset_synthetic(size_t records, size_t features, uint64_t seed,
                                   double noise, pplr_dataset** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    data::SyntheticSpec spec;
    spec.records = records;
    spec.features = features;
    spec.seed = seed;
    spec.noise = noise;
    auto d = std::make_unique<pplr_dataset>();
    d->data = data::make_synthetic(spec).data;
    *out = d.release();
  });
}

pplr_status pplr_dataset_shape(const pplr_dataset* d, size_t* records, size_t* features) {
  return guarded([&] {
    require(d, "dataset");
    if (records != nullptr) *records = d->data.records();
    if (features != nullptr) *features = d->data.features();
  });
}

void pplr_dataset_free(pplr_dataset* d) { delete d; }

pplr_status pplr_train(const pplr_dataset* d, const pplr_config* cfg, pplr_result** out) {
  return guarded([&] {
    require(d, "dataset");
    require(cfg, "config");
    require(out, "out");
    *out = nullptr;
    auto r = std::make_unique<pplr_result>();
    r->run = resolve(*cfg);
    r->eval = harness::train_and_evaluate(d->data, r->run);
    *out = r.release();
  });
}

void pplr_result_free(pplr_result* r) { delete r; }

pplr_status pplr_result_beta(const pplr_result* r, const double** beta, size_t* count) {
  return guarded([&] {
    require(r, "result");
    require(beta, "beta");
    require(count, "count");
    *beta = r->eval.beta.data();
    *count = r->eval.beta.size();
  });
}

pplr_status pplr_result_metrics(const pplr_result* r, double* accuracy_percent, double* auc,
                                double* seconds) {
  return guarded([&] {
    require(r, "result");
    if (accuracy_percent != nullptr) *accuracy_percent = r->eval.accuracy;
    if (auc != nullptr) *auc = r->eval.auc;
    if (seconds != nullptr) *seconds = r->eval.result.seconds;
  });
}

pplr_status pplr_result_comm(const pplr_result* r, uint64_t* multiplications,
                             uint64_t* messages, uint64_t* bytes) {
  return guarded([&] {
    require(r, "result");
    if (multiplications != nullptr) *multiplications = r->eval.result.counters.invocations;
    if (messages != nullptr) *messages = r->eval.result.computation.messages;
    if (bytes != nullptr) *bytes = r->eval.result.computation.bytes;
  });
}

pplr_status pplr_result_report(const pplr_result* r, pplr_format format, char** out) {
  return guarded([&] {
    require(r, "result");
    require(out, "out");
    *out = copy_out(format == PPLR_FORMAT_JSON ? harness::report_json(r->eval, r->run)
                                               : harness::report_text(r->eval, r->run));
  });
}

pplr_status pplr_result_write_model(const pplr_result* r, const char* path) {
  return guarded([&] {
    require(r, "result");
    require(path, "path");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(std::string("cannot open ") + path + " for writing");
    f << harness::model_text(r->eval);
    if (!f) throw IoError(std::string("failed writing ") + path);
  });
}

pplr_status pplr_bench(const pplr_config* cfg, const size_t* records, size_t n_records,
                       const size_t* features, size_t n_features, int all_protocols,
                       char** csv_out) {
  return guarded([&] {
    require(cfg, "config");
    require(csv_out, "csv_out");
    const auto run = resolve(*cfg);
    harness::BenchOptions b;
    if (records != nullptr) b.records.assign(records, records + n_records);
    if (features != nullptr) b.features.assign(features, features + n_features);
    if (!all_protocols) b.protocols = {run.train.protocol};
    b.repeats = cfg->repeats;
    b.degree = cfg->degree;
    b.n_iter = run.train.n_iter;
    b.seed = run.train.seed;
    *csv_out = copy_out(harness::bench_csv(harness::run_bench(b)));
  });
}

pplr_status pplr_comm_report(const pplr_dataset* d, const pplr_config* cfg, pplr_format format,
                             char** out) {
  return guarded([&] {
    require(d, "dataset");
    require(cfg, "config");
    require(out, "out");
    const auto run = resolve(*cfg);
    const auto rep = harness::run_comm_report(d->data, run, cfg->degree);
    *out = copy_out(format == PPLR_FORMAT_JSON ? harness::comm_report_json(rep, run)
                                               : harness::comm_report_text(rep, run));
  });
}

pplr_status pplr_reproduce_tables(const char* data_dir, const pplr_config* cfg,
                                  pplr_format format, char** out) {
  return guarded([&] {
    require(data_dir, "data_dir");
    require(cfg, "config");
    require(out, "out");
    harness::TablesOptions o;
    o.data_dir = data_dir;
    o.base = resolve(*cfg);
    const auto t = harness::reproduce_tables(o);
    *out = copy_out(format == PPLR_FORMAT_JSON ? harness::tables_json(t, o)
                                               : harness::tables_text(t, o));
  });
}

}  // extern "C"
