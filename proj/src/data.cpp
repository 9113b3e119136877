#include "pplr/data.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>
#include <type_traits>

namespace pplr {

void Dataset::validate() const {
  if (X.rows() == 0 || X.cols() == 0) throw DataError("dataset is empty");
  if (y.size() != X.rows()) {
    throw DataError("dataset has " + std::to_string(X.rows()) + " rows but " +
                    std::to_string(y.size()) + " labels");
  }
  if (!columns.empty() && columns.size() != X.cols()) {
    throw DataError("dataset column names do not match its width");
  }
  for (std::size_t i = 0; i < X.rows(); ++i) {
    if (X(i, 0) != 1.0) throw DataError("column 0 must be the intercept (all ones)");
    if (y[i] != 0.0 && y[i] != 1.0) {
      throw DataError("label of record " + std::to_string(i) + " is not 0/1");
    }
  }
  for (double v : X.values()) {
    if (!std::isfinite(v)) throw DataError("dataset contains a non-finite value");
  }
}

namespace data {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Dataset parse_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      for (auto f : split_fields(line)) header.emplace_back(f);
      break;
    }
  }
  if (header.empty()) throw DataError(source + ": file is empty");
  if (header.size() < 2) {
    throw DataError(source + ": need at least one feature column and a label column");
  }
  const std::size_t width = header.size();
  std::vector<double> values;
  std::vector<double> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != width) {
      throw DataError(source + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(width));
    }
    values.push_back(1.0);
    for (std::size_t c = 0; c < width; ++c) {
      double v = 0.0;
      if (!parse_double(fields[c], v)) {
        throw DataError(source + ": line " + std::to_string(line_no) + ", column " +
                        std::to_string(c + 1) + " ('" + header[c] + "'): '" +
                        std::string(fields[c]) + "' is not a number");
      }
      if (c + 1 < width) {
        values.push_back(v);
      } else {
        if (v != 0.0 && v != 1.0) {
          throw DataError(source + ": line " + std::to_string(line_no) +
                          ": label '" + std::string(fields[c]) + "' is not 0 or 1");
        }
        labels.push_back(v);
      }
    }
  }
  if (labels.empty()) throw DataError(source + ": no data rows after the header");
  Dataset d;
  d.X = Matrix<double>(labels.size(), width, std::move(values));
  d.y = std::move(labels);
  d.columns.push_back("intercept");
  d.columns.insert(d.columns.end(), header.begin(), header.end() - 1);
  return d;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_csv(in, path);
}

Matrix<double> Scaler::transform(const Matrix<double>& raw) const {
  if (raw.cols() != original_features) {
    throw InvalidArgument("scaler expects " + std::to_string(original_features) +
                          " columns, got " + std::to_string(raw.cols()));
  }
  Matrix<double> out(raw.rows(), kept.size() + 1);
  for (std::size_t i = 0; i < raw.rows(); ++i) {
    out(i, 0) = raw(i, 0);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      out(i, k + 1) = (raw(i, kept[k]) - mean[k]) / stdev[k];
    }
  }
  return out;
}

std::vector<double> Scaler::inverse_beta(std::span<const double> beta) const {
  if (beta.size() != kept.size() + 1) {
    throw InvalidArgument("inverse_beta: expected " + std::to_string(kept.size() + 1) +
                          " coefficients, got " + std::to_string(beta.size()));
  }
  std::vector<double> raw(original_features, 0.0);
  raw[0] = beta[0];
  for (std::size_t k = 0; k < kept.size(); ++k) {
    raw[kept[k]] = beta[k + 1] / stdev[k];
    raw[0] -= beta[k + 1] * mean[k] / stdev[k];
  }
  return raw;
}

Standardized standardize(const Dataset& d) {
  d.validate();
  Standardized out;
  Scaler& s = out.scaler;
  s.original_features = d.features();
  const auto n = static_cast<double>(d.records());
  for (std::size_t j = 1; j < d.features(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < d.records(); ++i) mean += d.X(i, j);
    mean /= n;
    double var = 0.0;
    for (std::size_t i = 0; i < d.records(); ++i) {
      const double dv = d.X(i, j) - mean;
      var += dv * dv;
    }
    const double sd = std::sqrt(var / n);
    const std::string name = j < d.columns.size() ? d.columns[j] : "x" + std::to_string(j);
    if (!(sd > 1e-12 * std::max(1.0, std::fabs(mean)))) {
      s.dropped.push_back(name);
      out.warnings.push_back("dropping constant column '" + name + "'");
      continue;
    }
    s.kept.push_back(j);
    s.mean.push_back(mean);
    s.stdev.push_back(sd);
  }
  out.data.X = s.transform(d.X);
  out.data.y = d.y;
  out.data.columns.push_back(d.columns.empty() ? "intercept" : d.columns[0]);
  for (std::size_t j : s.kept) {
    out.data.columns.push_back(j < d.columns.size() ? d.columns[j] : "x" + std::to_string(j));
  }
  return out;
}

Dataset select_rows(const Dataset& d, std::span<const std::size_t> rows) {
  Dataset out;
  out.X = Matrix<double>(rows.size(), d.features());
  out.y.reserve(rows.size());
  out.columns = d.columns;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= d.records()) throw InvalidArgument("select_rows: row out of range");
    for (std::size_t c = 0; c < d.features(); ++c) out.X(r, c) = d.X(rows[r], c);
    out.y.push_back(d.y[rows[r]]);
  }
  return out;
}

std::vector<OwnerShard> partition_horizontal(const Dataset& d, std::size_t k_owners,
                                             std::uint64_t seed) {
  if (k_owners == 0) throw InvalidArgument("need at least one data owner");
  if (k_owners > d.records()) {
    throw InvalidArgument("cannot split " + std::to_string(d.records()) +
                          " records among " + std::to_string(k_owners) + " owners");
  }
  std::vector<std::size_t> order(d.records());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x5A4D));
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<OwnerShard> shards;
  const std::size_t base = d.records() / k_owners;
  const std::size_t extra = d.records() % k_owners;
  std::size_t at = 0;
  for (std::size_t k = 0; k < k_owners; ++k) {
    const std::size_t len = base + (k < extra ? 1 : 0);
    Dataset block = select_rows(d, std::span(order).subspan(at, len));
    shards.push_back({k, std::move(block.X), std::move(block.y)});
    at += len;
  }
  return shards;
}

Dataset concatenate(std::span<const OwnerShard> shards, std::vector<std::string> columns) {
  std::vector<Matrix<double>> blocks;
  Dataset out;
  for (const auto& s : shards) {
    blocks.push_back(s.X);
    out.y.insert(out.y.end(), s.y.begin(), s.y.end());
  }
  out.X = vstack<double>(blocks);
  out.columns = std::move(columns);
  return out;
}

namespace {

template <class T>
void submit(const OwnerShard& shard, PartyId owner_endpoint, std::size_t n_parties,
            net::Transport& transport, std::vector<ShareMatrix<T>> x_shares,
            std::vector<ShareMatrix<T>> y_shares) {
  for (std::uint32_t p = 0; p < n_parties; ++p) {
    std::vector<std::uint64_t> words;
    words.reserve(2 + shard.X.size() + shard.y.size());
    words.push_back(shard.X.rows());
    words.push_back(shard.X.cols());
    for (T v : x_shares[p].values.values()) words.push_back(std::bit_cast<std::uint64_t>(v));
    for (T v : y_shares[p].values.values()) words.push_back(std::bit_cast<std::uint64_t>(v));
    transport.send(owner_endpoint, PartyId{p}, "submit",
                   net::to_payload<std::uint64_t>(words));
  }
}

void check_shard(const OwnerShard& shard) {
  if (shard.X.rows() == 0 || shard.X.rows() != shard.y.size()) {
    throw DataError("owner " + std::to_string(shard.owner_id) + " holds a malformed block");
  }
}

}  // namespace

void owner_share_and_submit(const OwnerShard& shard, PartyId owner_endpoint,
                            std::size_t n_parties, const FixedPointConfig& cfg,
                            net::Transport& transport, Rng& rng) {
  check_shard(shard);
  auto xs = share_matrix(encode_fixed(shard.X, cfg), n_parties, rng, cfg);
  auto ys = share_matrix(encode_fixed(Matrix<double>::column(shard.y), cfg), n_parties,
                         rng, cfg);
  submit<std::uint64_t>(shard, owner_endpoint, n_parties, transport, std::move(xs),
                        std::move(ys));
}

void owner_share_and_submit_real(const OwnerShard& shard, PartyId owner_endpoint,
                                 std::size_t n_parties, double mask_bound,
                                 net::Transport& transport, Rng& rng) {
  check_shard(shard);
  auto xs = share_matrix(shard.X, n_parties, rng, mask_bound);
  auto ys = share_matrix(Matrix<double>::column(shard.y), n_parties, rng, mask_bound);
  submit<double>(shard, owner_endpoint, n_parties, transport, std::move(xs),
                 std::move(ys));
}

template <class T>
PartyInput<T> receive_owner_blocks(net::Transport& transport, PartyId self,
                                   std::span<const PartyId> owners) {
  std::vector<Matrix<T>> xs;
  std::vector<T> ys;
  std::size_t cols = 0;
  for (std::size_t k = 0; k < owners.size(); ++k) {
    const auto words = net::from_payload<std::uint64_t>(transport.recv(self, owners[k], "submit"));
    if (words.size() < 2) throw ProtocolError("owner submission lacks its header");
    const std::size_t r = words[0];
    const std::size_t c = words[1];
    if (words.size() != 2 + r * c + r) {
      throw ProtocolError("owner submission length does not match its header");
    }
    if (k == 0) {
      cols = c;
    } else if (c != cols) {
      throw DataError("data owners disagree on the number of columns: owner 0 sent " +
                      std::to_string(cols) + ", owner " + std::to_string(k) + " sent " +
                      std::to_string(c));
    }
    std::vector<T> xv(r * c);
    for (std::size_t i = 0; i < r * c; ++i) xv[i] = std::bit_cast<T>(words[2 + i]);
    for (std::size_t i = 0; i < r; ++i) ys.push_back(std::bit_cast<T>(words[2 + r * c + i]));
    xs.emplace_back(r, c, std::move(xv));
  }
  PartyInput<T> in;
  in.X = vstack<T>(xs);
  in.y = Matrix<T>::column(std::move(ys));
  return in;
}

template PartyInput<std::uint64_t> receive_owner_blocks(net::Transport&, PartyId,
                                                        std::span<const PartyId>);
template PartyInput<double> receive_owner_blocks(net::Transport&, PartyId,
                                                 std::span<const PartyId>);

Synthetic make_synthetic(const SyntheticSpec& spec) {
  if (spec.records == 0) throw InvalidArgument("synthetic data needs at least one record");
  if (spec.noise < 0.0) throw InvalidArgument("noise level must be non-negative");
  Rng rng(derive_seed(spec.seed, 0x5E7));
  const std::size_t m = spec.features + 1;
  Synthetic out;
  out.true_beta.resize(m);
  for (auto& b : out.true_beta) b = uniform_real(rng, -spec.beta_scale, spec.beta_scale);
  out.data.X = Matrix<double>(spec.records, m);
  out.data.y.resize(spec.records);
  out.data.columns.push_back("intercept");
  for (std::size_t j = 1; j < m; ++j) out.data.columns.push_back("x" + std::to_string(j));
  for (std::size_t i = 0; i < spec.records; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double v = j == 0 ? 1.0 : standard_normal(rng);
      out.data.X(i, j) = v;
      z += v * out.true_beta[j];
    }
    if (spec.noise > 0.0) z += spec.noise * standard_normal(rng);
    const double p = 1.0 / (1.0 + std::exp(-z));
    out.data.y[i] = uniform_real(rng, 0.0, 1.0) < p ? 1.0 : 0.0;
  }
  return out;
}

Split stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw InvalidArgument("test fraction must lie in (0, 1)");
  }
  Rng rng(derive_seed(seed, 0x5B17));
  std::vector<std::size_t> train, test;
  for (double label : {0.0, 1.0}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d.records(); ++i) {
      if (d.y[i] == label) idx.push_back(i);
    }
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_test = static_cast<std::size_t>(
        std::llround(test_fraction * static_cast<double>(idx.size())));
    test.insert(test.end(), idx.begin(), idx.begin() + n_test);
    train.insert(train.end(), idx.begin() + n_test, idx.end());
  }
  if (train.empty() || test.empty()) {
    throw DataError("split leaves an empty train or test set");
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {select_rows(d, train), select_rows(d, test)};
}

}  // namespace data
}  // namespace pplr
