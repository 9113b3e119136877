#pragma once

// Datasets, preprocessing, horizontal partitioning and the owner-side
// submission of shares to the computation parties.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pplr/matrix.hpp"
#include "pplr/sharing.hpp"
#include "pplr/transport.hpp"

namespace pplr {

/// X is n x m with the intercept column of ones at index 0.
struct Dataset {
  Matrix<double> X;
  std::vector<double> y;
  std::vector<std::string> columns;  // columns[0] == "intercept"

  std::size_t records() const noexcept { return X.rows(); }
  std::size_t features() const noexcept { return X.cols(); }
  Matrix<double> labels() const { return Matrix<double>::column(y); }
  /// Throws DataError on shape mismatch, non-binary labels or a missing
  /// intercept column.
  void validate() const;
};

namespace data {

/// Header row, comma separated, last column is the 0/1 label.
Dataset load_csv(const std::string& path);
Dataset parse_csv(std::istream& in, const std::string& source = "<stream>");

struct Scaler {
  std::vector<std::size_t> kept;       // original column index per output column >= 1
  std::vector<double> mean, stdev;     // per kept column
  std::vector<std::string> dropped;    // constant columns removed
  std::size_t original_features = 0;   // including the intercept

  Matrix<double> transform(const Matrix<double>& raw) const;
  /// Maps coefficients fitted on transformed data back to raw columns;
  /// dropped columns get 0.
  std::vector<double> inverse_beta(std::span<const double> beta) const;
};

struct Standardized {
  Dataset data;
  Scaler scaler;
  std::vector<std::string> warnings;
};

/// z-scores every non-intercept column (population standard deviation) and
/// drops constant ones.
Standardized standardize(const Dataset& d);

struct OwnerShard {
  std::size_t owner_id = 0;
  Matrix<double> X;
  std::vector<double> y;
};

/// Seeded shuffle, then contiguous near-equal blocks (first n % k owners get
/// one extra row).
std::vector<OwnerShard> partition_horizontal(const Dataset& d, std::size_t k_owners,
                                             std::uint64_t seed);
/// Inverse of partitioning: stacks shards in owner order.
Dataset concatenate(std::span<const OwnerShard> shards,
                    std::vector<std::string> columns = {});

/// One message per computation party carrying that party's shares of the
/// shard's X and y.
void owner_share_and_submit(const OwnerShard& shard, PartyId owner_endpoint,
                            std::size_t n_parties, const FixedPointConfig& cfg,
                            net::Transport& transport, Rng& rng);
void owner_share_and_submit_real(const OwnerShard& shard, PartyId owner_endpoint,
                                 std::size_t n_parties, double mask_bound,
                                 net::Transport& transport, Rng& rng);

template <class T>
struct PartyInput {
  Matrix<T> X;
  Matrix<T> y;
};

/// Receives one block from each owner and appends them in owner order.
/// Throws DataError when owners disagree on the column count.
template <class T>
PartyInput<T> receive_owner_blocks(net::Transport& transport, PartyId self,
                                   std::span<const PartyId> owners);

struct SyntheticSpec {
  std::size_t records = 200;
  std::size_t features = 5;  // excluding the intercept
  std::uint64_t seed = 1;
  double noise = 0.0;        // sd of Gaussian noise added to the logit
  double beta_scale = 1.0;   // true coefficients drawn from U[-scale, scale]
};

struct Synthetic {
  Dataset data;
  std::vector<double> true_beta;
};

Synthetic make_synthetic(const SyntheticSpec& spec);

struct Split {
  Dataset train;
  Dataset test;
};

/// Stratified by label, deterministic for a seed.
Split stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed);

/// Rows of d selected by index, in the given order.
Dataset select_rows(const Dataset& d, std::span<const std::size_t> rows);

}  // namespace data
}  // namespace pplr
