#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>

#include "pplr/error.hpp"
#include "pplr/sharing.hpp"

using namespace pplr;

namespace {

// Upper 1% point of chi-square with 15 degrees of freedom.
constexpr double kChi2Df15Alpha01 = 30.578;

double chi_square_16(const std::array<int, 16>& counts, int total) {
  const double expected = total / 16.0;
  double stat = 0.0;
  for (int c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

}  // namespace

TEST(FixedPoint, EncodeDefinitions) {
  FixedPointConfig cfg;
  EXPECT_EQ(encode_fixed(1.0, cfg), 65536u);
  EXPECT_EQ(encode_fixed(0.0, cfg), 0u);
  EXPECT_EQ(encode_fixed(-0.5, cfg), std::numeric_limits<std::uint64_t>::max() - 32768u + 1u);
}

TEST(FixedPoint, DecodeDefinitions) {
  FixedPointConfig cfg;
  EXPECT_DOUBLE_EQ(decode_fixed(65536u, cfg), 1.0);
  EXPECT_DOUBLE_EQ(decode_fixed(~std::uint64_t{0} - 32767u, cfg), -0.5);
  EXPECT_NEAR(decode_fixed(encode_fixed(3.14159, cfg), cfg), 3.14159, std::ldexp(1.0, -17));
}

TEST(FixedPoint, OverflowIsRejected) {
  FixedPointConfig cfg;
  const double bound = std::ldexp(1.0, 64 - 16 - 1);
  EXPECT_EQ(cfg.max_magnitude(), bound);
  EXPECT_THROW(encode_fixed(bound, cfg), OverflowError);
  EXPECT_THROW(encode_fixed(-bound, cfg), OverflowError);
  EXPECT_THROW(encode_fixed(std::nan(""), cfg), OverflowError);
  EXPECT_NO_THROW(encode_fixed(bound / 2, cfg));
}

TEST(FixedPoint, ConfigValidation) {
  EXPECT_THROW((FixedPointConfig{64, 0}.validate()), InvalidArgument);
  EXPECT_THROW((FixedPointConfig{64, 63}.validate()), InvalidArgument);
  EXPECT_THROW((FixedPointConfig{65, 16}.validate()), InvalidArgument);
  EXPECT_NO_THROW((FixedPointConfig{32, 8}.validate()));
}

TEST(FixedPoint, SmallRingWraps) {
  FixedPointConfig cfg{32, 8};
  EXPECT_EQ(encode_fixed(-1.0, cfg), (std::uint64_t{1} << 32) - 256u);
  EXPECT_DOUBLE_EQ(decode_fixed(encode_fixed(-1.0, cfg), cfg), -1.0);
}

TEST(FixedPoint, RoundTripOverRandomInputs) {
  FixedPointConfig cfg;
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform_real(rng, -1e6, 1e6);
    const auto shares = share_ring(encode_fixed(x, cfg), 3, rng, cfg);
    EXPECT_NEAR(decode_fixed(reconstruct_ring(shares, 3, cfg), cfg), x,
                std::ldexp(1.0, -17));
  }
}

TEST(Share, RingSharesSumToSecret) {
  Rng rng(1);
  const auto s = share_ring(7, 3, rng);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].value + s[1].value + s[2].value, 7u);
  for (std::uint32_t i = 0; i < 3; ++i) EXPECT_EQ(s[i].owner.index, i);
}

TEST(Share, ZeroSharingIsNegatedPair) {
  Rng rng(2);
  const auto s = share_ring(0, 2, rng);
  EXPECT_EQ(s[1].value, std::uint64_t{0} - s[0].value);
  const auto r = share_real(0.0, 2, rng, 30.0);
  EXPECT_DOUBLE_EQ(r[1].value, -r[0].value);
}

TEST(Share, ExplicitTripleReconstructs) {
  std::vector<RingShare> s = {{3, {0}}, {10, {1}}, {std::uint64_t(-6), {2}}};
  EXPECT_EQ(reconstruct_ring(s, 3), 7u);
}

TEST(Share, RejectsTooFewParties) {
  Rng rng(3);
  EXPECT_THROW(share_ring(1, 1, rng), InvalidArgument);
  EXPECT_THROW(share_real(1.0, 0, rng), InvalidArgument);
}

TEST(Share, ReconstructChecksCountAndDomain) {
  Rng rng(4);
  auto s = share_ring(5, 3, rng);
  s.pop_back();
  EXPECT_THROW(reconstruct_ring(s, 3), InvalidArgument);
  std::vector<AnyShare> mixed = {RingShare{1, {0}}, RealShare{1.0, {1}}};
  EXPECT_THROW(reconstruct(mixed, 2), InvalidArgument);
}

TEST(Share, RandomRoundTrips) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = rng();
    EXPECT_EQ(reconstruct_ring(share_ring(x, 3, rng), 3), x);
    const double r = uniform_real(rng, -100, 100);
    const auto rs = share_real(r, 3, rng);
    EXPECT_NEAR(reconstruct_real(rs, 3), r, 1e-9 * kDefaultRealMaskBound);
  }
}

TEST(Share, NegativeFixedPointComposition) {
  Rng rng(6);
  FixedPointConfig cfg;
  const auto s = share_ring(encode_fixed(-2.5, cfg), 3, rng, cfg);
  EXPECT_DOUBLE_EQ(decode_fixed(reconstruct_ring(s, 3, cfg), cfg), -2.5);
}

TEST(Share, RealMasksStayInBound) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto s = share_real(3.0, 4, rng, 30.0);
    for (int p = 0; p < 3; ++p) {
      EXPECT_LE(std::fabs(s[p].value), 30.0);
      EXPECT_EQ(s[p].mask_bound, 30.0);
    }
  }
}

TEST(Share, AdditiveHomomorphism) {
  Rng rng(8);
  FixedPointConfig cfg;
  const std::uint64_t a = encode_fixed(1.25, cfg), b = encode_fixed(-4.0, cfg);
  const auto sa = share_ring(a, 3, rng, cfg), sb = share_ring(b, 3, rng, cfg);
  std::vector<RingShare> sum;
  for (int i = 0; i < 3; ++i) sum.push_back({sa[i].value + sb[i].value, sa[i].owner});
  EXPECT_DOUBLE_EQ(decode_fixed(reconstruct_ring(sum, 3, cfg), cfg), -2.75);
}

TEST(Share, MatrixRoundTripBothDomains) {
  Rng rng(9);
  FixedPointConfig cfg;
  Matrix<double> m(3, 4);
  for (auto& v : m.values()) v = uniform_real(rng, -10, 10);
  const auto ring = share_matrix(encode_fixed(m, cfg), 3, rng, cfg);
  std::vector<Matrix<std::uint64_t>> parts;
  for (const auto& s : ring) parts.push_back(s.values);
  const auto back = decode_fixed(reconstruct_matrix(parts, cfg), cfg);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(back[i], m[i], std::ldexp(1.0, -17));

  const auto real = share_matrix(m, 2, rng, 64.0);
  std::vector<Matrix<double>> rparts;
  for (const auto& s : real) rparts.push_back(s.values);
  const auto rback = reconstruct_matrix(rparts);
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(rback[i], m[i], 1e-12);
}

// Every single share of a fixed secret must look uniform.
TEST(Share, SingleRingShareIsUniform) {
  Rng rng(12345);
  constexpr int kTrials = 10000;
  for (std::size_t party = 0; party < 3; ++party) {
    std::array<int, 16> high{}, low{};
    for (int t = 0; t < kTrials; ++t) {
      const auto s = share_ring(42, 3, rng);
      ++high[s[party].value >> 60];
      ++low[s[party].value & 15];
    }
    EXPECT_LT(chi_square_16(high, kTrials), kChi2Df15Alpha01) << "party " << party;
    EXPECT_LT(chi_square_16(low, kTrials), kChi2Df15Alpha01) << "party " << party;
  }
}

TEST(Share, SeededSharingReplays) {
  Rng a(77), b(77);
  EXPECT_EQ(share_ring(99, 3, a)[0].value, share_ring(99, 3, b)[0].value);
}
