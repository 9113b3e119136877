#include <gtest/gtest.h>

#include <cmath>

#include "pplr/error.hpp"
#include "pplr/sigmoid.hpp"
#include "session.hpp"

using namespace pplr;
using namespace pplr::sigmoid;
using mpc::PartyRuntime;
using mpc::RealMat;
using mpc::RingMat;
using test::run_session;

namespace {

double max_grid_error(int degree) {
  double worst = 0.0;
  for (int i = 0; i <= 1600; ++i) {
    const double z = -8.0 + i * 0.01;
    worst = std::max(worst, std::fabs(sigmoid_poly_plain(z, degree) - sigmoid_plain(z)));
  }
  return worst;
}

RealMat grid(double lo, double hi, std::size_t n) {
  RealMat z(1, n);
  for (std::size_t i = 0; i < n; ++i) z[i] = lo + (hi - lo) * i / (n - 1);
  return z;
}

}  // namespace

TEST(Plain, Logistic) {
  EXPECT_DOUBLE_EQ(sigmoid_plain(0.0), 0.5);
  EXPECT_NEAR(sigmoid_plain(2.0), 0.8807970779778823, 1e-15);
  EXPECT_NEAR(sigmoid_plain(-2.0), 1.0 - 0.8807970779778823, 1e-15);
  EXPECT_GT(sigmoid_plain(-800.0), -1e-300);
  EXPECT_DOUBLE_EQ(sigmoid_plain(800.0), 1.0);
}

TEST(Poly, SymmetryAndCentre) {
  for (int degree : {3, 5, 7}) {
    EXPECT_DOUBLE_EQ(sigmoid_poly_plain(0.0, degree), 0.5);
    for (int i = 0; i <= 800; ++i) {
      const double z = i * 0.01;
      const double s = sigmoid_poly_plain(z, degree) + sigmoid_poly_plain(-z, degree);
      EXPECT_LE(std::fabs(s - 1.0), 2 * std::numeric_limits<double>::epsilon())
          << "degree " << degree << " z " << z;
    }
  }
}

TEST(Poly, MonotoneNearCentre) {
  // None of the fits is monotone over all of [-8, 8]; the increasing stretch
  // around 0 is about +-5.6, +-4.4 and +-4.0 for degrees 3, 5 and 7.
  for (int degree : {3, 5, 7}) {
    double prev = sigmoid_poly_plain(-4.0, degree);
    for (int i = 1; i <= 800; ++i) {
      const double cur = sigmoid_poly_plain(-4.0 + i * 0.01, degree);
      EXPECT_GT(cur, prev) << "degree " << degree;
      prev = cur;
    }
  }
}

TEST(Poly, CubicTurnsAtClosedFormPoint) {
  const double turn = 8.0 * std::sqrt(1.20096 / (3 * 0.81562));
  EXPECT_GT(sigmoid_poly_plain(turn, 3), sigmoid_poly_plain(turn - 1e-3, 3));
  EXPECT_GT(sigmoid_poly_plain(turn, 3), sigmoid_poly_plain(turn + 1e-3, 3));
  EXPECT_NEAR(sigmoid_poly_plain(8.0, 3), 0.88534, 1e-12);
}

TEST(Poly, HigherDegreeFitsBetter) {
  const double e3 = max_grid_error(3), e5 = max_grid_error(5), e7 = max_grid_error(7);
  EXPECT_LT(e7, e5);
  EXPECT_LT(e5, e3);
}

TEST(Poly, UnsupportedDegree) {
  EXPECT_THROW(sigmoid_poly_plain(0.0, 4), InvalidArgument);
  EXPECT_THROW(poly_multiplications(9), InvalidArgument);
  EXPECT_THROW(SigmoidMethod::poly(1).validate(), InvalidArgument);
  EXPECT_NO_THROW(SigmoidMethod::exact().validate());
}

TEST(Poly, MultiplicationCounts) {
  EXPECT_EQ(poly_multiplications(3), 2);
  EXPECT_EQ(poly_multiplications(5), 3);
  EXPECT_EQ(poly_multiplications(7), 4);
  for (int degree : {3, 5, 7}) {
    const auto s = test::ring_shares(RealMat(1, 4, 1.0), 2, 1);
    const auto r = run_session(mpc::SecuritySetting::dishonest_majority(), [&](PartyRuntime& rt) {
      (void)sigmoid_poly_shared(rt, s[rt.self().index], degree);
    });
    EXPECT_EQ(r.triples, static_cast<std::uint64_t>(poly_multiplications(degree)));
  }
}

TEST(Poly, SharedMatchesPlain) {
  const RealMat z = grid(-8.0, 8.0, 161);
  for (const auto& setting : test::both_settings()) {
    for (int degree : {3, 5, 7}) {
      const auto s = test::ring_shares(z, setting.n_parties, 2);
      std::vector<RingMat> out(setting.n_parties);
      run_session(setting, [&](PartyRuntime& rt) {
        out[rt.self().index] = sigmoid_poly_shared(rt, s[rt.self().index], degree);
      });
      const auto got = test::open_ring(out);
      for (std::size_t i = 0; i < z.size(); ++i) {
        EXPECT_NEAR(got[i], sigmoid_poly_plain(z[i], degree), std::ldexp(1.0, -16 + 4))
            << "degree " << degree << " z " << z[i];
      }
    }
  }
}

TEST(Poly, RealSharesMatchPlain) {
  const RealMat z = grid(-8.0, 8.0, 33);
  const auto s = test::real_shares(z, 3, 3);
  std::vector<RealMat> out(3);
  run_session(mpc::SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = sigmoid_poly_shared(rt, s[rt.self().index], 5);
  });
  const auto got = reconstruct_matrix(std::span<const RealMat>(out));
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_NEAR(got[i], sigmoid_poly_plain(z[i], 5), 1e-9);
}

TEST(Exact, ConfigDerivedValues) {
  ExactSigmoidConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.inversion_constant(), 1.0 + std::exp(16.0));
  EXPECT_EQ(cfg.iterations(), 30);
  cfg.z_max = 2.0;
  EXPECT_EQ(cfg.iterations(), 24);
  cfg.exp_mask = 0.0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
}

TEST(Exact, MatchesLogisticOnShares) {
  const RealMat z = grid(-5.0, 5.0, 41);
  for (const auto& setting : test::both_settings()) {
    const auto s = test::real_shares(z, setting.n_parties, 4);
    std::vector<RealMat> out(setting.n_parties);
    run_session(setting, [&](PartyRuntime& rt) {
      out[rt.self().index] = sigmoid_exact_shared(rt, s[rt.self().index]);
    });
    const auto got = reconstruct_matrix(std::span<const RealMat>(out));
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double want = sigmoid_plain(z[i]);
      EXPECT_LE(std::fabs(got[i] - want) / want, 1e-4) << "z " << z[i];
    }
  }
}

TEST(Exact, SpecificValues) {
  const RealMat z(1, 2, std::vector<double>{0.0, 2.0});
  const auto s = test::real_shares(z, 3, 5);
  std::vector<RealMat> out(3);
  run_session(mpc::SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = sigmoid_exact_shared(rt, s[rt.self().index]);
  });
  const auto got = reconstruct_matrix(std::span<const RealMat>(out));
  EXPECT_NEAR(got[0], 0.5, 1e-6);
  EXPECT_NEAR(got[1], 0.880797, 1e-6);
}

TEST(Exact, MessageCountIndependentOfLength) {
  for (const auto& setting : test::both_settings()) {
    for (std::size_t len : {1u, 10u}) {
      const auto s = test::real_shares(grid(-1.0, 1.0, len == 1 ? 2 : len), setting.n_parties, 6);
      std::vector<RealMat> in;
      for (const auto& m : s) {
        RealMat cut(1, len);
        for (std::size_t i = 0; i < len; ++i) cut[i] = m[i];
        in.push_back(cut);
      }
      const auto r = run_session(setting, [&](PartyRuntime& rt) {
        (void)sigmoid_exact_shared(rt, in[rt.self().index]);
      });
      EXPECT_EQ(r.stats.messages_sent, exact_sigmoid_messages(setting, {}))
          << setting.n_parties << " parties, length " << len;
    }
  }
}

TEST(Exact, ExponentOutOfRangeIsReported) {
  const auto s = test::real_shares(RealMat(1, 1, -800.0), 3, 7);
  EXPECT_THROW(run_session(mpc::SecuritySetting::honest_majority(),
                           [&](PartyRuntime& rt) {
                             (void)sigmoid_exact_shared(rt, s[rt.self().index]);
                           }),
               ProtocolError);
}

TEST(Poly, RingOverflowOnEncode) {
  EXPECT_THROW(test::ring_shares(RealMat(1, 1, 1e15), 2, 8), OverflowError);
}
