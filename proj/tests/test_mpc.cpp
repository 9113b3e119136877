#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "pplr/error.hpp"
#include "pplr/mpc.hpp"
#include "session.hpp"

using namespace pplr;
using mpc::PartyRuntime;
using mpc::ProductKind;
using mpc::RealMat;
using mpc::RevealKind;
using mpc::RingMat;
using mpc::SecuritySetting;
using test::run_session;

namespace {

constexpr double kChi2Df15Alpha01 = 30.578;
const double kUlp = std::ldexp(1.0, -16);

double chi_square_top_nibble(std::span<const std::uint64_t> v) {
  std::array<int, 16> counts{};
  for (auto x : v) ++counts[x >> 60];
  const double expected = static_cast<double>(v.size()) / 16.0;
  double stat = 0.0;
  for (int c : counts) stat += (c - expected) * (c - expected) / expected;
  return stat;
}

RingMat scalar(std::uint64_t v) { return RingMat(1, 1, v); }

std::string setting_name(const SecuritySetting& s) {
  return s.n_parties == 3 ? "3P" : "2P";
}

}  // namespace

// --- settings -------------------------------------------------------------

TEST(Setting, Validation) {
  EXPECT_NO_THROW(SecuritySetting::honest_majority().validate());
  EXPECT_NO_THROW(SecuritySetting::dishonest_majority().validate());
  SecuritySetting bad3{mpc::Setting::kHonestMajority3P, 2, 1};
  EXPECT_THROW(bad3.validate(), InvalidArgument);
  SecuritySetting no_majority{mpc::Setting::kHonestMajority3P, 3, 2};
  EXPECT_THROW(no_majority.validate(), InvalidArgument);
  SecuritySetting bad2{mpc::Setting::kDishonestMajority2P, 3, 1};
  EXPECT_THROW(bad2.validate(), InvalidArgument);
}

// --- local operations -----------------------------------------------------

TEST(Add, SharesOfThreePlusFourWithoutMessages) {
  const auto xs = test::ring_shares(RealMat(1, 1, 3.0), 3, 1);
  const auto ys = test::ring_shares(RealMat(1, 1, 4.0), 3, 2);
  std::vector<RingMat> out(3);
  const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    out[p] = rt.add(xs[p], ys[p]);
  });
  EXPECT_DOUBLE_EQ(test::open_ring(out)[0], 7.0);
  EXPECT_EQ(r.stats.messages_sent, 0u);
}

TEST(Add, ZeroIsIdentityAndMatricesAddElementwise) {
  const RealMat a(2, 2, std::vector<double>{1, 2, 3, 4});
  const RealMat b(2, 2, std::vector<double>{4, 3, 2, 1});
  const auto as = test::ring_shares(a, 2, 3), bs = test::ring_shares(b, 2, 4);
  const auto zs = test::ring_shares(RealMat(2, 2), 2, 5);
  std::vector<RingMat> sum(2), same(2);
  run_session(SecuritySetting::dishonest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    sum[p] = rt.add(as[p], bs[p]);
    same[p] = rt.add(as[p], zs[p]);
  });
  EXPECT_EQ(test::open_ring(sum), RealMat(2, 2, 5.0));
  EXPECT_EQ(test::open_ring(same), a);
}

TEST(Add, ShapeMismatchIsRejected) {
  net::Transport t(3);
  PartyRuntime rt(PartyId{0}, SecuritySetting::honest_majority(), t);
  EXPECT_THROW(rt.add(RingMat(1, 2), RingMat(2, 1)), InvalidArgument);
}

TEST(Local, PublicConstantsAndScaling) {
  const RealMat v(1, 4, std::vector<double>{1.5, -2.0, 100.0, 0.001});
  for (const auto& setting : test::both_settings()) {
    const auto s = test::ring_shares(v, setting.n_parties, 6);
    std::vector<RingMat> plus(setting.n_parties), scaled(setting.n_parties),
        tiny(setting.n_parties);
    run_session(setting, [&](PartyRuntime& rt) {
      const auto p = rt.self().index;
      plus[p] = rt.add_constant(s[p], 0.25);
      scaled[p] = rt.scale_public(s[p], -3.5);
      tiny[p] = rt.scale_public(s[p], 1.0 / 768.0);
    });
    const auto a = test::open_ring(plus), b = test::open_ring(scaled), c = test::open_ring(tiny);
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_NEAR(a[i], v[i] + 0.25, kUlp) << setting_name(setting);
      EXPECT_NEAR(b[i], v[i] * -3.5, 8 * kUlp) << setting_name(setting);
      EXPECT_NEAR(c[i], v[i] / 768.0, 2 * kUlp) << setting_name(setting);
    }
  }
}

// --- resharing ------------------------------------------------------------

TEST(Reshare, PreservesSecrets) {
  Rng rng(8);
  RealMat secrets(1, 100);
  for (auto& v : secrets.values()) v = uniform_real(rng, -1000, 1000);
  const auto s = test::ring_shares(secrets, 3, 9);
  std::vector<RingMat> out(3);
  const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = rt.reshare(s[rt.self().index]);
  });
  EXPECT_EQ(test::open_ring(out), test::open_ring(s));
  EXPECT_EQ(r.stats.messages_sent, 3u);
}

TEST(Reshare, ZeroStaysZero) {
  const auto s = test::ring_shares(RealMat(1, 8), 3, 10);
  std::vector<RingMat> out(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = rt.reshare(s[rt.self().index]);
  });
  EXPECT_EQ(reconstruct_matrix(std::span<const RingMat>(out)), RingMat(1, 8));
}

TEST(Reshare, NewShareOfFixedSecretIsUniform) {
  constexpr std::size_t kN = 10000;
  // Every party starts from the same deterministic shares of 42.
  std::vector<RingMat> in = {RingMat(1, kN, 42), RingMat(1, kN, 0), RingMat(1, kN, 0)};
  std::vector<RingMat> out(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = rt.reshare(in[rt.self().index]);
  });
  for (std::size_t p = 0; p < 3; ++p) {
    EXPECT_LT(chi_square_top_nibble(out[p].values()), kChi2Df15Alpha01) << "party " << p;
  }
}

TEST(Reshare, RealSharesStayBounded) {
  // Shares far larger than the mask come back small on parties 0 and 1.
  const RealMat secret(1, 50, 2.5);
  std::vector<RealMat> in = {RealMat(1, 50, 1e9 + 2.5), RealMat(1, 50, -2e9),
                             RealMat(1, 50, 1e9)};
  std::vector<RealMat> out(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = rt.reshare(in[rt.self().index]);
  });
  const auto sum = reconstruct_matrix(std::span<const RealMat>(out));
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_NEAR(sum[i], 2.5, 1e-6);
    EXPECT_LE(std::fabs(out[0][i]), 2 * mpc::kProtocolRealMask);
    EXPECT_LE(std::fabs(out[1][i]), mpc::kProtocolRealMask);
  }
}

TEST(Reshare, RejectedInTwoPartySetting) {
  net::Transport t(2);
  PartyRuntime rt(PartyId{0}, SecuritySetting::dishonest_majority(), t);
  EXPECT_THROW(rt.reshare(RingMat(1, 1)), InvalidArgument);
}

// --- 3-party multiplication ----------------------------------------------

TEST(Mul3, ExplicitSharesGiveNinety) {
  std::vector<RingMat> x = {scalar(1), scalar(2), scalar(3)};
  std::vector<RingMat> y = {scalar(4), scalar(5), scalar(6)};
  std::vector<RingMat> z(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    z[p] = rt.mul_raw(x[p], y[p], ProductKind::kHadamard);
  });
  EXPECT_EQ(z[0][0] + z[1][0] + z[2][0], 90u);
}

TEST(Mul3, ZeroFactorGivesZero) {
  Rng rng(11);
  const std::uint64_t r1 = rng(), r2 = rng();
  std::vector<RingMat> x = {scalar(r1), scalar(r2), scalar(0 - r1 - r2)};
  std::vector<RingMat> y = {scalar(rng()), scalar(rng()), scalar(rng())};
  std::vector<RingMat> z(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    z[p] = rt.mul_raw(x[p], y[p], ProductKind::kHadamard);
  });
  EXPECT_EQ(z[0][0] + z[1][0] + z[2][0], 0u);
}

TEST(Mul3, FixedPointProduct) {
  const auto x = test::ring_shares(RealMat(1, 1, 1.5), 3, 12);
  const auto y = test::ring_shares(RealMat(1, 1, 2.0), 3, 13);
  std::vector<RingMat> z(3);
  run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    z[p] = rt.hadamard(x[p], y[p]);
  });
  EXPECT_NEAR(test::open_ring(z)[0], 3.0, kUlp);
}

TEST(Mul3, MessageCountIsConstantPerInvocation) {
  for (std::size_t size : {1u, 7u, 40u}) {
    const auto x = test::ring_shares(RealMat(1, size, 1.0), 3, 14);
    std::vector<std::uint64_t> per_call;
    const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
      const auto p = rt.self().index;
      (void)rt.mul_raw(x[p], x[p], ProductKind::kHadamard);
      (void)rt.mul_raw(x[p], x[p], ProductKind::kHadamard);
    });
    EXPECT_EQ(r.stats.messages_sent, 30u) << "size " << size;
    for (std::uint32_t p = 0; p < 3; ++p) EXPECT_EQ(r.stats.messages_from(p), 10u);
  }
}

TEST(Mul3, RejectsWrongPartyCount) {
  net::Transport t(2);
  EXPECT_THROW(PartyRuntime(PartyId{0}, SecuritySetting{mpc::Setting::kHonestMajority3P, 2, 1}, t),
               InvalidArgument);
}

// --- dealer ----------------------------------------------------------------

TEST(Dealer, TriplesSatisfyProductProperty) {
  mpc::Dealer d(21);
  const auto t = mpc::dealer_gen_triples(d, 1000, 2);
  ASSERT_EQ(t.size(), 2u);
  ASSERT_EQ(t[0].size(), 1000u);
  for (std::size_t k = 0; k < 1000; ++k) {
    const std::uint64_t a = t[0][k].a.value + t[1][k].a.value;
    const std::uint64_t b = t[0][k].b.value + t[1][k].b.value;
    const std::uint64_t c = t[0][k].c.value + t[1][k].c.value;
    EXPECT_EQ(a * b, c);
  }
  EXPECT_EQ(d.triples_issued(), 1000u);
}

TEST(Dealer, SameSeedSameTriples) {
  mpc::Dealer d1(5), d2(5);
  const auto a = d1.gen_triples(10, 3), b = d2.gen_triples(10, 3);
  for (std::size_t p = 0; p < 3; ++p) {
    for (std::size_t k = 0; k < 10; ++k) {
      EXPECT_EQ(a[p][k].a.value, b[p][k].a.value);
      EXPECT_EQ(a[p][k].c.value, b[p][k].c.value);
    }
  }
}

TEST(Dealer, SealedDealerIssuesNothing) {
  mpc::Dealer d(6);
  d.seal();
  EXPECT_THROW(d.gen_triples(1, 2), ProtocolError);
  EXPECT_THROW(d.provision({mpc::TripleSpec{}}, 2), ProtocolError);
}

TEST(Dealer, MatrixTriplesSatisfyProductProperty) {
  mpc::Dealer d(7);
  std::vector<mpc::TripleSpec> plan = {
      {false, ProductKind::kMatmul, 3, 4, 4, 2},
      {true, ProductKind::kHadamard, 2, 2, 2, 2},
  };
  auto stores = d.provision(plan, 2);
  auto r0 = stores[0].take<std::uint64_t>(plan[0]);
  auto r1 = stores[1].take<std::uint64_t>(plan[0]);
  const RingMat a = r0.a + r1.a, b = r0.b + r1.b, c = r0.c + r1.c;
  EXPECT_EQ(matmul(a, b), c);
  auto f0 = stores[0].take<double>(plan[1]);
  auto f1 = stores[1].take<double>(plan[1]);
  const RealMat fc = hadamard(f0.a + f1.a, f0.b + f1.b);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR((f0.c + f1.c)[i], fc[i], 1e-9);
  EXPECT_THROW(stores[0].take<std::uint64_t>(plan[0]), ProtocolError);
}

TEST(TripleStore, MismatchedShapeIsRejected) {
  mpc::Dealer d(8);
  auto stores = d.provision({{false, ProductKind::kHadamard, 1, 2, 1, 2}}, 2);
  EXPECT_THROW(stores[0].take<std::uint64_t>({false, ProductKind::kHadamard, 2, 1, 2, 1}),
               ProtocolError);
}

// --- Beaver multiplication --------------------------------------------------

TEST(Beaver, HandExecutedExample) {
  // x = 3, y = 4, (a, b, c) = (1, 2, 2), all held by party 0: d = e = 2 and
  // w = c + d b + a e + d e = 2 + 4 + 2 + 4 = 12.
  std::vector<mpc::BeaverTriple> triples = {
      {{1, {0}}, {2, {0}}, {2, {0}}, false},
      {{0, {1}}, {0, {1}}, {0, {1}}, false},
  };
  std::vector<RingShare> x = {{3, {0}}, {0, {1}}}, y = {{4, {0}}, {0, {1}}};
  std::vector<RingShare> w(2);
  net::Transport t(2);
  std::vector<std::pair<PartyId, std::function<void()>>> bodies;
  for (std::uint32_t p = 0; p < 2; ++p) {
    bodies.emplace_back(PartyId{p}, [&, p] {
      PartyRuntime rt(PartyId{p}, SecuritySetting::dishonest_majority(), t);
      w[p] = rt.mul_beaver(x[p], y[p], triples[p]);
    });
  }
  t.run(std::move(bodies));
  EXPECT_EQ(w[0].value + w[1].value, 12u);
  EXPECT_EQ(w[0].value, 12u);
  EXPECT_TRUE(triples[0].consumed);
  EXPECT_EQ(t.snapshot_stats().messages_from(0), 2u);
  EXPECT_EQ(t.snapshot_stats().messages_from(1), 2u);
}

TEST(Beaver, TripleReuseIsRejected) {
  mpc::Dealer d(9);
  auto triples = d.gen_triples(1, 2);
  triples[0][0].consumed = true;
  net::Transport t(2);
  PartyRuntime rt(PartyId{0}, SecuritySetting::dishonest_majority(), t);
  EXPECT_THROW(rt.mul_beaver(RingShare{1, {0}}, RingShare{1, {0}}, triples[0][0]),
               ProtocolError);
}

TEST(Beaver, TimesZeroIsZero) {
  Rng rng(10);
  mpc::Dealer d(10);
  auto triples = d.gen_triples(50, 2);
  std::vector<std::uint64_t> results;
  for (std::size_t k = 0; k < 50; ++k) {
    const std::uint64_t x0 = rng(), x1 = rng(), z0 = rng();
    std::vector<RingShare> x = {{x0, {0}}, {x1, {1}}};
    std::vector<RingShare> y = {{z0, {0}}, {0 - z0, {1}}};
    std::vector<RingShare> w(2);
    net::Transport t(2);
    std::vector<std::pair<PartyId, std::function<void()>>> bodies;
    for (std::uint32_t p = 0; p < 2; ++p) {
      bodies.emplace_back(PartyId{p}, [&, p] {
        PartyRuntime rt(PartyId{p}, SecuritySetting::dishonest_majority(), t);
        w[p] = rt.mul_beaver(x[p], y[p], triples[p][k]);
      });
    }
    t.run(std::move(bodies));
    EXPECT_EQ(w[0].value + w[1].value, 0u);
  }
}

TEST(Beaver, OpenedMaskIsUniform) {
  // d = x - a is what the parties open; with x fixed it must look uniform.
  mpc::Dealer d(11);
  const auto t = d.gen_triples(10000, 2);
  const std::uint64_t x = 123456789;
  std::vector<std::uint64_t> opened;
  for (std::size_t k = 0; k < 10000; ++k) {
    opened.push_back(x - (t[0][k].a.value + t[1][k].a.value));
  }
  EXPECT_LT(chi_square_top_nibble(opened), kChi2Df15Alpha01);
}

TEST(Beaver, OnlineCostIsTwoMessagesPerParty) {
  const auto x = test::ring_shares(RealMat(3, 3, 0.5), 2, 12);
  const auto r = run_session(SecuritySetting::dishonest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    (void)rt.mul_raw(x[p], x[p], ProductKind::kMatmul);
  });
  EXPECT_EQ(r.stats.messages_from(0), 2u);
  EXPECT_EQ(r.stats.messages_from(1), 2u);
  EXPECT_EQ(r.triples, 1u);
  ASSERT_EQ(r.reveals.size(), 4u);
  for (const auto& e : r.reveals) EXPECT_EQ(e.kind, RevealKind::kBeaverMask);
}

TEST(Beaver, MissingTripleStoreIsProtocolError) {
  net::Transport t(2);
  PartyRuntime rt(PartyId{0}, SecuritySetting::dishonest_majority(), t);
  EXPECT_THROW(rt.mul_raw(RingMat(1, 1), RingMat(1, 1), ProductKind::kHadamard),
               ProtocolError);
}

TEST(Planner, RecordsOneTriplePerProduct) {
  auto planner = PartyRuntime::planner(SecuritySetting::dishonest_majority(), {});
  (void)planner.hadamard(RingMat(2, 3), RingMat(2, 3));
  (void)planner.matmul(RealMat(2, 3), RealMat(3, 5));
  const auto& plan = planner.planned_triples();
  ASSERT_EQ(plan.size(), 2u);
  EXPECT_EQ(plan[0], (mpc::TripleSpec{false, ProductKind::kHadamard, 2, 3, 2, 3}));
  EXPECT_EQ(plan[1], (mpc::TripleSpec{true, ProductKind::kMatmul, 2, 3, 3, 5}));
}

// --- truncation -----------------------------------------------------------

TEST(Truncate, DoubleScaleOneBecomesOne) {
  FixedPointConfig cfg;
  const RingMat one2f(1, 1, std::uint64_t{1} << 32);
  for (const auto& setting : test::both_settings()) {
    Rng rng(13);
    std::vector<RingMat> s;
    for (auto& m : share_matrix(one2f, setting.n_parties, rng, cfg)) s.push_back(m.values);
    const auto zs = test::ring_shares(RealMat(1, 1), setting.n_parties, 14);
    std::vector<RingMat> out(setting.n_parties), zero(setting.n_parties);
    run_session(setting, [&](PartyRuntime& rt) {
      out[rt.self().index] = rt.truncate(s[rt.self().index]);
      zero[rt.self().index] = rt.truncate(zs[rt.self().index]);
    });
    EXPECT_NEAR(test::open_ring(out)[0], 1.0, kUlp) << setting_name(setting);
    EXPECT_NEAR(test::open_ring(zero)[0], 0.0, kUlp) << setting_name(setting);
  }
}

TEST(Truncate, ProductPipelineMatchesPlaintext) {
  Rng rng(15);
  RealMat a(1, 1000), b(1, 1000);
  for (auto& v : a.values()) v = uniform_real(rng, -100, 100);
  for (auto& v : b.values()) v = uniform_real(rng, -100, 100);
  for (const auto& setting : test::both_settings()) {
    const auto as = test::ring_shares(a, setting.n_parties, 16);
    const auto bs = test::ring_shares(b, setting.n_parties, 17);
    std::vector<RingMat> out(setting.n_parties);
    run_session(setting, [&](PartyRuntime& rt) {
      const auto p = rt.self().index;
      out[p] = rt.hadamard(as[p], bs[p]);
    });
    const auto z = test::open_ring(out);
    for (std::size_t i = 0; i < 1000; ++i) {
      // Encoding both inputs already perturbs the product by up to
      // (|a| + |b|) / 2^17.
      const double encode_err = (std::fabs(a[i]) + std::fabs(b[i])) * std::ldexp(1.0, -17);
      EXPECT_NEAR(z[i], a[i] * b[i], 2 * kUlp + encode_err) << setting_name(setting);
    }
  }
}

TEST(Truncate, ThreePartyCostsTwoMessages) {
  const auto s = test::ring_shares(RealMat(2, 2, 1.0), 3, 18);
  const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    (void)rt.truncate(s[rt.self().index]);
  });
  EXPECT_EQ(r.stats.messages_sent, 2u);
}

TEST(Truncate, BitCountIsChecked) {
  net::Transport t(2);
  PartyRuntime rt(PartyId{0}, SecuritySetting::dishonest_majority(), t);
  EXPECT_THROW(rt.truncate(RingMat(1, 1), 0), InvalidArgument);
  EXPECT_THROW(rt.truncate(RingMat(1, 1), 63), InvalidArgument);
}

// --- reveal -----------------------------------------------------------------

TEST(Reveal, EveryPartyLearnsTheValue) {
  for (const auto& setting : test::both_settings()) {
    const std::size_t n = setting.n_parties;
    const auto s = test::ring_shares(RealMat(1, 1, 42.0), n, 19);
    const auto t = test::ring_shares(RealMat(1, 1, -2.0), n, 20);
    const RealMat m(2, 3, std::vector<double>{1, -2, 3, -4, 5, -6});
    const auto ms = test::ring_shares(m, n, 21);
    std::vector<double> seen(n), sum(n);
    std::vector<RealMat> mat(n);
    const auto r = run_session(setting, [&](PartyRuntime& rt) {
      const auto p = rt.self().index;
      FixedPointConfig cfg;
      seen[p] = decode_fixed(rt.reveal(s[p], RevealKind::kGeneric)[0], cfg);
      sum[p] = decode_fixed(rt.reveal(rt.add(s[p], t[p]), RevealKind::kGeneric)[0], cfg);
      mat[p] = decode_fixed(rt.reveal(ms[p], RevealKind::kGeneric), cfg);
    });
    for (std::size_t p = 0; p < n; ++p) {
      EXPECT_DOUBLE_EQ(seen[p], 42.0);
      EXPECT_DOUBLE_EQ(sum[p], 40.0);
      EXPECT_EQ(mat[p], m);
    }
    EXPECT_EQ(r.stats.messages_sent, 3 * n * (n - 1));
    EXPECT_EQ(r.reveals.size(), 3 * n);
  }
}

// --- private inputs and concentration ---------------------------------------

TEST(SharePrivate, OwnerInputReconstructs) {
  const RealMat secret(2, 2, std::vector<double>{1.25, -3, 7, 0.5});
  std::vector<RingMat> out(3);
  const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    const auto p = rt.self().index;
    const RingMat mine = p == 1 ? encode_fixed(secret, rt.fixed_point()) : RingMat();
    out[p] = rt.share_private(PartyId{1}, mine, 2, 2);
  });
  EXPECT_EQ(test::open_ring(out), secret);
  EXPECT_EQ(r.stats.messages_sent, 2u);
}

TEST(Concentrate, LeavesSmallMasksElsewhere) {
  const RealMat z(1, 20, 12.0);
  const auto s = test::real_shares(z, 3, 22, 1000.0);
  std::vector<RealMat> out(3);
  const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
    out[rt.self().index] = rt.concentrate(PartyId{0}, s[rt.self().index], 4.0);
  });
  const auto sum = reconstruct_matrix(std::span<const RealMat>(out));
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(sum[i], 12.0, 1e-9);
    EXPECT_LE(std::fabs(out[1][i]), 4.0);
    EXPECT_LE(std::fabs(out[2][i]), 4.0);
  }
  EXPECT_EQ(r.stats.messages_sent, 2u);
}

// --- oracle equivalence -------------------------------------------------------

TEST(Circuit, RandomCircuitsMatchPlaintext) {
  // Chains of depth 10 mixing additions with products against fresh inputs
  // bounded by 1.5 so values stay inside the ring.
  Rng rng(23);
  for (const auto& setting : test::both_settings()) {
    for (int trial = 0; trial < 20; ++trial) {
      constexpr int kDepth = 10;
      RealMat start(1, 1, uniform_real(rng, -100, 100));
      std::vector<int> ops;
      std::vector<RealMat> operands;
      double plain = start[0];
      for (int k = 0; k < kDepth; ++k) {
        const int op = static_cast<int>(rng() % 3);
        const double v = op == 2 ? uniform_real(rng, -1.5, 1.5) : uniform_real(rng, -100, 100);
        ops.push_back(op);
        operands.emplace_back(1, 1, v);
        plain = op == 0 ? plain + v : op == 1 ? plain - v : plain * v;
      }
      const std::size_t n = setting.n_parties;
      const auto s0 = test::ring_shares(start, n, 100 + trial);
      std::vector<std::vector<RingMat>> so;
      for (int k = 0; k < kDepth; ++k) so.push_back(test::ring_shares(operands[k], n, 200 + k));
      std::vector<RingMat> out(n);
      run_session(setting, [&](PartyRuntime& rt) {
        const auto p = rt.self().index;
        RingMat acc = s0[p];
        for (int k = 0; k < kDepth; ++k) {
          acc = ops[k] == 0   ? rt.add(acc, so[k][p])
                : ops[k] == 1 ? rt.sub(acc, so[k][p])
                              : rt.hadamard(acc, so[k][p]);
        }
        out[p] = acc;
      });
      EXPECT_NEAR(test::open_ring(out)[0], plain, std::ldexp(1.0, -16 + kDepth))
          << setting_name(setting) << " trial " << trial;
    }
  }
}

TEST(Circuit, RealDomainMatchesPlaintext) {
  Rng rng(24);
  RealMat a(4, 4), b(4, 4);
  for (auto& v : a.values()) v = uniform_real(rng, -10, 10);
  for (auto& v : b.values()) v = uniform_real(rng, -10, 10);
  const RealMat want = matmul(hadamard(a, b), b) + a;
  for (const auto& setting : test::both_settings()) {
    const auto as = test::real_shares(a, setting.n_parties, 25);
    const auto bs = test::real_shares(b, setting.n_parties, 26);
    std::vector<RealMat> out(setting.n_parties);
    run_session(setting, [&](PartyRuntime& rt) {
      const auto p = rt.self().index;
      out[p] = rt.add(rt.matmul(rt.hadamard(as[p], bs[p]), bs[p]), as[p]);
    });
    const auto got = reconstruct_matrix(std::span<const RealMat>(out));
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-6 * std::max(1.0, std::fabs(want[i])))
          << setting_name(setting);
    }
  }
}

TEST(Circuit, SameSeedSameTranscript) {
  const auto x = test::ring_shares(RealMat(2, 2, 0.75), 3, 27);
  auto once = [&] {
    std::vector<RingMat> out(3);
    const auto r = run_session(SecuritySetting::honest_majority(), [&](PartyRuntime& rt) {
      out[rt.self().index] = rt.hadamard(x[rt.self().index], x[rt.self().index]);
    });
    return std::make_pair(out, r.stats);
  };
  const auto a = once(), b = once();
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
}
