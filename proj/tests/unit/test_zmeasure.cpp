#include <gtest/gtest.h>

#include "zmd/errors.hpp"
#include "zmd/parallel.hpp"
#include "zmd/zmeasure.hpp"

using namespace zmd;

namespace {

const Rational kHalf = Rational(1) / 2;

GaussianRational g(const char* s) { return parse_gaussian(s); }

ZParams standard() { return ZParams::make(g("0.3"), g("0.7"), Rational(1)); }

std::vector<ZParams> sweep() {
  return {standard(),
          ZParams::make(g("0.6+0.8i"), g("0.6-0.8i"), Rational(1)),
          ZParams::make(g("0.5+0.5i"), g("0.5-0.5i"), Rational(2)),
          ZParams::make(g("0.1"), g("0.2"), kHalf),
          ZParams::make(g("1+2i"), g("1-2i"), kHalf)};
}

}  // namespace

TEST(ZParams, Cases) {
  EXPECT_EQ(standard().kind, ParamCase::Complementary);
  EXPECT_EQ(standard().theta, Rational(21, 100));
  const auto p = ZParams::make(g("0.6+0.8i"), g("0.6-0.8i"), Rational(1));
  EXPECT_EQ(p.kind, ParamCase::Principal);
  EXPECT_EQ(p.theta, Rational(1));
  EXPECT_EQ(p.zsum(), Rational(6, 5));
  // real principal point off the excluded lattice set
  EXPECT_EQ(ZParams::make(g("2.5"), g("2.5"), Rational(1)).kind, ParamCase::Principal);
}

TEST(ZParams, Rejections) {
  EXPECT_THROW(ZParams::make(g("0.3+0.1i"), g("0.7"), Rational(1)), ParameterError);
  EXPECT_THROW(ZParams::make(g("-0.3"), g("0.7"), Rational(1)), ParameterError);
  EXPECT_THROW(ZParams::make(g("0.3"), g("0.7"), kHalf), ParameterError);
  EXPECT_THROW(ZParams::make(g("-2"), g("-2"), Rational(1)), ParameterError);
  EXPECT_THROW(ZParams::make(g("0.3"), g("0.7"), Rational(0)), ParameterError);
}

TEST(ZPochhammer, Examples) {
  const GaussianRational z = g("0.4+0.3i");
  const Rational v(2);
  EXPECT_EQ(z_pochhammer(z, Partition{}, v), GaussianRational(Rational(1)));
  EXPECT_EQ(z_pochhammer(z, Partition{2, 1}, v), z * (z + Rational(1)) * (z - v));
  const auto c = z_pochhammer(std::complex<double>(0.4, 0.3), Partition{2, 1}, 2.0);
  const auto e = z_pochhammer(z, Partition{2, 1}, v).to_complex();
  EXPECT_NEAR(std::abs(c - e), 0.0, 1e-15);
}

TEST(ZPochhammer, ConjugateProductsPositive) {
  const GaussianRational z = g("0.6+0.8i");
  for (const Rational& v : {Rational(1), Rational(2), kHalf})
    for (int n = 0; n <= 6; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        const auto prod = z_pochhammer(z, eta, v) * z_pochhammer(z.conj(), eta, v);
        EXPECT_EQ(prod.im, 0);
        EXPECT_GT(prod.re, 0);
      }
}

TEST(Masses, Examples) {
  for (const auto& p : sweep()) {
    ZMeasure m(p);
    EXPECT_EQ(m.raw_mass(Partition{1}), Rational(1));
  }
  for (const char* z : {"0.3", "0.6+0.8i", "2.5"}) {
    const auto zz = g(z);
    const auto zp = zz.is_real() ? zz : zz.conj();
    ZMeasure m(ZParams::make(zz, zp, Rational(1)));
    EXPECT_EQ(m.raw_mass(Partition{2}) + m.raw_mass(Partition{1, 1}), Rational(1));
  }
}

TEST(Masses, PrincipalPositive) {
  ZMeasure m(ZParams::make(g("0.6+0.8i"), g("0.6-0.8i"), Rational(1)));
  for (int n = 1; n <= 10; ++n)
    for (const auto& r : m.level(n)->raw) EXPECT_GT(r, 0);
}

TEST(Masses, LevelTotalsAtOne) {
  for (const auto& p : {standard(), ZParams::make(g("0.6+0.8i"), g("0.6-0.8i"), Rational(1))}) {
    ZMeasure m(p);
    for (int n = 1; n <= 12; ++n) {
      const auto lvl = m.level(n);
      EXPECT_EQ(lvl->total, Rational(1)) << n;
      EXPECT_EQ(lvl->raw, lvl->normalized);
    }
  }
}

TEST(Masses, LevelTotalsAwayFromOneRecorded) {
  for (const auto& p : sweep()) {
    if (p.vartheta == 1) continue;
    ZMeasure m(p);
    for (int n : {3, 6, 9})
      RecordProperty("total_vartheta_" + to_fraction_string(p.vartheta) + "_n" + std::to_string(n),
                     to_fraction_string(m.level(n)->total));
  }
}

TEST(Masses, Coherence) {
  for (const auto& p : sweep()) {
    ZMeasure m(p);
    for (int n = 1; n <= 9; ++n) {
      const auto upper = m.level(n + 1);
      std::map<Partition, Rational> pushed;
      for (std::size_t k = 0; k < upper->partitions.size(); ++k)
        for (const auto& [eta, q] : m.graph().down_prob(upper->partitions[k])) pushed[eta] += q * upper->normalized[k];
      const auto lvl = m.level(n);
      for (std::size_t k = 0; k < lvl->partitions.size(); ++k) EXPECT_EQ(pushed[lvl->partitions[k]], lvl->normalized[k]);
    }
  }
}

TEST(UpProb, SumsAndExamples) {
  for (const auto& p : sweep()) {
    ZMeasure m(p);
    EXPECT_EQ(m.up_prob(Partition{}), (std::map<Partition, Rational>{{Partition{1}, Rational(1)}}));
    for (int n = 1; n <= 8; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        Rational s(0);
        for (const auto& [zeta, q] : m.up_prob(eta)) {
          EXPECT_GE(q, 0);
          s += q;
        }
        EXPECT_EQ(s, Rational(1));
      }
  }
  ZMeasure m(standard());
  const auto up = m.up_prob(Partition{1});
  EXPECT_EQ(up.at(Partition{2}) / up.at(Partition{1, 1}), m.raw_mass(Partition{2}) / m.raw_mass(Partition{1, 1}));
}

TEST(UpDown, LevelPreservedAndDeterministic) {
  ZMeasure m(standard());
  UpDownChain chain(m, 5);
  CounterRng rng(99);
  Partition eta{5};
  for (int i = 0; i < 10000; ++i) {
    eta = chain.step(eta, rng);
    ASSERT_EQ(eta.size(), 5);
  }
  const auto a = chain.simulate(100, 5000, 7, 4);
  const auto b = chain.simulate(100, 5000, 7, 4);
  EXPECT_EQ(a.counts, b.counts);
  ::setenv("ZMD_THREADS", "1", 1);
  const auto c = chain.simulate(100, 5000, 7, 4);
  ::unsetenv("ZMD_THREADS");
  EXPECT_EQ(a.counts, c.counts);
}

TEST(UpDown, StationaryOnLevelThree) {
  ZMeasure m(standard());
  UpDownChain chain(m, 3);
  const auto pi = chain.stationary();
  const auto lvl = m.level(3);
  ASSERT_EQ(pi.size(), lvl->normalized.size());
  for (std::size_t i = 0; i < pi.size(); ++i) EXPECT_EQ(pi[i], lvl->normalized[chain.level() == 3 ? lvl->index(chain.states()[i]) : 0]);
}

TEST(UpDown, DetailedBalance) {
  for (const auto& p : sweep()) {
    ZMeasure m(p);
    for (int n = 1; n <= 6; ++n) {
      UpDownChain chain(m, n);
      const auto P = chain.transition_matrix();
      const auto lvl = m.level(n);
      const auto& st = chain.states();
      for (std::size_t i = 0; i < st.size(); ++i) {
        Rational row(0);
        for (std::size_t j = 0; j < st.size(); ++j) {
          row += P[i][j];
          EXPECT_EQ(lvl->normalized[lvl->index(st[i])] * P[i][j], lvl->normalized[lvl->index(st[j])] * P[j][i]);
        }
        EXPECT_EQ(row, Rational(1));
      }
    }
  }
}

TEST(UpDown, MonteCarloMatchesTable) {
  ZMeasure m(standard());
  UpDownChain chain(m, 6);
  const auto law = chain.simulate(1000, 100000, 2024, 4);
  std::map<Partition, double> exact;
  const auto lvl = m.level(6);
  for (std::size_t i = 0; i < lvl->partitions.size(); ++i) exact[lvl->partitions[i]] = lvl->normalized_d[i];
  EXPECT_LT(total_variation(law.frequencies(), exact), 0.02);
}

TEST(SolveExact, SmallSystem) {
  const auto x = solve_exact({{Rational(2), Rational(1)}, {Rational(1), Rational(3)}}, {Rational(3), Rational(5)});
  EXPECT_EQ(x, (std::vector<Rational>{Rational(4, 5), Rational(7, 5)}));
  EXPECT_THROW(solve_exact({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}, {Rational(1), Rational(2)}),
               ConsistencyError);
}
