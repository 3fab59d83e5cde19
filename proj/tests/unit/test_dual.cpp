#include <gtest/gtest.h>

#include <cmath>

#include "zmd/coalescent.hpp"
#include "zmd/density.hpp"
#include "zmd/dual.hpp"
#include "zmd/errors.hpp"
#include "zmd/parallel.hpp"

using namespace zmd;

namespace {

ZParams params(const char* z, const char* zp, const Rational& v = Rational(1)) {
  return ZParams::make(parse_gaussian(z), parse_gaussian(zp), v);
}

PhiPoly phi(int k) { return PhiPoly::phi(k); }
PhiPoly c(const Rational& x) { return PhiPoly::constant(x); }

}  // namespace

TEST(PhiPoly, Algebra) {
  EXPECT_EQ(phi(1), c(Rational(1)));
  EXPECT_THROW(PhiPoly::phi(0), DomainError);
  const auto f = phi(2) * phi(3) + c(Rational(2));
  EXPECT_EQ(f.degree(), 5);
  EXPECT_EQ(f.derivative(2), phi(3));
  EXPECT_EQ((phi(2) * phi(2)).derivative(2), phi(2) * Rational(2));
  const auto omega = ThomaPoint::parse("a=0.5;b=0.25");
  EXPECT_EQ(f.evaluate_exact(omega, Rational(1)), (Rational(1, 4) - Rational(1, 16)) * (Rational(1, 8) + Rational(1, 64)) + 2);
}

TEST(GeneratorA, Constants) {
  const auto p = GeneratorParams::from(params("1/3", "2/3"));
  EXPECT_TRUE(generator_A_apply(c(Rational(5)), p).is_zero());
}

TEST(GeneratorA, PhiTwo) {
  for (const auto& zp : {params("1/3", "2/3"), params("0.5+0.5i", "0.5-0.5i", Rational(2)), params("0.1", "0.2", Rational(1, 2))}) {
    const auto p = GeneratorParams::from(zp);
    const Rational drift = (1 - p.vartheta) + p.zsum;
    EXPECT_EQ(generator_A_apply(phi(2), p), c(drift) - phi(2) * (1 + p.theta));
    const Rational shift = -drift / (1 + p.theta);
    const auto f = phi(2) + c(shift);
    EXPECT_EQ(generator_A_apply(f, p), f * (-(1 + p.theta)));
  }
}

TEST(GeneratorA, PhiTwoSquared) {
  const auto p = GeneratorParams::from(params("1/3", "2/3"));
  const auto image = generator_A_apply(phi(2) * phi(2), p);
  EXPECT_LE(image.degree(), 4);
  EXPECT_EQ(image.coeff(Partition{3}), Rational(4));
}

TEST(GeneratorA, Linearity) {
  const auto p = GeneratorParams::from(params("0.5+0.5i", "0.5-0.5i", Rational(2)));
  const auto f = phi(3) * phi(2) + phi(4) * Rational(3);
  const auto g = phi(2) * phi(2) * phi(2) - phi(5);
  EXPECT_EQ(generator_A_apply(f * Rational(2) + g, p), generator_A_apply(f, p) * Rational(2) + generator_A_apply(g, p));
}

TEST(GeneratorA, ProductRuleDefectIsCarreDuChamp) {
  const std::vector<PhiPoly> fs{phi(2), phi(3), phi(2) * phi(2), phi(2) * phi(3) + phi(4)};
  for (const auto& zp : {params("1/3", "2/3"), params("0.5+0.5i", "0.5-0.5i", Rational(2))}) {
    const auto p = GeneratorParams::from(zp);
    for (const auto& f : fs)
      for (const auto& g : fs) {
        const auto defect = generator_A_apply(f * g, p) - f * generator_A_apply(g, p) - g * generator_A_apply(f, p);
        EXPECT_EQ(defect, carre_du_champ(f, g)) << f.to_string() << " ; " << g.to_string();
      }
  }
  EXPECT_EQ(carre_du_champ(phi(2), phi(2)), (phi(3) - phi(2) * phi(2)) * Rational(4));
}

TEST(GeneratorA, ActionMatchesSpecializedEvaluation) {
  // A f at a point equals the same polynomial evaluated there, linear in f.
  const auto p = GeneratorParams::from(params("1/3", "2/3"));
  const auto omega = ThomaPoint::parse("a=0.4,0.2;b=0.1");
  const auto f = phi(2) * phi(2);
  const auto af = generator_A_apply(f, p);
  EXPECT_NEAR(af.evaluate(omega, 1.0), to_double(af.evaluate_exact(omega, Rational(1))), 1e-14);
}

TEST(Spectrum, Examples) {
  const auto two = spectrum_check(2, GeneratorParams::from(params("0.6+0.8i", "0.6-0.8i")));
  EXPECT_TRUE(two.ok);
  ASSERT_EQ(two.dimension, 2u);
  EXPECT_NEAR(two.expected[0], 0.0, 0.0);
  EXPECT_NEAR(two.expected[1], -2.0, 1e-15);
  const auto three = spectrum_check(3, GeneratorParams::from(params("0.6+0.8i", "0.6-0.8i")));
  EXPECT_EQ(three.found_multiplicity.at(3), 1);
}

TEST(Spectrum, Sweep) {
  const std::vector<ZParams> ps{params("0.5+0.5i", "0.5-0.5i"), params("0.6+0.8i", "0.6-0.8i"), params("1+i", "1-i")};
  for (const auto& zp : ps)
    for (int d = 2; d <= 6; ++d) {
      const auto r = spectrum_check(d, GeneratorParams::from(zp));
      EXPECT_TRUE(r.ok) << "theta=" << zp.theta_d() << " deg=" << d;
      EXPECT_LE(r.max_deviation, 1e-8);
    }
  EXPECT_TRUE(spectrum_check(5, GeneratorParams::from(params("0.5+0.5i", "0.5-0.5i", Rational(2)))).ok);
  EXPECT_THROW(spectrum_check(8, GeneratorParams::from(ps[0])), CapacityError);
}

TEST(Duality, ResidualsVanish) {
  for (const auto& zp : {params("1/3", "2/3"), params("1/4", "1/2")})
    for (int n = 1; n <= 5; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        const auto r = duality_residual(eta, zp);
        EXPECT_TRUE(r.zero()) << eta.to_string() << " " << r.residual.to_string();
      }
  EXPECT_THROW(duality_residual(Partition{2}, params("0.1", "0.2", Rational(1, 2))), ParameterError);
}

TEST(Duality, HookRatioIdentity) {
  BranchingGraph young(GraphKind::jack(Rational(1)));
  for (int n = 1; n <= 7; ++n)
    for (const auto& eta : enumerate_partitions(n))
      for (const auto& z : cocovers(eta))
        EXPECT_EQ(hook_products(eta, Rational(1)).H / hook_products(z.partition, Rational(1)).H,
                  Rational(n) * young.dim(z.partition) / young.dim(eta));
}

TEST(DualLaw, TimeZeroAndErrors) {
  const Partition nu{2, 2};
  EXPECT_DOUBLE_EQ(dual_transition_prob(nu, nu, 0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(dual_transition_prob(nu, Partition{2, 1}, 0.0, 1.0), 0.0);
  EXPECT_THROW(dual_transition_prob(nu, Partition{3}, 0.5, 1.0), DomainError);
  EXPECT_THROW(dual_transition_prob(nu, Partition{}, 0.5, 1.0), DomainError);
}

TEST(DualLaw, RowSums) {
  for (double th : {0.5, 1.0, 2.0})
    for (double t : {0.1, 0.5, 2.0})
      for (const Partition& nu : {Partition{2, 1}, Partition{3, 2, 1}, Partition{4, 2, 1, 1}}) {
        const auto table = d_mn_table(t, nu.size(), th);
        double literal = 0.0;
        for (const auto& eta : subpartitions(nu)) {
          if (eta.empty()) continue;
          const double p = dual_transition_prob(nu, eta, t, th);
          EXPECT_GE(p, -1e-12);
          literal += p;
        }
        EXPECT_NEAR(literal, 1.0 - table.values[0], 1e-8);
        double absorbing = 0.0;
        for (const auto& [eta, p] : dual_law(nu, t, th)) absorbing += p;
        EXPECT_NEAR(absorbing, 1.0, 1e-8);
      }
  // level one carries d_m1 alone under the literal reading
  EXPECT_NEAR(dual_transition_prob(Partition{2, 1}, Partition{1}, 3.0, 1.0), d_mn(3.0, 3, 1, 1.0).value, 1e-14);
}

TEST(DualSim, StartAtOneStays) {
  DualSimulator sim(1.0);
  CounterRng rng(5);
  const auto s = sim.run(Partition{1}, 100.0, rng);
  EXPECT_EQ(s.current, Partition{1});
  EXPECT_TRUE(s.absorbed);
  EXPECT_EQ(s.jumps, 0);
}

TEST(DualSim, HoldingTimeSurvival) {
  const double th = 1.0;
  DualSimulator sim(th);
  const Partition start{2, 1};
  const std::uint64_t paths = 200000;
  for (double t : {0.1, 0.3, 0.6}) {
    std::uint64_t stayed = 0;
    for (std::uint64_t i = 0; i < paths; ++i) {
      CounterRng rng(77, i);
      if (sim.run(start, t, rng).jumps == 0) ++stayed;
    }
    const double p = std::exp(-lambda(3, th) * t);
    const double freq = static_cast<double>(stayed) / paths;
    EXPECT_LE(std::abs(freq - p), 3 * std::sqrt(p * (1 - p) / paths)) << t;
  }
}

TEST(DualSim, LevelLawMatchesCollapsedCoefficients) {
  const double th = 1.0, t = 0.5;
  DualSimulator sim(th);
  const Partition nu{3, 2, 2, 1};
  const auto law = sim.empirical_law(nu, t, 100000, 11);
  std::map<int, double> level, analytic;
  for (const auto& [eta, p] : law) level[eta.size()] += p;
  const auto table = d_mn_table(t, 8, th);
  analytic[1] = table.values[0] + table.values[1];
  for (int n = 2; n <= 8; ++n) analytic[n] = table.values[n];
  EXPECT_LT(total_variation(level, analytic), 0.02);
}

TEST(DualSim, LawMatchesAnalytic) {
  DualSimulator sim(1.0);
  for (const Partition& nu : {Partition{2, 2}, Partition{3, 1, 1}}) {
    const auto law = sim.empirical_law(nu, 0.5, 100000, 3);
    EXPECT_LT(total_variation(law, dual_law(nu, 0.5, 1.0)), 0.02) << nu.to_string();
  }
}

TEST(DualSim, Deterministic) {
  DualSimulator sim(0.7);
  const auto a = sim.empirical_law(Partition{3, 2}, 0.4, 20000, 9);
  ::setenv("ZMD_THREADS", "3", 1);
  const auto b = sim.empirical_law(Partition{3, 2}, 0.4, 20000, 9);
  ::unsetenv("ZMD_THREADS");
  EXPECT_EQ(a, b);
}

TEST(ExpectedJ, Limits) {
  ZMeasure measure(params("0.3", "0.7"));
  const auto omega = ThomaPoint::parse("a=0.5,0.2;b=0.2");
  auto& alg = SymmetricAlgebra::shared();
  for (const Partition& eta : {Partition{2}, Partition{2, 1}, Partition{3, 1, 1}}) {
    EXPECT_NEAR(expected_j_given_start(eta, omega, 0.0, measure), alg.j_eval(eta, omega, Rational(1)), 1e-12);
    EXPECT_NEAR(expected_j_given_start(eta, omega, 200.0, measure), measure.mass(eta), 1e-10);
  }
}

TEST(ExpectedJ, LevelSums) {
  ZMeasure measure(params("0.3", "0.7"));
  const double th = measure.params().theta_d();
  for (const auto& omega : seeded_thoma_points(5, 41))
    for (double t : {0.2, 0.8, 2.0})
      for (int m = 1; m <= 6; ++m) {
        double absorbing = 0.0, literal = 0.0;
        for (const auto& eta : enumerate_partitions(m)) {
          absorbing += expected_j_given_start(eta, omega, t, measure);
          literal += expected_j_given_start(eta, omega, t, measure, LevelOneConvention::Literal);
        }
        EXPECT_NEAR(absorbing, 1.0, 1e-8);
        const double d0 = d_mn_table(t, m, th).values[0];
        EXPECT_NEAR(literal, 1.0 - d0, 1e-8);
      }
}
