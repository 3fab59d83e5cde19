#include <gtest/gtest.h>

#include <vector>

#include "zmd/density.hpp"
#include "zmd/errors.hpp"
#include "zmd/symfunc.hpp"

using namespace zmd;

namespace {

const Rational kHalf = Rational(1) / 2;

SymmetricAlgebra& algebra() { return SymmetricAlgebra::shared(); }

GradedSymPoly in_basis(const Partition& lambda, const Basis& b) { return GradedSymPoly::element(lambda, b); }

}  // namespace

TEST(Convert, Examples) {
  const auto m = algebra().convert(in_basis(Partition{1}, Basis::power_sum()), Basis::monomial());
  EXPECT_EQ(m.coeffs(), (CoeffMap{{Partition{1}, Rational(1)}}));
  const auto p = algebra().convert(in_basis(Partition{1, 1}, Basis::monomial()), Basis::power_sum());
  EXPECT_EQ(p.coeffs(), (CoeffMap{{Partition{1, 1}, kHalf}, {Partition{2}, -kHalf}}));
}

TEST(Convert, RoundTrips) {
  const std::vector<Basis> bases{Basis::power_sum(), Basis::schur(), Basis::jack_p(Rational(2)),
                                 Basis::jack_paper(kHalf)};
  for (int n = 1; n <= 6; ++n)
    for (const auto& lambda : enumerate_partitions(n))
      for (const auto& b : bases) {
        const auto f = in_basis(lambda, b);
        const auto there = algebra().convert(f, Basis::monomial());
        EXPECT_EQ(algebra().convert(there, b), f) << b.name() << " " << lambda.to_string();
        const auto g = in_basis(lambda, Basis::monomial());
        EXPECT_EQ(algebra().convert(algebra().convert(g, b), Basis::monomial()), g);
      }
}

TEST(Convert, MixedDegrees) {
  GradedSymPoly f(3, Basis::power_sum());
  f.add(Partition{}, Rational(3));
  f.add(Partition{2}, Rational(-1));
  f.add(Partition{2, 1}, kHalf);
  const auto s = algebra().convert(f, Basis::schur());
  EXPECT_EQ(algebra().convert(s, Basis::power_sum()), f);
  EXPECT_EQ(s.homogeneous_components().size(), 3u);
}

TEST(Convert, CapacityError) {
  SymmetricAlgebra small(SymConfig{6, 4});
  EXPECT_THROW(small.convert(in_basis(Partition{7}, Basis::power_sum()), Basis::monomial()), CapacityError);
  EXPECT_THROW(small.jack_in_monomials(Partition{3, 2}, Rational(2)), CapacityError);
}

TEST(SchurEval, Examples) {
  const std::vector<double> a{0.4, 0.6}, b{1.0, 0.0};
  EXPECT_NEAR(schur_eval(Partition{1}, a), 1.0, 1e-15);
  EXPECT_NEAR(schur_eval(Partition{2}, b), 1.0, 1e-15);
  EXPECT_NEAR(schur_eval(Partition{1, 1}, b), 0.0, 1e-15);
  EXPECT_THROW(schur_eval(Partition{1, 1, 1}, a), DomainError);
}

TEST(SchurEval, AgreesWithMonomialExpansion) {
  const std::vector<std::vector<double>> points{{0.3, 0.25, 0.2, 0.15, 0.1}, {0.5, 0.5 + 1e-12, 0.2}, {0.7, 0.2, 0.1, 0.0}};
  for (const auto& x : points)
    for (int n = 1; n <= 6; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        if (eta.length() > static_cast<int>(x.size())) continue;
        double direct = 0.0;
        for (const auto& [mu, c] : algebra().monomial_expansion(eta, Basis::schur()))
          direct += to_double(c) * monomial_eval(mu, x);
        EXPECT_NEAR(schur_eval(eta, x), direct, 1e-12) << eta.to_string();
      }
}

TEST(Jack, Examples) {
  for (const Rational& v : {Rational(1), Rational(2), kHalf}) {
    EXPECT_EQ(algebra().jack_in_monomials(Partition{1}, v).coeffs(), (CoeffMap{{Partition{1}, Rational(1)}}));
    EXPECT_EQ(algebra().jack_in_monomials(Partition{1, 1}, v).coeffs(), (CoeffMap{{Partition{1, 1}, Rational(1)}}));
  }
  EXPECT_EQ(algebra().jack_in_monomials(Partition{2}, Rational(1)).coeffs(),
            (CoeffMap{{Partition{2}, Rational(1)}, {Partition{1, 1}, Rational(1)}}));
  // P_(2) = m_2 + 2 vartheta/(1 + vartheta) m_11
  EXPECT_EQ(algebra().jack_in_monomials(Partition{2}, Rational(3)).coeff(Partition{1, 1}), Rational(3, 2));
}

TEST(Jack, DominanceTriangular) {
  for (const Rational& v : {Rational(2), kHalf})
    for (int n = 1; n <= 8; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        const auto p = algebra().jack_in_monomials(eta, v);
        EXPECT_EQ(p.coeff(eta), Rational(1));
        for (const auto& [mu, c] : p.coeffs()) EXPECT_TRUE(dominates(eta, mu)) << eta.to_string() << " " << mu.to_string();
      }
}

TEST(Jack, EigenfunctionOfSecondOrderOperator) {
  for (const Rational& v : {Rational(3), Rational(1, 3)})
    for (int n = 1; n <= 6; ++n)
      for (const auto& eta : enumerate_partitions(n)) {
        const auto p = algebra().jack_in_monomials(eta, v);
        CoeffMap image;
        for (const auto& [mu, c] : p.coeffs())
          for (const auto& [nu, d] : laplace_beltrami_on_monomial(mu, n, v)) image[nu] += c * d;
        const Rational e = laplace_beltrami_eigenvalue(eta, n, v);
        for (const auto& [nu, d] : image) EXPECT_EQ(d, e * p.coeff(nu)) << eta.to_string();
      }
}

TEST(Jack, PieriConsistency) {
  for (const Rational& v : {Rational(1), Rational(2), kHalf, Rational(3)}) {
    const auto report = algebra().pieri_report(v, 8);
    EXPECT_TRUE(report.consistent()) << to_fraction_string(v);
    EXPECT_GT(report.parent_checks, 0u);
    for (const auto& [nu, s] : report.scalars) EXPECT_EQ(s, Rational(1)) << nu.to_string();
  }
}

TEST(Jack, PinnedNormalizationAtOneIsSchur) {
  for (int n = 0; n <= 8; ++n)
    for (const auto& eta : enumerate_partitions(n))
      EXPECT_EQ(algebra().jack_paper(eta, Rational(1)).coeffs(), algebra().monomial_expansion(eta, Basis::schur()));
}

TEST(Jack, PowerOfP1ExpandsWithDimensions) {
  for (const Rational& v : {Rational(1), Rational(2), kHalf}) {
    const auto graph = algebra().jack_graph(v);
    for (int n = 1; n <= 8; ++n) {
      CoeffMap lhs = algebra().monomial_expansion(Partition(std::vector<int>(n, 1)), Basis::power_sum());
      CoeffMap rhs;
      for (const auto& eta : enumerate_partitions(n)) {
        const auto j = algebra().jack_paper(eta, v);
        for (const auto& [mu, c] : j.coeffs()) rhs[mu] += graph->dim(eta) * c;
      }
      std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
      EXPECT_EQ(lhs, rhs) << n;
    }
  }
}

TEST(Specialize, Examples) {
  const auto omega = ThomaPoint::parse("a=0.5,0.3;b=0.1");
  for (const Rational& v : {Rational(1), Rational(2), kHalf}) {
    EXPECT_EQ(algebra().specialize_exact(in_basis(Partition{2}, Basis::power_sum()), omega, v),
              Rational(34) / 100 - Rational(1) / 100 * v);
    for (int k = 1; k <= 6; ++k)
      EXPECT_EQ(algebra().specialize_exact(in_basis(Partition(std::vector<int>(k, 1)), Basis::power_sum()), omega, v),
                Rational(1));
  }
  const auto two = ThomaPoint::parse("a=0.6,0.4");
  const std::vector<double> x{0.6, 0.4};
  for (int n = 1; n <= 6; ++n)
    for (const auto& eta : enumerate_partitions(n)) {
      if (eta.length() > 2) continue;
      EXPECT_NEAR(algebra().specialize(in_basis(eta, Basis::schur()), two, Rational(1)), schur_eval(eta, x), 1e-12);
    }
}

TEST(JEval, Examples) {
  const auto omega = ThomaPoint::parse("a=0.5,0.2;b=0.1");
  for (const Rational& v : {Rational(1), Rational(2), kHalf}) EXPECT_EQ(algebra().j_eval_exact(Partition{1}, omega, v), Rational(1));
  const auto delta = ThomaPoint::parse("a=1");
  for (int n = 1; n <= 6; ++n)
    for (const auto& eta : enumerate_partitions(n))
      EXPECT_EQ(algebra().j_eval_exact(eta, delta, Rational(1)), Rational(eta.length() == 1 ? 1 : 0)) << eta.to_string();
}

TEST(JEval, LevelSumsAreExactlyOne) {
  const auto points = seeded_thoma_points(6, 17);
  for (const Rational& v : {Rational(1), Rational(2), kHalf})
    for (const auto& omega : points)
      for (int n = 1; n <= 6; ++n) {
        Rational s(0);
        for (const auto& eta : enumerate_partitions(n)) s += algebra().j_eval_exact(eta, omega, v);
        EXPECT_EQ(s, Rational(1)) << omega.to_string() << " n=" << n;
      }
}

TEST(JEval, NonnegativeAtOne) {
  for (const auto& omega : seeded_thoma_points(20, 5))
    for (int n = 1; n <= 7; ++n)
      for (const auto& eta : enumerate_partitions(n)) EXPECT_GE(algebra().j_eval_exact(eta, omega, Rational(1)), 0);
}

TEST(JEval, SignsRecordedAwayFromOne) {
  int negative = 0;
  for (const auto& omega : seeded_thoma_points(20, 5))
    for (int n = 1; n <= 6; ++n)
      for (const auto& eta : enumerate_partitions(n))
        if (algebra().j_eval_exact(eta, omega, Rational(2)) < 0) ++negative;
  RecordProperty("negative_values_vartheta_2", negative);
}

TEST(JEval, LevelEvaluatorMatches) {
  const auto omega = ThomaPoint::parse("a=0.4,0.1;b=0.3,0.05");
  for (const Rational& v : {Rational(1), Rational(2)}) {
    JLevelEvaluator ev(algebra(), 5, v);
    const auto exact = ev.evaluate_exact(omega);
    const auto approx = ev.evaluate(omega);
    for (std::size_t i = 0; i < ev.partitions().size(); ++i) {
      EXPECT_EQ(exact[i], algebra().j_eval_exact(ev.partitions()[i], omega, v));
      EXPECT_NEAR(approx[i], to_double(exact[i]), 1e-13);
    }
  }
}

TEST(Thoma, ParseAndValidate) {
  const auto w = ThomaPoint::parse("a=0.5,0.3;b=0.1");
  EXPECT_EQ(w.gamma(), Rational(1, 10));
  EXPECT_THROW(ThomaPoint::parse("a=0.3,0.5"), DomainError);
  EXPECT_THROW(ThomaPoint::parse("a=0.7;b=0.4"), DomainError);
  const auto f = scaled_frobenius(Partition{3, 1});
  EXPECT_EQ(f.alpha(), (std::vector<Rational>{Rational(5, 8)}));
  EXPECT_EQ(f.gamma(), Rational(0));
}
