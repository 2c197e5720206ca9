#include "gradinf/classifier.hpp"
#include "gradinf/puiseux.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace gradinf;
using namespace gradinf::testing;

namespace {

const QPoly x = var("x"), y = var("y");

LaurentPoly<Rational> tl(std::initializer_list<std::pair<std::int64_t, long>> terms) {
  LaurentPoly<Rational> p;
  for (auto [e, c] : terms) p.add_term(e, Rational(c));
  return p;
}

ExtRational q(long a, long b = 1) { return ExtRational(make_rational(a, b)); }

std::vector<QPoly> corpus() {
  return {family_b(2),
          family_b(3),
          family_b(4),
          y.pow(2),
          y.pow(2) + x,
          y.pow(2) + x * y,
          y.pow(4) + x * y.pow(3) + y.pow(2) + y,
          x * (y.pow(2) - cst(2)) + y.pow(3) + y,
          y.pow(5) + x * (y.pow(2) - cst(1)).pow(2)};
}

// Rational coefficient of a series term, when it has one.
std::optional<Rational> rat(const AlgNum& a) { return a.as_rational(); }

}  // namespace

TEST(NewtonPolygon, ReferenceExamples) {
  EXPECT_EQ(newton_polygon_max_root_degree<Rational>({tl({{0, 1}}), LaurentPoly<Rational>(), tl({{2, -1}})}), q(1));
  EXPECT_EQ(newton_polygon_max_root_degree<Rational>({tl({{0, 1}}), LaurentPoly<Rational>(), tl({{3, -1}})}), q(3, 2));
  EXPECT_EQ(newton_polygon_max_root_degree<Rational>({tl({{1, 1}}), tl({{0, -1}})}), q(-1));
  EXPECT_THROW(newton_polygon_max_root_degree<Rational>({LaurentPoly<Rational>(), tl({{0, 1}})}), PreconditionError);
}

TEST(NewtonPolygon, MatchesExpandedRootsOnRandomInstances) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> coef(-3, 3), expo(-2, 3), len(1, 3);
  int done = 0;
  while (done < 40) {
    int N = len(rng);
    std::vector<LaurentPoly<Rational>> desc;
    for (int i = 0; i <= N; ++i) {
      LaurentPoly<Rational> c;
      for (int k = 0; k < 2; ++k) c.add_term(expo(rng), Rational(coef(rng)));
      desc.push_back(c);
    }
    if (desc[0].is_zero()) continue;
    bool any_lower = false;
    for (int i = 1; i <= N; ++i) any_lower = any_lower || !desc[static_cast<std::size_t>(i)].is_zero();
    if (!any_lower) continue;
    LaurentYPoly asc;
    for (auto it = desc.rbegin(); it != desc.rend(); ++it) {
      LaurentA c;
      for (const auto& [e, v] : it->terms()) c.add_term(e, AlgNum(v));
      asc.push_back(c);
    }
    auto tree = expand_roots({asc});
    ExtRational best = ExtRational::neg_infinity();
    std::size_t count = 0;
    for (const auto& cls : tree.classes) {
      best = max(best, cls.leading());
      count += cls.mult[0] * cls.conjugates(tree.nodes);
    }
    EXPECT_EQ(count, static_cast<std::size_t>(N));
    EXPECT_EQ(best, newton_polygon_max_root_degree(desc));
    ++done;
  }
}

TEST(PuiseuxBranches, DoubleRoot) {
  auto b = puiseux_branches(y.pow(2), Rational(0));
  EXPECT_EQ(b.D, 1);
  ASSERT_EQ(b.beta.size(), 2u);
  EXPECT_TRUE(b.series(b.beta[0]).is_zero());
  EXPECT_TRUE(b.series(b.beta[1]).is_zero());
  auto m = contact_matrix(b);
  EXPECT_TRUE(m(0, 1).is_neg_infinity());
}

TEST(PuiseuxBranches, SquareRootBranches) {
  auto b = puiseux_branches(y.pow(2) + x, Rational(0));
  EXPECT_EQ(b.D, 2);
  ASSERT_EQ(b.beta.size(), 2u);
  for (const auto& r : b.beta) {
    auto s = b.series(r);
    EXPECT_EQ(s.degree(), q(1));
    AlgNum c = s.coeff(1);
    EXPECT_TRUE(is_zero(c * c + AlgNum(1)));  // c = +-i
  }
  EXPECT_EQ(contact_matrix(b)(0, 1), q(1));
  ASSERT_EQ(b.gamma.size(), 1u);
  EXPECT_TRUE(b.series(b.gamma[0]).is_zero());
}

TEST(PuiseuxBranches, ExampleB) {
  auto b = puiseux_branches(family_b(2), Rational(0));
  EXPECT_EQ(b.D, 1);
  ASSERT_EQ(b.beta.size(), 3u);
  // Roots of y (y^2 + x y + 1): 0, -1/x - 1/x^3 - ..., -x + 1/x + ...
  auto s0 = b.series(b.beta[0]), s1 = b.series(b.beta[1]), s2 = b.series(b.beta[2]);
  EXPECT_TRUE(s0.is_zero());
  EXPECT_EQ(s1.degree(), q(-1));
  EXPECT_EQ(rat(s1.coeff(-1)), Rational(-1));
  EXPECT_EQ(rat(s1.coeff(-3)), Rational(-1));
  EXPECT_EQ(s2.degree(), q(1));
  EXPECT_EQ(rat(s2.coeff(1)), Rational(-1));
  EXPECT_EQ(rat(s2.coeff(-1)), Rational(1));

  auto m = contact_matrix(b);
  EXPECT_EQ(m(0, 1), q(-1));
  EXPECT_EQ(m(0, 2), q(1));
  EXPECT_EQ(m(1, 2), q(1));
  EXPECT_EQ(m(1, 0), m(0, 1));
}

TEST(PuiseuxBranches, GammaSeriesOfExampleB) {
  // 3y^2 + 2xy + 1 = 0: y = -2x/3 + 1/(2x) + ..., y = -1/(2x) + ...
  auto b = puiseux_branches(family_b(2), Rational(0));
  ASSERT_EQ(b.gamma.size(), 2u);
  auto g0 = b.series(b.gamma[0]), g1 = b.series(b.gamma[1]);
  EXPECT_EQ(g0.degree(), q(-1));
  EXPECT_EQ(rat(g0.coeff(-1)), make_rational(-1, 2));
  EXPECT_EQ(g1.degree(), q(1));
  EXPECT_EQ(rat(g1.coeff(1)), make_rational(-2, 3));
}

TEST(PuiseuxBranches, ReconstructsTheFiberPolynomial) {
  // For rational branches, expand prod (y - beta_i) and compare with
  // f(t^D, y) - lambda0 coefficient by coefficient. Replacing roots by
  // truncations perturbs e_k by terms of degree < tail + (k-1) * max deg.
  std::vector<std::pair<QPoly, long>> cases{{family_b(2), 0}, {y.pow(4) - x * x * y.pow(2) + y, 0}, {y.pow(3) - x * x * y, 0},
                                            {y.pow(3) - x * x * y, 1}, {y.pow(2) + x * y, 1}};
  for (const auto& [f, l0] : cases) {
    auto b = puiseux_branches(f, Rational(l0));
    bool rational = true;
    for (const auto& r : b.beta) {
      auto series = b.series(r);
      for (const auto& [e, c] : series.terms()) rational = rational && c.as_rational().has_value();
    }
    ASSERT_TRUE(rational) << f.to_string();
    std::vector<LaurentA> prod{LaurentA(AlgNum(1))};
    std::int64_t maxdeg = 0;
    for (const auto& r : b.beta) {
      auto s = b.series(r);
      if (!s.is_zero()) maxdeg = std::max<std::int64_t>(maxdeg, s.degree().value().get_num().get_si());
      std::vector<LaurentA> next(prod.size() + 1);
      for (std::size_t k = 0; k < prod.size(); ++k) {
        next[k + 1] = next[k + 1] + prod[k];
        next[k] = next[k] - prod[k] * s;
      }
      prod = next;
    }
    QPoly target = f - QPoly(Rational(l0));
    auto coeffs = target.coefficients_in("y");
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      LaurentA exact;
      auto u = coeffs[k].to_upoly("x");
      for (std::size_t i = 0; i < u.coeffs().size(); ++i)
        exact.add_term(static_cast<std::int64_t>(i) * b.D, AlgNum(u.coeffs()[i]));
      LaurentA diff = prod[k] - exact;
      std::size_t order = b.n - k;  // e_order of the roots
      if (order == 0) {
        EXPECT_TRUE(diff.is_zero());
        continue;
      }
      std::int64_t limit = b.truncation_order + static_cast<std::int64_t>(order - 1) * maxdeg;
      EXPECT_TRUE(diff.is_zero() || diff.degree() < ExtRational(Rational(static_cast<long>(limit))))
          << f.to_string() << " at " << l0 << " coefficient y^" << k << ": " << diff.to_string();
    }
  }
}

TEST(ContactMatrix, UltrametricOnCorpus) {
  // deg(a - c) <= max(deg(a - b), deg(b - c)): among the three differences of
  // any three roots the largest degree occurs at least twice.
  for (const auto& f : corpus()) {
    for (long l0 : {-1L, 0L, 1L}) {
      auto m = contact_matrix(puiseux_branches(f, Rational(l0)));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          for (std::size_t k = 0; k < m.size(); ++k) {
            if (i == j || j == k || i == k) continue;
            std::vector<ExtRational> v{m(i, j), m(j, k), m(i, k)};
            std::sort(v.begin(), v.end());
            EXPECT_EQ(v[1], v[2]) << f.to_string();
          }
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) EXPECT_EQ(m(i, j), m(j, i));
    }
  }
}

TEST(ContactExponent, ReferenceExamples) {
  EXPECT_EQ(cor36_exponent(family_b(2), Rational(0)), q(-2));
  EXPECT_TRUE(cor36_exponent(y.pow(2), Rational(0)).is_neg_infinity());
  EXPECT_THROW(cor36_exponent(y.pow(2) + x, Rational(0)), PreconditionError);
}

TEST(GradientIdentity, ReferenceExamples) {
  auto a = prop22_check(family_b(2), Rational(0));
  EXPECT_EQ(a.lhs, q(-1));
  EXPECT_EQ(a.rhs, q(-1));
  EXPECT_TRUE(a.equal);
  auto b = prop22_check(y.pow(2) + x, Rational(0));
  EXPECT_EQ(b.lhs, q(1));
  EXPECT_EQ(b.rhs, q(1));
  EXPECT_TRUE(b.equal);
  auto c = prop22_check(y.pow(2), Rational(0));
  EXPECT_TRUE(c.lhs.is_neg_infinity());
  EXPECT_TRUE(c.rhs.is_neg_infinity());
  EXPECT_TRUE(c.equal);
}

TEST(BranchExponents, ReferenceExamples) {
  auto a = lemma31_exponents(family_b(2), Rational(0));
  EXPECT_EQ(a.on_fiber, q(0));
  EXPECT_EQ(a.on_critical, q(-1));
  auto b = lemma31_exponents(y.pow(2), Rational(0));
  EXPECT_TRUE(b.on_fiber.is_neg_infinity());
  EXPECT_TRUE(b.on_critical.is_neg_infinity());
  auto c = lemma31_exponents(y.pow(2) + x, Rational(3));
  EXPECT_EQ(c.on_fiber, q(1, 2));
  EXPECT_EQ(c.on_critical, q(1));
}

TEST(ContactMatching, ReferenceExamples) {
  EXPECT_TRUE(lemmad2_check(family_b(2), Rational(0)));
  EXPECT_TRUE(lemmad2_check(y.pow(2) + x, Rational(0)));
  EXPECT_TRUE(lemmad2_check(y.pow(2) + x, Rational(5)));
}

TEST(Oracle, AgreesWithClassifierOnCorpus) {
  for (const auto& f : corpus()) {
    Classifier c(f);
    for (const auto& pt : lambda_set(c)) {
      auto records = exponent_at(c, pt);
      auto pairs = pair_exponent_if_negative(c, pt);
      auto bundles = oracle_at(f, pt);
      ASSERT_EQ(records.size(), bundles.size()) << f.to_string();
      for (std::size_t k = 0; k < bundles.size(); ++k) {
        EXPECT_EQ(bundles[k].lambda, records[k].lambda);
        ASSERT_TRUE(bundles[k].cor36.has_value()) << f.to_string() << " at " << pt.to_string();
        EXPECT_EQ(*bundles[k].cor36, records[k].value) << f.to_string() << " at " << pt.to_string();
        EXPECT_EQ(bundles[k].lemma31.on_fiber, pairs[k].on_fiber);
        EXPECT_EQ(bundles[k].lemma31.on_critical, pairs[k].on_critical);
        EXPECT_TRUE(bundles[k].prop22.equal);
        EXPECT_TRUE(bundles[k].lemmad2);
      }
    }
  }
}

TEST(Oracle, OnFiberFormulaAgreementOffLambda) {
  for (const auto& f : corpus()) {
    Classifier c(f);
    for (long l0 : {-3L, 2L, 7L}) {
      if (c.lambda_values().contains(Rational(l0))) continue;
      auto o = lemma31_exponents(f, Rational(l0));
      auto fib = fiber_exponent_at(c, Rational(l0));
      EXPECT_EQ(o.on_fiber, fib.value) << f.to_string() << " at " << l0;
      auto crit = lemma_lp_exponent(specialize_fiber(c.critical_resultant(), Rational(l0)));
      EXPECT_EQ(o.on_critical, crit.value) << f.to_string() << " at " << l0;
      auto p = prop22_check(f, Rational(l0));
      EXPECT_TRUE(p.equal) << f.to_string() << " at " << l0;
      EXPECT_TRUE(lemmad2_check(f, Rational(l0)));
    }
  }
}

TEST(Oracle, AlgebraicPointAndSplitOrder) {
  QPoly f = y.pow(5) + x * (y.pow(2) - cst(2)).pow(2) + y;
  Classifier c(f);
  auto pts = lambda_set(c);
  ASSERT_EQ(pts.size(), 1u);
  auto o = oracle_at(f, pts[0]);
  ASSERT_EQ(o.size(), 1u);
  ASSERT_TRUE(o[0].cor36.has_value());
  EXPECT_EQ(*o[0].cor36, exponent_at(c, pts[0])[0].value);

  QPoly g = y.pow(5) + x * (y.pow(2) - cst(1)).pow(2);
  auto mixed = LambdaPoint::algebraic(UPoly<Rational>(std::vector<Rational>{Rational(0), Rational(-1), Rational(0), Rational(1)}));
  auto first = oracle_at(g, mixed, SplitOrder::FirstFactorFirst);
  auto second = oracle_at(g, mixed, SplitOrder::SecondFactorFirst);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    EXPECT_EQ(first[k].lambda, second[k].lambda);
    EXPECT_EQ(first[k].prop22.lhs, second[k].prop22.lhs);
    EXPECT_EQ(first[k].cor36.has_value(), second[k].cor36.has_value());
    if (first[k].cor36) EXPECT_EQ(*first[k].cor36, *second[k].cor36);
  }
}

TEST(PuiseuxBranches, DegreeBoundAndCounts) {
  for (const auto& f : corpus()) {
    auto b = puiseux_branches(f, Rational(2));
    EXPECT_EQ(b.beta.size(), b.n);
    EXPECT_EQ(b.gamma.size(), b.n - 1);
    for (const auto& r : b.beta) EXPECT_LE(b.series(r).degree(), ExtRational(Rational(static_cast<long>(b.D))));
    for (const auto& r : b.gamma) EXPECT_LE(b.series(r).degree(), ExtRational(Rational(static_cast<long>(b.D))));
  }
  EXPECT_THROW(puiseux_branches(y + x, Rational(0)), PreconditionError);
}
