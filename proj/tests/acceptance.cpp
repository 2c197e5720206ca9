// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any
// failure. Every comparison is exact.

#include "gradinf/gradinf.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace gradinf;
using namespace gradinf::testing;

namespace {

const QPoly x = var("x"), y = var("y"), z = var("z");
const ExtRational NEG_INF = ExtRational::neg_infinity();

ExtRational q(long a, long b = 1) { return ExtRational(make_rational(a, b)); }

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  template <class A, class B>
  void equal(const A& a, const B& b, const std::string& what) {
    bool ok = a == b;
    if (ok) {
      expect(true, what);
      return;
    }
    std::ostringstream s;
    s << what << " (got " << a << ", expected " << b << ")";
    expect(false, s.str());
  }
  bool passed() const { return failed_ == 0 && count_ > 0; }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

UPoly<Rational> tpoly(std::vector<long> c) {
  std::vector<Rational> v;
  for (long a : c) v.emplace_back(a);
  return UPoly<Rational>(v);
}

QPoly two_point_lambda() { return y.pow(5) + x * (y.pow(2) - cst(1)).pow(2); }

std::vector<QPoly> examples() {
  return {family_b(2), family_b(3), family_b(4), y.pow(2), y.pow(2) + x, y.pow(2) + x * y};
}

bool has_finite_rational_point(const Classifier& c) {
  for (const auto& p : lambda_set(c))
    if (p.is_rational() && exponent_at(c, p.value).value.is_finite()) return true;
  return false;
}

// Normal-form polynomials x*A(y) + B(y) + (lower terms) of degree <= 5 where
// A has integer roots, filtered to those with a rational point of Lambda
// carrying a finite exponent. The seed is fixed.
std::vector<QPoly> random_normal_forms() {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> root(-2, 2), coef(-3, 3), mult(1, 2), deg(3, 5), flip(0, 3);
  std::vector<QPoly> out;
  std::vector<std::string> seen;
  while (out.size() < 10) {
    int d = deg(rng);
    QPoly a = cst(1);
    int da = 0;
    while (da < d - 2) {
      int m = std::min(mult(rng), d - 2 - da);
      a = a * (y - cst(root(rng))).pow(static_cast<unsigned>(m));
      da += m;
      if (flip(rng) == 0) break;
    }
    QPoly b = y.pow(static_cast<unsigned>(d));
    for (int k = 0; k < d; ++k) b = b + cst(coef(rng)) * y.pow(static_cast<unsigned>(k));
    QPoly f = x * a + b;
    if (d >= 4 && flip(rng) == 0) f = f + cst(coef(rng)) * x * x;
    if (!is_normal_form(f) || f.deg_in("y") < ExtRational(2)) continue;
    std::string key = f.to_string();
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    Classifier c(f);
    if (!has_finite_rational_point(c)) continue;
    out.push_back(f);
  }
  return out;
}

const std::vector<QPoly>& corpus() {
  static const std::vector<QPoly> all = [] {
    auto v = examples();
    v.push_back(two_point_lambda());
    v.push_back(y.pow(5) + x * (y.pow(2) - cst(2)).pow(2) + y);
    for (auto& f : random_normal_forms()) v.push_back(f);
    return v;
  }();
  return all;
}

std::vector<Rational> samples_off_lambda(const Classifier& c, std::size_t count) {
  std::vector<Rational> out;
  for (long k = -7; out.size() < count; ++k) {
    Rational v(k, 3);
    v.canonicalize();
    if (c.q0_at_u0().evaluate(v) == 0) continue;
    out.push_back(v);
  }
  return out;
}

void criterion1(Check& ck) {
  for (unsigned n : {2u, 3u, 4u}) {
    Classifier c(family_b(n));
    auto fn = exponent_function(c);
    std::string tag = "n=" + std::to_string(n);
    ck.equal(fn.generic.value, q(1, n), tag + " generic");
    ck.expect(fn.special.size() == 1, tag + " one special point");
    if (fn.special.size() == 1) {
      ck.expect(fn.special[0].lambda == LambdaPoint::rational(Rational(0)), tag + " special at 0");
      ck.equal(fn.special[0].value, ExtRational(Rational(-1) - make_rational(1, n - 1)), tag + " special value");
    }
    ck.equal(c.lambda_values().to_strings().size(), std::size_t{1}, tag + " |Lambda|");
    ck.expect(c.lambda_values().to_strings() == std::vector<std::string>{"0"}, tag + " Lambda = {0}");
  }
}

void criterion2(Check& ck) {
  Classifier c(y.pow(2));
  auto g = generic_exponent(c);
  ck.equal(g.value, q(0), "generic");
  ck.equal(std::string(to_string(g.which)), std::string("T48"), "generic case");
  auto r = exponent_at(c, Rational(0));
  ck.equal(r.value, NEG_INF, "value at 0");
  ck.equal(std::string(to_string(r.which)), std::string("T41_i"), "case at 0");
}

void criterion3(Check& ck) {
  QPoly f = y.pow(2) + x;
  Classifier c(f);
  ck.equal(generic_exponent(c).value, q(1, 2), "formula path");
  for (long l : {-2L, 0L, 3L}) {
    auto cmp = compare_at(c, Rational(l));
    ck.equal(cmp.on_fiber, q(1, 2), "on-fiber path");
    ck.expect(cmp.relation == Relation::Equal, "equality conditions hold");
    ck.equal(exponent_at(c, Rational(l)).value, q(1, 2), "exponent_at");
  }
  LaurentCurve phi{LaurentPoly<Rational>::monomial(Rational(-1), 2), LaurentPoly<Rational>::monomial(Rational(1), 1)};
  auto w = witness(f, {"x", "y"}, phi, Rational(0));
  ck.expect(w.valid, "witness valid");
  ck.expect(w.ratio && *w.ratio == q(1, 2), "witness ratio 1/2");
  ck.equal(generic_exponent(Classifier(y.pow(2) + x * y)).value, q(1), "y^2 + x*y generic");
  ck.equal(analyze(x * y).generic.value, q(1), "x*y generic");
}

void criterion4(Check& ck) {
  for (const auto& f : corpus()) {
    Classifier c(f);
    for (const auto& pt : lambda_set(c)) {
      auto recs = exponent_at(c, pt);
      auto pairs = pair_exponent_if_negative(c, pt);
      ck.equal(recs.size(), pairs.size(), f.to_string() + " record count");
      for (std::size_t k = 0; k < std::min(recs.size(), pairs.size()); ++k) {
        if (!recs[k].value.is_finite()) continue;
        ck.equal(recs[k].value, pairs[k].pair - Rational(1), f.to_string() + " at " + recs[k].lambda.to_string());
      }
    }
  }
}

void criterion5(Check& ck) {
  for (const auto& f : corpus()) {
    Classifier c(f);
    for (const auto& pt : lambda_set(c)) {
      auto recs = exponent_at(c, pt);
      auto pairs = pair_exponent_if_negative(c, pt);
      auto bundles = oracle_at(f, pt);
      std::string tag = f.to_string() + " at " + pt.to_string();
      ck.equal(bundles.size(), recs.size(), tag + " branch count");
      for (std::size_t k = 0; k < std::min(bundles.size(), recs.size()); ++k) {
        if (recs[k].value.is_finite()) {
          ck.expect(bundles[k].cor36.has_value(), tag + " contact exponent defined");
          if (bundles[k].cor36) ck.equal(*bundles[k].cor36, recs[k].value, tag + " contact exponent");
        }
        ck.expect(bundles[k].prop22.equal, tag + " gradient identity");
        ck.equal(bundles[k].lemma31.on_fiber, pairs[k].on_fiber, tag + " on fiber");
        ck.equal(bundles[k].lemma31.on_critical, pairs[k].on_critical, tag + " on critical curve");
      }
      if (pt.is_rational()) {
        ck.expect(prop22_check(f, pt.value).equal, tag + " prop22_check");
        auto l = lemma31_exponents(f, pt.value);
        ck.equal(l.on_fiber, pairs[0].on_fiber, tag + " lemma31 fiber");
        ck.equal(l.on_critical, pairs[0].on_critical, tag + " lemma31 critical");
        if (recs[0].value.is_finite()) ck.equal(cor36_exponent(f, pt.value), recs[0].value, tag + " cor36_exponent");
      }
    }
    for (const auto& l : samples_off_lambda(c, 2)) {
      std::string tag = f.to_string() + " at " + l.get_str();
      ck.expect(prop22_check(f, l).equal, tag + " prop22_check");
      auto o = lemma31_exponents(f, l);
      ck.equal(o.on_fiber, fiber_exponent_at(c, l).value, tag + " on fiber");
      ck.equal(o.on_critical, lemma_lp_exponent(specialize_fiber(c.critical_resultant(), l)).value,
               tag + " on critical curve");
    }
  }
}

void criterion6(Check& ck) {
  for (const auto& f : corpus()) {
    Classifier c(f);
    auto g = generic_exponent(c).value;
    ck.expect(g >= q(0), f.to_string() + " generic non-negative");
    for (const auto& l : samples_off_lambda(c, 5)) ck.equal(exponent_at(c, l).value, g, f.to_string() + " constant");
    for (const auto& pt : lambda_set(c))
      for (const auto& r : exponent_at(c, pt))
        ck.expect(r.value < q(-1), f.to_string() + " Lambda value < -1 at " + r.lambda.to_string());
  }
}

void criterion7(Check& ck) {
  auto b = compare_at(Classifier(family_b(2)), Rational(0));
  ck.expect(b.near == q(-2) && b.on_fiber == q(0) && b.relation == Relation::StrictlyLess, "example b at 0");
  auto c0 = compare_at(Classifier(y.pow(2)), Rational(0));
  ck.expect(c0.near == NEG_INF && c0.on_fiber == NEG_INF && c0.relation == Relation::Equal, "y^2 at 0");
  auto c5 = compare_at(Classifier(y.pow(2)), Rational(5));
  ck.expect(c5.near == q(0) && c5.on_fiber == q(0) && c5.relation == Relation::Equal, "y^2 at 5");
  for (const auto& f : corpus()) {
    Classifier c(f);
    std::vector<LambdaPoint> pts = lambda_set(c);
    for (const auto& l : samples_off_lambda(c, 2)) pts.push_back(LambdaPoint::rational(l));
    for (const auto& pt : pts)
      for (const auto& r : compare_at(c, pt)) {
        ck.expect(r.near <= r.on_fiber, f.to_string() + " near <= on fiber");
        ck.expect((r.relation == Relation::Equal) == (r.near == r.on_fiber), f.to_string() + " relation");
      }
  }
}

void criterion8(Check& ck) {
  QPoly fr = (x * y - cst(1)) * y * z;
  std::vector<std::string> xyz{"x", "y", "z"};
  using LP = LaurentPoly<Rational>;
  for (long l : {0L, 1L, -3L}) {
    Rational lam(l);
    LaurentCurve phi{LP::monomial(Rational(1), 1), LP::monomial(make_rational(1, 2), -1), LP::monomial(Rational(-4) * lam, 1)};
    ck.expect(eval_on_curve(fr, xyz, phi) == LP(lam), "f o Phi = lambda for " + lam.get_str());
    auto w = witness(fr, xyz, phi, lam);
    ck.expect(w.valid, "valid witness");
    if (l != 0) {
      ck.expect(w.ratio && *w.ratio == q(-1), "ratio -1");
      auto p = prop621_check(fr, xyz, phi, lam, false);
      ck.expect(p.applicable && p.concluded == q(-1), "concludes -1 at " + lam.get_str());
    }
  }
  LaurentCurve tilde{LP::monomial(Rational(1), 1), LP::monomial(Rational(1), -1), LP()};
  auto w = witness(fr, xyz, tilde, Rational(0));
  ck.expect(w.valid && w.ratio && w.ratio->is_neg_infinity(), "degenerate curve ratio -inf");
}

std::vector<std::pair<std::string, std::string>> exponent_multiset(const AnalysisReport& r) {
  std::vector<std::pair<std::string, std::string>> v;
  for (const auto& s : r.special) v.emplace_back(s.lambda.to_string(), s.value.to_string());
  std::sort(v.begin(), v.end());
  return v;
}

void criterion9(Check& ck) {
  for (const auto& f : corpus()) {
    auto base = analyze(f);
    for (long a : {1L, -1L, 2L}) {
      QPoly sheared = f.substitute("x", x + y.scaled(Rational(a)));
      auto rep = analyze(sheared);
      std::string tag = f.to_string() + " shear " + std::to_string(a);
      ck.expect(exponent_multiset(rep) == exponent_multiset(base), tag + " special exponents");
      ck.equal(rep.generic.value, base.generic.value, tag + " generic");
      ck.expect(rep.kinf == base.kinf, tag + " K_inf");
    }
    // A scaled copy checks the lambda transport through the certificate.
    auto scaled = analyze(f.scaled(Rational(3)));
    auto expected = exponent_multiset(base);
    for (auto& [l, v] : expected) {
      auto p = parse_lambda(l);
      l = p.transported(Rational(3)).to_string();
    }
    std::sort(expected.begin(), expected.end());
    ck.expect(exponent_multiset(scaled) == expected, f.to_string() + " scaled by 3");
  }
}

void criterion10(Check& ck) {
  std::mt19937 rng(77);
  int checked = 0;
  while (checked < 100) {
    std::uniform_int_distribution<int> dg(1, 4);
    int da = dg(rng), db = dg(rng);
    if (da + db > 6) continue;
    QPoly a = y.pow(static_cast<unsigned>(da)) * random_poly(rng, {"x"}, 2, 2) + random_poly(rng, {"x", "y"}, 2, 3);
    QPoly b = y.pow(static_cast<unsigned>(db)) * random_poly(rng, {"lambda"}, 1, 2) + random_poly(rng, {"x", "y"}, 2, 3);
    if (a.deg_in("y") < ExtRational(1) && b.deg_in("y") < ExtRational(1)) continue;
    auto m = sylvester_matrix(a, b);
    ck.expect(bareiss_determinant(m) == cofactor_determinant(m), "Bareiss vs cofactor");
    ++checked;
  }

  std::mt19937 rng2(2024);
  int pairs = 0;
  while (pairs < 100) {
    QPoly a = random_poly(rng2, {"lambda", "u"}, 3, 3);
    QPoly b = random_poly(rng2, {"lambda", "u"}, 3, 3);
    if (a.is_zero() || b.is_zero()) continue;
    ck.equal((a * b).deg_in("u"), a.deg_in("u") + b.deg_in("u"), "deg additivity");
    auto oa = ord_at(a, "lambda", Rational(1), "u");
    auto ob = ord_at(b, "lambda", Rational(1), "u");
    auto oab = ord_at(a * b, "lambda", Rational(1), "u");
    ck.expect(oa && ob && oab && *oab == *oa + *ob, "ord additivity");
    ++pairs;
  }

  for (const auto& f : {two_point_lambda(), y.pow(2), family_b(2)}) {
    Classifier c(f);
    for (const auto& m : {tpoly({-1, 0, 1}), tpoly({0, -1, 0, 1})}) {
      auto pt = LambdaPoint::algebraic(m);
      auto a = exponent_at(c, pt, SplitOrder::FirstFactorFirst);
      auto b = exponent_at(c, pt, SplitOrder::SecondFactorFirst);
      bool same = a.size() == b.size();
      for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].lambda == b[i].lambda && a[i].value == b[i].value && a[i].which == b[i].which;
      ck.expect(same, f.to_string() + " split order at " + pt.to_string());
      if (f.deg_in("y") >= ExtRational(2)) {
        auto oa = oracle_at(f, pt, SplitOrder::FirstFactorFirst);
        auto ob = oracle_at(f, pt, SplitOrder::SecondFactorFirst);
        bool osame = oa.size() == ob.size();
        for (std::size_t i = 0; osame && i < oa.size(); ++i)
          osame = oa[i].lambda == ob[i].lambda && oa[i].prop22.lhs == ob[i].prop22.lhs && oa[i].cor36 == ob[i].cor36;
        ck.expect(osame, f.to_string() + " oracle split order at " + pt.to_string());
      }
    }
  }

  for (const auto& f : corpus()) {
    Classifier c(f);
    std::vector<Rational> probes;
    for (const auto& p : lambda_set(c))
      if (p.is_rational()) probes.push_back(p.value);
    for (const auto& l : samples_off_lambda(c, 1)) probes.push_back(l);
    for (const auto& l0 : probes) {
      auto m = contact_matrix(puiseux_branches(f, l0));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
          for (std::size_t k = j + 1; k < m.size(); ++k) {
            std::vector<ExtRational> v{m(i, j), m(j, k), m(i, k)};
            std::sort(v.begin(), v.end());
            ck.expect(v[1] == v[2], f.to_string() + " ultrametric");
          }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<void(Check&)> run;
  };
  std::vector<Criterion> criteria{
      {1, "family y^(n+1)+x*y^n+y exponent function", criterion1},
      {2, "y^2 exponents and cases", criterion2},
      {3, "y^2+x generic 1/2 by three paths; y^2+x*y generic 1", criterion3},
      {4, "exponent equals pair exponent minus one on Lambda", criterion4},
      {5, "Puiseux oracle agrees with the resultant classifier", criterion5},
      {6, "exponent constant off Lambda and below -1 on Lambda", criterion6},
      {7, "near-fiber versus on-fiber comparisons", criterion7},
      {8, "Rabier witnesses", criterion8},
      {9, "coordinate invariance under shears", criterion9},
      {10, "property suites", criterion10},
  };
  std::cout << "corpus: " << corpus().size() << " polynomials\n";
  for (const auto& f : corpus()) std::cout << "  " << f.to_string() << "\n";
  int failed = 0;
  for (const auto& c : criteria) {
    Check ck;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(ck);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && ck.passed();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " (" << ck.count()
              << " checks, " << static_cast<int>(secs * 1000) << " ms)\n";
    if (!error.empty()) std::cout << "  exception: " << error << "\n";
    for (const auto& f : ck.failures()) std::cout << "  " << f << "\n";
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
