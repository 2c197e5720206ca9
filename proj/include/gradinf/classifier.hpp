#pragma once

// Critical values at infinity and the exponent function lambda -> L_{inf,lambda}(f)
// of a plane polynomial in normal form, computed from the resultant profile.

#include "gradinf/algebraic.hpp"
#include "gradinf/bivariate.hpp"
#include "gradinf/ext_rational.hpp"
#include "gradinf/multipoly.hpp"
#include "gradinf/normalize.hpp"
#include "gradinf/resultant.hpp"
#include "gradinf/upoly.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gradinf {

// ---------------------------------------------------------------------------
// Points and sets of lambda values

/// A rational value, the roots of a squarefree rational polynomial, or the
/// generic value.
struct LambdaPoint {
  enum class Kind { Rational, Algebraic, Generic };
  Kind kind = Kind::Generic;
  Rational value{0};
  UPoly<Rational> modulus;

  static LambdaPoint rational(const Rational& r) {
    LambdaPoint p;
    p.kind = Kind::Rational;
    p.value = r;
    return p;
  }
  static LambdaPoint algebraic(const UPoly<Rational>& m) {
    if (m.degree() < 1) throw PreconditionError("root(...) needs a non-constant polynomial");
    if (m.degree() == 1) return rational(-m.coeff(0) / m.coeff(1));
    LambdaPoint p;
    p.kind = Kind::Algebraic;
    p.modulus = m.monic();
    return p;
  }
  static LambdaPoint generic() { return LambdaPoint{}; }

  bool is_rational() const { return kind == Kind::Rational; }
  bool is_algebraic() const { return kind == Kind::Algebraic; }
  bool is_generic() const { return kind == Kind::Generic; }

  std::string to_string() const {
    switch (kind) {
      case Kind::Rational: return value.get_str();
      case Kind::Algebraic: return "root(" + modulus.to_string("t") + ")";
      case Kind::Generic: return "generic";
    }
    return "";
  }

  /// The point c * lambda.
  LambdaPoint transported(const Rational& c) const;

  friend bool operator==(const LambdaPoint& a, const LambdaPoint& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::Rational) return a.value == b.value;
    if (a.kind == Kind::Algebraic) return a.modulus == b.modulus;
    return true;
  }
  friend bool operator<(const LambdaPoint& a, const LambdaPoint& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::Rational) return a.value < b.value;
    if (a.kind == Kind::Algebraic) {
      if (a.modulus.degree() != b.modulus.degree()) return a.modulus.degree() < b.modulus.degree();
      for (long i = a.modulus.degree(); i >= 0; --i) {
        int c = cmp(a.modulus.coeff(static_cast<std::size_t>(i)), b.modulus.coeff(static_cast<std::size_t>(i)));
        if (c != 0) return c < 0;
      }
    }
    return false;
  }
};

namespace detail {
/// p(t / c), made monic: its roots are c times the roots of p.
inline UPoly<Rational> scale_roots(const UPoly<Rational>& p, const Rational& c) {
  std::vector<Rational> v;
  Rational power(1);
  for (const auto& a : p.coeffs()) {
    v.push_back(a / power);
    power *= c;
  }
  return UPoly<Rational>(std::move(v)).monic();
}

inline UPoly<Rational> linear_factor(const Rational& r) { return UPoly<Rational>(std::vector<Rational>{-r, Rational(1)}); }
}  // namespace detail

inline LambdaPoint LambdaPoint::transported(const Rational& c) const {
  switch (kind) {
    case Kind::Rational: return rational(value * c);
    case Kind::Algebraic: return algebraic(detail::scale_roots(modulus, c));
    case Kind::Generic: return *this;
  }
  return *this;
}

/// A finite set of complex numbers that are roots of rational polynomials:
/// its rational elements plus one squarefree, rational-root-free residual.
struct ValueSet {
  std::vector<Rational> rational;
  UPoly<Rational> residual{Rational(1)};

  static ValueSet from_polynomial(const UPoly<Rational>& p) {
    ValueSet s;
    if (p.is_zero()) throw PreconditionError("value set of the zero polynomial");
    if (p.degree() == 0) return s;
    auto rr = rational_roots(p);
    s.rational = rr.roots;
    s.residual = rr.residual;
    return s;
  }

  static ValueSet from_points(const std::vector<LambdaPoint>& pts) {
    UPoly<Rational> acc(Rational(1));
    for (const auto& p : pts) {
      if (p.is_rational()) acc = acc * detail::linear_factor(p.value);
      if (p.is_algebraic()) acc = acc * p.modulus;
    }
    return from_polynomial(acc);
  }

  bool empty() const { return rational.empty() && residual.degree() < 1; }

  UPoly<Rational> defining_polynomial() const {
    UPoly<Rational> acc = residual;
    for (const auto& r : rational) acc = acc * detail::linear_factor(r);
    return acc;
  }

  std::vector<LambdaPoint> points() const {
    std::vector<LambdaPoint> out;
    for (const auto& r : rational) out.push_back(LambdaPoint::rational(r));
    if (residual.degree() >= 1) out.push_back(LambdaPoint::algebraic(residual));
    return out;
  }

  bool contains(const Rational& r) const {
    return std::find(rational.begin(), rational.end(), r) != rational.end();
  }

  ValueSet united(const ValueSet& o) const { return from_polynomial(defining_polynomial() * o.defining_polynomial()); }

  ValueSet transported(const Rational& c) const {
    ValueSet s;
    for (const auto& r : rational) s.rational.push_back(r * c);
    std::sort(s.rational.begin(), s.rational.end());
    s.residual = residual.degree() >= 1 ? detail::scale_roots(residual, c) : residual;
    return s;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& p : points()) out.push_back(p.to_string());
    return out;
  }

  friend bool operator==(const ValueSet& a, const ValueSet& b) {
    return a.rational == b.rational && a.residual == b.residual;
  }
};

// ---------------------------------------------------------------------------
// Dynamic-evaluation fork driver

enum class SplitOrder { FirstFactorFirst, SecondFactorFirst };

namespace detail {
inline std::vector<AlgNum> to_alg(const UPoly<Rational>& p) {
  std::vector<AlgNum> v;
  for (const auto& c : p.coeffs()) v.emplace_back(c);
  return v;
}
inline UPoly<Rational> to_rational_poly(const std::vector<AlgNum>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) {
    auto q = c.as_rational();
    if (!q) throw Error("split factor is not rational");
    out.push_back(*q);
  }
  return UPoly<Rational>(std::move(out));
}
}  // namespace detail

/// Runs fn at the point (a Rational, or the generator of Q[t]/(m) as an
/// AlgNum). A zero-divisor met at the first tower level splits the modulus
/// and fn is rerun on each factor; linear factors are evaluated as rationals.
/// Results are returned in canonical point order.
template <class Fn>
auto for_each_branch(const LambdaPoint& p, Fn&& fn, SplitOrder order = SplitOrder::FirstFactorFirst)
    -> std::vector<std::pair<LambdaPoint, decltype(fn(std::declval<const Rational&>()))>> {
  using R = decltype(fn(std::declval<const Rational&>()));
  std::vector<std::pair<LambdaPoint, R>> out;
  if (p.is_generic()) throw PreconditionError("a specific lambda is required (generic given)");
  if (p.is_rational()) {
    out.emplace_back(p, fn(p.value));
    return out;
  }
  std::deque<UPoly<Rational>> work{p.modulus};
  while (!work.empty()) {
    UPoly<Rational> m = work.front();
    work.pop_front();
    if (m.degree() == 1) {
      Rational r = -m.coeff(0) / m.coeff(1);
      out.emplace_back(LambdaPoint::rational(r), fn(r));
      continue;
    }
    auto tower = extend_tower(nullptr, detail::to_alg(m));
    try {
      out.emplace_back(LambdaPoint::algebraic(m), fn(AlgNum::generator(tower)));
    } catch (const SplitException& s) {
      if (s.level != 1) throw;
      auto a = detail::to_rational_poly(split_factor(s, true));
      auto b = detail::to_rational_poly(split_factor(s, false));
      if (order == SplitOrder::FirstFactorFirst) {
        work.push_front(b);
        work.push_front(a);
      } else {
        work.push_front(a);
        work.push_front(b);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Records

enum class ExponentCase { T41_i, T41_ii, T47, T48 };

inline const char* to_string(ExponentCase c) {
  switch (c) {
    case ExponentCase::T41_i: return "T41_i";
    case ExponentCase::T41_ii: return "T41_ii";
    case ExponentCase::T47: return "T47";
    case ExponentCase::T48: return "T48";
  }
  return "?";
}

struct ExponentRecord {
  LambdaPoint lambda;
  ExtRational value;
  ExponentCase which = ExponentCase::T48;
  bool in_Lambda = false;
  bool tilde_equal = true;  // the region-limit exponent agrees for n = 2
};

struct FiberRecord {
  LambdaPoint lambda;
  ExtRational value;
  LpCase which = LpCase::I;
};

enum class Relation { Equal, StrictlyLess };

inline const char* to_string(Relation r) { return r == Relation::Equal ? "equal" : "strictly_less"; }

struct Comparison {
  LambdaPoint lambda;
  ExtRational near;
  ExtRational on_fiber;
  Relation relation = Relation::Equal;
  std::string reason;
};

struct PairRecord {
  LambdaPoint lambda;
  ExtRational on_critical;  // f - lambda0 restricted to {f_y = 0}
  ExtRational on_fiber;     // f_y restricted to {f = lambda0}
  ExtRational pair;
};

/// The global gradient exponent when it is determined (< -1); otherwise only
/// the bound >= -1 is known.
struct GlobalExponent {
  bool determined = false;
  ExtRational value;
};

// ---------------------------------------------------------------------------
// Context

class Classifier {
 public:
  explicit Classifier(QPoly f) : f_(std::move(f)) {
    if (!is_normal_form(f_)) throw PreconditionError("classifier requires f in normal form (monic in y, deg f = deg_y f)");
    f_ = f_.compact();
    n_ = f_.total_degree();
    profile_ = resultant_profile(f_);
    QPoly lam = QPoly::variable("lambda");
    QPoly fy = f_.derivative("y");
    q0_u0_ = profile_.Q[0].substitute("u", QPoly(Rational(0))).to_upoly("lambda");
    lambda_values_ = ValueSet::from_polynomial(q0_u0_);
    fiber_res_ = generic_fiber_resultant(fy, f_ - lam);
    if (n_ >= 2) critical_res_ = generic_fiber_resultant(f_ - lam, fy.scaled(Rational(1, n_)));
  }

  const QPoly& f() const { return f_; }
  long n() const { return n_; }
  const ResultantProfile& profile() const { return profile_; }
  /// Q_0(lambda, 0).
  const UPoly<Rational>& q0_at_u0() const { return q0_u0_; }
  const ValueSet& lambda_values() const { return lambda_values_; }
  /// Res_y(f_y - tau, f - lambda) over Q[x, lambda, tau].
  const QPoly& fiber_resultant() const { return fiber_res_; }
  /// Res_y(f - lambda - tau, f_y / n) over Q[x, lambda, tau].
  const QPoly& critical_resultant() const {
    if (n_ < 2) throw PreconditionError("the critical curve {f_y = 0} needs deg f >= 2");
    return critical_res_;
  }

 private:
  QPoly f_;
  long n_ = 0;
  ResultantProfile profile_;
  UPoly<Rational> q0_u0_;
  ValueSet lambda_values_;
  QPoly fiber_res_;
  QPoly critical_res_;
};

namespace detail {

template <class S>
S value_at(const QPoly& q, const S& l0) {
  MultiPoly<S> s = q.substitute("lambda", MultiPoly<S>(l0));
  s = s.substitute("u", MultiPoly<S>(S(0)));
  return s.constant_term();
}

template <class S>
MultiPoly<S> specialize_lambda(const QPoly& q, const S& l0) {
  return q.substitute("lambda", MultiPoly<S>(l0));
}

/// max over i = 1..N of deg_u Q_i / i, skipping Q_i = 0; nullopt when all vanish.
template <class Poly>
std::optional<Rational> max_u_ratio(const std::vector<Poly>& q) {
  std::optional<Rational> best;
  for (std::size_t i = 1; i < q.size(); ++i) {
    ExtRational d = q[i].deg_in("u");
    if (d.is_neg_infinity()) continue;
    Rational r = d.value() / Rational(static_cast<long>(i));
    if (!best || r > *best) best = r;
  }
  return best;
}

struct ExponentValue {
  ExtRational value;
  ExponentCase which;
};

inline ExponentValue outside_lambda(const ResultantProfile& p) {
  if (p.Q[0].deg_in("u") == ExtRational(0)) {
    auto best = max_u_ratio(p.Q);
    if (!best || *best < Rational(1, static_cast<long>(std::max<std::size_t>(p.N, 1))))
      throw CrossCheckError("max deg_u Q_i / i is below 1/N although deg_u Q_0 = 0");
    return {ExtRational(Rational(1) / *best), ExponentCase::T47};
  }
  return {ExtRational(0), ExponentCase::T48};
}

template <class S>
ExponentValue exponent_value(const ResultantProfile& p, const S& l0) {
  if (!is_zero_checked(value_at(p.Q[0], l0))) return outside_lambda(p);
  std::vector<bool> vanish(p.N + 1);
  bool all = true;
  for (std::size_t i = 0; i <= p.N; ++i) {
    vanish[i] = is_zero_checked(value_at(p.Q[i], l0));
    all = all && vanish[i];
  }
  if (all) return {ExtRational::neg_infinity(), ExponentCase::T41_i};
  std::size_t r = 0;
  while (r + 1 <= p.N && vanish[r + 1]) ++r;
  std::optional<Rational> best;
  for (std::size_t i = 0; i <= r; ++i) {
    auto o = ord_at(p.Q[i], "lambda", l0, "u");
    if (!o) continue;
    Rational q(static_cast<long>(*o), static_cast<long>(r + 1 - i));
    q.canonicalize();
    if (!best || q < *best) best = q;
  }
  if (!best || sgn(*best) <= 0) throw CrossCheckError("order ratio is not positive at a critical value at infinity");
  return {ExtRational(Rational(-1) - Rational(1) / *best), ExponentCase::T41_ii};
}

inline ExponentRecord make_record(const LambdaPoint& at, const ExponentValue& v) {
  ExponentRecord rec;
  rec.lambda = at;
  rec.value = v.value;
  rec.which = v.which;
  rec.in_Lambda = v.which == ExponentCase::T41_i || v.which == ExponentCase::T41_ii;
  bool below_m1 = v.value < ExtRational(-1), below_0 = v.value < ExtRational(0);
  if (rec.in_Lambda != below_m1 || below_m1 != below_0)
    throw CrossCheckError("exponent at " + at.to_string() + " breaks the chain lambda in Lambda <=> value < -1 <=> value < 0");
  return rec;
}

template <class S>
LpResult fiber_value(const Classifier& c, const S& l0) {
  return lemma_lp_exponent(specialize_fiber(c.fiber_resultant(), l0));
}

template <class S>
bool in_lambda_at(const Classifier& c, const S& l0) {
  return is_zero_checked(value_at(c.profile().Q[0], l0));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Operations

inline std::vector<LambdaPoint> lambda_set(const Classifier& c) { return c.lambda_values().points(); }

inline ExponentRecord generic_exponent(const Classifier& c) {
  return detail::make_record(LambdaPoint::generic(), detail::outside_lambda(c.profile()));
}

/// One record per dynamic-evaluation branch of the point.
inline std::vector<ExponentRecord> exponent_at(const Classifier& c, const LambdaPoint& at,
                                               SplitOrder order = SplitOrder::FirstFactorFirst) {
  if (at.is_generic()) throw PreconditionError("exponent_at needs a specific lambda; use generic_exponent");
  auto branches =
      for_each_branch(at, [&](const auto& l0) { return detail::exponent_value(c.profile(), l0); }, order);
  std::vector<ExponentRecord> out;
  for (const auto& [pt, v] : branches) out.push_back(detail::make_record(pt, v));
  return out;
}

inline ExponentRecord exponent_at(const Classifier& c, const Rational& l0) {
  return exponent_at(c, LambdaPoint::rational(l0)).front();
}

struct ExponentFunction {
  ExponentRecord generic;
  std::vector<ExponentRecord> special;
};

inline ExponentFunction exponent_function(const Classifier& c) {
  ExponentFunction out;
  out.generic = generic_exponent(c);
  for (const auto& p : lambda_set(c))
    for (auto& r : exponent_at(c, p)) out.special.push_back(std::move(r));
  if (out.generic.value < ExtRational(0)) throw CrossCheckError("generic exponent is negative");
  for (const auto& r : out.special)
    if (!(r.value < ExtRational(-1))) throw CrossCheckError("exponent at a critical value at infinity is not below -1");
  return out;
}

inline std::vector<FiberRecord> fiber_exponent_at(const Classifier& c, const LambdaPoint& at,
                                                  SplitOrder order = SplitOrder::FirstFactorFirst) {
  auto branches = for_each_branch(at, [&](const auto& l0) { return detail::fiber_value(c, l0); }, order);
  std::vector<FiberRecord> out;
  for (const auto& [pt, v] : branches) out.push_back({pt, v.value, v.which});
  return out;
}

inline FiberRecord fiber_exponent_at(const Classifier& c, const Rational& l0) {
  return fiber_exponent_at(c, LambdaPoint::rational(l0)).front();
}

namespace detail {
template <class S>
Comparison compare_value(const Classifier& c, const S& l0) {
  const auto& p = c.profile();
  Comparison out;
  ExponentValue nv = exponent_value(p, l0);
  out.near = nv.value;
  out.on_fiber = fiber_value(c, l0).value;
  bool star = false;
  if (nv.which == ExponentCase::T47) {
    std::vector<MultiPoly<S>> spec;
    for (const auto& q : p.Q) spec.push_back(specialize_lambda(q, l0));
    auto left = max_u_ratio(p.Q);
    auto right = max_u_ratio(spec);
    star = left && (!right || *left > *right);
  }
  bool strict = (out.near.is_finite() && out.near < ExtRational(-1)) || (out.near > ExtRational(0) && star);
  if (out.on_fiber < out.near) throw CrossCheckError("on-fiber exponent lies below the near-fiber exponent");
  bool direct = out.near < out.on_fiber;
  if (strict != direct)
    throw CrossCheckError("side conditions predict " + std::string(strict ? "strictly_less" : "equal") +
                          " but the values are " + out.near.to_string() + " and " + out.on_fiber.to_string());
  out.relation = strict ? Relation::StrictlyLess : Relation::Equal;
  if (strict && out.near < ExtRational(-1))
    out.reason = "near-fiber exponent lies in (-inf,-1)";
  else if (strict)
    out.reason = "condition (*): the u-degree ratio drops at this value";
  else if (out.near.is_neg_infinity())
    out.reason = "both exponents are -inf";
  else if (nv.which == ExponentCase::T48)
    out.reason = "deg_u Q_0 > 0 forces both exponents to 0";
  else
    out.reason = "condition (*) fails: the u-degree ratio is unchanged";
  return out;
}
}  // namespace detail

inline std::vector<Comparison> compare_at(const Classifier& c, const LambdaPoint& at,
                                          SplitOrder order = SplitOrder::FirstFactorFirst) {
  auto branches = for_each_branch(at, [&](const auto& l0) { return detail::compare_value(c, l0); }, order);
  std::vector<Comparison> out;
  for (auto& [pt, v] : branches) {
    v.lambda = pt;
    out.push_back(std::move(v));
  }
  return out;
}

inline Comparison compare_at(const Classifier& c, const Rational& l0) {
  return compare_at(c, LambdaPoint::rational(l0)).front();
}

/// Exponent of the pair (f - lambda0, f_y) for lambda0 in Lambda(f).
inline std::vector<PairRecord> pair_exponent_if_negative(const Classifier& c, const LambdaPoint& at,
                                                         SplitOrder order = SplitOrder::FirstFactorFirst) {
  auto branches = for_each_branch(
      at,
      [&](const auto& l0) {
        if (!detail::in_lambda_at(c, l0))
          throw PreconditionError("lambda0 is not a critical value at infinity (Q_0(lambda0, 0) != 0)");
        PairRecord r;
        r.on_critical = lemma_lp_exponent(specialize_fiber(c.critical_resultant(), l0)).value;
        r.on_fiber = detail::fiber_value(c, l0).value;
        r.pair = (r.on_critical.is_neg_infinity() || r.on_fiber.is_neg_infinity()) ? ExtRational::neg_infinity()
                                                                                  : min(r.on_critical, r.on_fiber);
        return r;
      },
      order);
  std::vector<PairRecord> out;
  for (auto& [pt, v] : branches) {
    v.lambda = pt;
    out.push_back(std::move(v));
  }
  return out;
}

inline PairRecord pair_exponent_if_negative(const Classifier& c, const Rational& l0) {
  return pair_exponent_if_negative(c, LambdaPoint::rational(l0)).front();
}

struct KinfFedorjuk {
  ValueSet kinf;
  ValueSet fedorjuk;
};

inline KinfFedorjuk kinf_and_fedorjuk(const Classifier& c) {
  if (c.n() < 1) throw PreconditionError("non-constant polynomial required");
  auto fn = exponent_function(c);
  std::vector<LambdaPoint> k, fe;
  for (const auto& r : fn.special) {
    if (r.value < ExtRational(-1)) k.push_back(r.lambda);
    if (r.value < ExtRational(0)) fe.push_back(r.lambda);
  }
  KinfFedorjuk out{ValueSet::from_points(k), ValueSet::from_points(fe)};
  if (!(out.kinf == c.lambda_values()) || !(out.fedorjuk == c.lambda_values()))
    throw CrossCheckError("K_inf or the Fedorjuk set differs from Lambda(f)");
  return out;
}

inline GlobalExponent global_gradient_exponent(const Classifier& c) {
  auto fn = exponent_function(c);
  GlobalExponent g;
  if (fn.special.empty()) return g;
  ExtRational m = fn.special.front().value;
  for (const auto& r : fn.special) m = min(m, r.value);
  if (m < ExtRational(-1)) {
    g.determined = true;
    g.value = m;
  }
  return g;
}

/// Values lambda0 not in Lambda(f) at which condition (*) can hold: common
/// roots of the u-leading coefficients of the Q_i realizing the maximal ratio.
inline ValueSet star_candidates(const Classifier& c) {
  const auto& p = c.profile();
  if (detail::outside_lambda(p).which != ExponentCase::T47) return ValueSet{};
  auto best = detail::max_u_ratio(p.Q);
  UPoly<Rational> g;
  for (std::size_t i = 1; i <= p.N; ++i) {
    ExtRational d = p.Q[i].deg_in("u");
    if (d.is_neg_infinity() || d.value() / Rational(static_cast<long>(i)) != *best) continue;
    auto cu = p.Q[i].coefficients_in("u");
    g = gcd(g, cu.back().to_upoly("lambda"));
  }
  if (g.is_zero() || g.degree() < 1) return ValueSet{};
  g = squarefree_part(g);
  g = exact_quotient(g, gcd(g, squarefree_part(c.q0_at_u0())));
  return ValueSet::from_polynomial(g);
}

// ---------------------------------------------------------------------------
// Affine critical values

namespace detail {

inline TowerPtr tower_of(const Rational&) { return nullptr; }
inline TowerPtr tower_of(const AlgNum& a) { return a.tower(); }

/// Whether A(x, y) = B(x, y) = 0, f(x, y) = l0 has a solution with x a root of p.
template <class L>
bool has_isolated_point(const BiPoly<Rational>& A, const BiPoly<Rational>& B, const BiPoly<Rational>& F,
                        const UPoly<Rational>& p, const L& l0) {
  TowerPtr base = tower_of(l0);
  AlgNum lam(l0);
  const std::size_t xlevel = depth_of(base.get()) + 1;
  auto a = bivariate::convert<Rational, AlgNum>(A);
  auto b = bivariate::convert<Rational, AlgNum>(B);
  auto f = bivariate::convert<Rational, AlgNum>(F);
  std::deque<std::vector<AlgNum>> work{to_alg(p)};
  while (!work.empty()) {
    auto m = work.front();
    work.pop_front();
    auto tower = extend_tower(base, m);
    AlgNum x0 = AlgNum::generator(tower);
    try {
      UPoly<AlgNum> a0 = bivariate::eval_aux(a, x0), b0 = bivariate::eval_aux(b, x0);
      UPoly<AlgNum> f0 = bivariate::eval_aux(f, x0) - UPoly<AlgNum>(lam);
      UPoly<AlgNum> g = gcd(gcd(a0, b0), f0);
      if (g.degree() >= 1) return true;
    } catch (const SplitException& s) {
      if (s.level != xlevel) throw;
      work.push_front(split_factor(s, false));
      work.push_front(split_factor(s, true));
    }
  }
  return false;
}

}  // namespace detail

/// Critical values of a polynomial in normal form.
inline ValueSet affine_critical_values(const QPoly& g) {
  QPoly lam = QPoly::variable("lambda");
  auto bx = bivariate::from_multipoly(g.derivative("x"));
  auto by = bivariate::from_multipoly(g.derivative("y"));
  auto F = bivariate::from_multipoly(g);
  BiPoly<Rational> G = bivariate::gcd(bx, by);
  UPoly<Rational> acc(Rational(1));
  // One-dimensional critical components: f is constant on each of them.
  if (bivariate::degree(G) >= 1) {
    QPoly rc = resultant_y(bivariate::to_multipoly(G), g - lam);
    UPoly<Rational> vals;
    for (const auto& cx : rc.coefficients_in("x")) vals = gcd(vals, cx.to_upoly("lambda"));
    if (vals.degree() >= 1) acc = acc * vals;
  }
  // Isolated critical points: common zeros of f_x / G and f_y / G.
  BiPoly<Rational> A = bivariate::divide(bx, G), B = bivariate::divide(by, G);
  if (bivariate::degree(B) >= 1 && !A.empty()) {
    QPoly Am = bivariate::to_multipoly(A), Bm = bivariate::to_multipoly(B);
    UPoly<Rational> P = resultant_y(Bm, Am).to_upoly("x");
    if (P.degree() >= 1) {
      UPoly<Rational> psf = squarefree_part(P);
      QPoly W = resultant_y(Bm, g - lam);
      QPoly E = resultant_y(QPoly::from_upoly(psf, "x"), W, "x");
      auto cand = ValueSet::from_polynomial(E.to_upoly("lambda"));
      for (const auto& pt : cand.points()) {
        auto branches = for_each_branch(pt, [&](const auto& l0) { return detail::has_isolated_point(A, B, F, psf, l0); });
        for (const auto& [q, hit] : branches) {
          if (!hit) continue;
          acc = acc * (q.is_rational() ? detail::linear_factor(q.value) : q.modulus);
        }
      }
    }
  }
  return ValueSet::from_polynomial(acc);
}

struct BifurcationSets {
  ValueSet affine_critical;
  ValueSet bifurcation;
};

/// Critical values and bifurcation set of any non-constant plane polynomial,
/// in its own coordinates.
inline BifurcationSets bifurcation_set(const QPoly& f) {
  auto nf = normalize(f);
  Classifier c(nf.g);
  BifurcationSets out;
  ValueSet crit = affine_critical_values(c.f());
  out.affine_critical = crit.transported(nf.cert.scale);
  out.bifurcation = crit.united(c.lambda_values()).transported(nf.cert.scale);
  return out;
}

// ---------------------------------------------------------------------------
// Full analysis

struct AnalysisReport {
  QPoly input;
  QPoly normalized;
  NormalizationCert cert;
  std::size_t N = 0;
  ExtRational deg_u_Q0;
  std::vector<LambdaPoint> lambda_set;
  ExponentRecord generic;
  std::vector<ExponentRecord> special;
  std::vector<Comparison> comparisons;
  std::vector<PairRecord> pairs;
  ValueSet kinf;
  ValueSet fedorjuk;
  ValueSet affine_critical;
  ValueSet bifurcation;
  GlobalExponent global;
};

/// Everything is reported in the coordinates of the input f: a value lambda of
/// the normal form corresponds to scale * lambda for f.
inline AnalysisReport analyze(const QPoly& f) {
  auto nf = normalize(f);
  Classifier c(nf.g);
  const Rational& s = nf.cert.scale;
  AnalysisReport rep;
  rep.input = f;
  rep.normalized = c.f();
  rep.cert = nf.cert;
  rep.N = c.profile().N;
  rep.deg_u_Q0 = c.profile().Q[0].deg_in("u");
  for (const auto& p : lambda_set(c)) rep.lambda_set.push_back(p.transported(s));

  auto fn = exponent_function(c);
  rep.generic = fn.generic;
  for (auto r : fn.special) {
    r.lambda = r.lambda.transported(s);
    rep.special.push_back(std::move(r));
  }

  std::vector<LambdaPoint> probes = lambda_set(c);
  for (const auto& p : star_candidates(c).points()) probes.push_back(p);
  int samples = 0;
  for (long k = 0; samples < 2; ++k) {
    Rational v((k + 1) / 2 * (k % 2 == 1 ? 1 : -1));
    if (c.lambda_values().contains(v)) continue;
    if (!is_zero_checked(c.q0_at_u0().evaluate(v))) {
      probes.push_back(LambdaPoint::rational(v));
      ++samples;
    }
  }
  for (const auto& p : probes)
    for (auto cmp : compare_at(c, p)) {
      cmp.lambda = cmp.lambda.transported(s);
      rep.comparisons.push_back(std::move(cmp));
    }

  if (c.n() >= 2) {
    for (const auto& p : lambda_set(c)) {
      auto exps = exponent_at(c, p);
      auto pairs = pair_exponent_if_negative(c, p);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!(exps[i].value == pairs[i].pair - Rational(1)))
          throw CrossCheckError("exponent at " + p.to_string() + " differs from the pair exponent minus one");
        if (pairs[i].on_critical.is_finite() && pairs[i].on_fiber.is_finite() &&
            !(pairs[i].on_critical < pairs[i].on_fiber))
          throw CrossCheckError("exponent on the critical curve is not below the on-fiber exponent");
        pairs[i].lambda = pairs[i].lambda.transported(s);
        rep.pairs.push_back(pairs[i]);
      }
    }
  }

  auto kf = kinf_and_fedorjuk(c);
  rep.kinf = kf.kinf.transported(s);
  rep.fedorjuk = kf.fedorjuk.transported(s);
  ValueSet crit = affine_critical_values(c.f());
  rep.affine_critical = crit.transported(s);
  rep.bifurcation = crit.united(c.lambda_values()).transported(s);
  rep.global = global_gradient_exponent(c);
  return rep;
}

}  // namespace gradinf
