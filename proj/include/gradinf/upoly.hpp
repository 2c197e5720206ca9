#pragma once

// Dense univariate polynomials over a field (Rational or AlgNum), with the
// gcd machinery used for squarefree parts, rational roots and tower moduli.

#include "gradinf/algebraic.hpp"
#include "gradinf/ext_rational.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gradinf {

template <class S>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(const S& constant) {  // NOLINT(implicit)
    if (!gradinf::is_zero(constant)) c_.push_back(constant);
  }

  static UPoly monomial(const S& coef, std::size_t power) {
    std::vector<S> v(power + 1, S(0));
    v[power] = coef;
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(S(1), 1); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<S>& coeffs() const { return c_; }
  S coeff(std::size_t i) const { return i < c_.size() ? c_[i] : S(0); }
  const S& lc() const { return c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<S> r(std::max(a.c_.size(), b.c_.size()), S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    std::vector<S> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(-x);
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<S> r(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }
  UPoly scaled(const S& s) const {
    std::vector<S> r;
    r.reserve(c_.size());
    for (const auto& x : c_) r.push_back(x * s);
    return UPoly(std::move(r));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  S evaluate(const S& at) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
    return acc;
  }

  /// p(x + shift), by repeated synthetic division.
  UPoly shifted(const S& shift) const {
    std::vector<S> a = c_;
    std::size_t n = a.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t i = n - 1; i > k; --i) a[i - 1] = a[i - 1] + shift * a[i];
    return UPoly(std::move(a));
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<S> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * S(static_cast<long>(i)));
    return UPoly(std::move(r));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(inverse(lc()));
  }

  /// Lowest index with a coefficient that does not vanish (D5-checked);
  /// -1 for the zero polynomial.
  long order_checked() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero_checked(c_[i])) return static_cast<long>(i);
    return -1;
  }
  /// Degree after discarding leading coefficients that vanish (D5-checked).
  long degree_checked() const {
    for (std::size_t i = c_.size(); i-- > 0;)
      if (!is_zero_checked(c_[i])) return static_cast<long>(i);
    return -1;
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (gradinf::is_zero(c_[i])) continue;
      std::string coef = gradinf::to_string(c_[i]);
      bool neg = !coef.empty() && coef[0] == '-' && coef.find_first_of("+ ", 1) == std::string::npos;
      if (neg) coef = coef.substr(1);
      bool compound = coef.find_first_of("+-* ") != std::string::npos;
      if (compound) coef = "(" + coef + ")";
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
      if (mon.empty())
        os << coef;
      else if (coef == "1")
        os << mon;
      else
        os << coef << "*" << mon;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && gradinf::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<S> c_;
};

template <class S>
std::pair<UPoly<S>, UPoly<S>> divmod(const UPoly<S>& a, const UPoly<S>& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<S> rem = a.coeffs();
  long db = b.degree();
  if (a.degree() < db) return {UPoly<S>(), a};
  S inv_lc = inverse(b.lc());
  std::vector<S> q(static_cast<std::size_t>(a.degree() - db + 1), S(0));
  for (long i = a.degree(); i >= db; --i) {
    S coef = rem[static_cast<std::size_t>(i)] * inv_lc;
    if (is_zero(coef)) continue;
    q[static_cast<std::size_t>(i - db)] = coef;
    for (long j = 0; j <= db; ++j) {
      auto k = static_cast<std::size_t>(i - db + j);
      rem[k] = rem[k] - coef * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly<S>(std::move(q)), UPoly<S>(std::move(rem))};
}

template <class S>
UPoly<S> operator%(const UPoly<S>& a, const UPoly<S>& b) {
  return divmod(a, b).second;
}

template <class S>
UPoly<S> exact_quotient(const UPoly<S>& a, const UPoly<S>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error("polynomial division is not exact");
  return q;
}

/// Monic gcd. Over a tower, inverting a zero-divisor leading coefficient
/// raises a SplitException.
template <class S>
UPoly<S> gcd(UPoly<S> a, UPoly<S> b) {
  while (!b.is_zero()) {
    UPoly<S> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// p / gcd(p, p'), normalized monic.
template <class S>
UPoly<S> squarefree_part(const UPoly<S>& p) {
  if (p.is_zero()) throw PreconditionError("squarefree part of the zero polynomial");
  if (p.degree() == 0) return UPoly<S>(S(1));
  return exact_quotient(p, gcd(p, p.derivative())).monic();
}

struct RationalRoots {
  std::vector<Rational> roots;  // ascending, each listed once
  UPoly<Rational> residual;     // monic, free of rational roots, squarefree
};

namespace detail {

inline int sign_at(const std::vector<Integer>& p, const Integer& x) {
  Integer acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return sgn(acc);
}

inline int sign_at(const UPoly<Rational>& p, const Integer& x) { return sgn(p.evaluate(Rational(x))); }

inline int sturm_variations(const std::vector<UPoly<Rational>>& chain, const Integer& x) {
  int prev = 0, count = 0;
  for (const auto& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }
  return count;
}

// Integer roots of a squarefree monic integer polynomial by Sturm bisection on
// integer intervals (a, b].
inline void integer_roots(const std::vector<Integer>& monic, std::vector<Integer>& out) {
  std::vector<Rational> rc;
  rc.reserve(monic.size());
  for (const auto& c : monic) rc.emplace_back(c);
  UPoly<Rational> p(rc);
  if (p.degree() < 1) return;
  std::vector<UPoly<Rational>> chain{p, p.derivative()};
  while (chain.back().degree() > 0) {
    UPoly<Rational> r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  Integer bound = 1;
  for (const auto& c : monic) {
    Integer a = abs(c);
    if (a > bound) bound = a;
  }
  bound += 1;
  struct Interval {
    Integer lo, hi;
    int count;
  };
  std::vector<Interval> work;
  Integer lo = -bound, hi = bound;
  int total = sturm_variations(chain, lo) - sturm_variations(chain, hi);
  if (total > 0) work.push_back({lo, hi, total});
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    if (iv.hi - iv.lo == 1) {
      if (sign_at(monic, iv.hi) == 0) out.push_back(iv.hi);
      continue;
    }
    Integer mid = iv.lo + (iv.hi - iv.lo) / 2;
    int left = sturm_variations(chain, iv.lo) - sturm_variations(chain, mid);
    int right = iv.count - left;
    if (left > 0) work.push_back({iv.lo, mid, left});
    if (right > 0) work.push_back({mid, iv.hi, right});
  }
}

}  // namespace detail

/// All rational roots (listed once) and the rational-root-free squarefree residual.
inline RationalRoots rational_roots(const UPoly<Rational>& p) {
  if (p.is_zero()) throw PreconditionError("rational roots of the zero polynomial");
  UPoly<Rational> sf = squarefree_part(p);
  RationalRoots result;
  if (is_zero(sf.coeff(0)) && sf.degree() > 0) {
    result.roots.emplace_back(0);
    sf = exact_quotient(sf, UPoly<Rational>::x());
  }
  if (sf.degree() >= 1) {
    // Clear denominators to a primitive integer polynomial a_d x^d + ... + a_0.
    Integer den = 1;
    for (const auto& c : sf.coeffs()) den = lcm(den, Integer(c.get_den()));
    std::vector<Integer> ic;
    for (const auto& c : sf.coeffs()) ic.push_back(Integer(c * den));
    Integer g = 0;
    for (const auto& c : ic) g = gcd(g, c);
    for (auto& c : ic) c /= g;
    // z = a_d x turns it into a monic integer polynomial.
    std::size_t d = ic.size() - 1;
    Integer ad = ic[d];
    std::vector<Integer> monic(d + 1);
    // monic[i] = a_i * a_d^(d-1-i) for i < d.
    Integer power = 1;
    for (std::size_t i = d; i-- > 0;) {
      monic[i] = ic[i] * power;
      power *= ad;
    }
    monic[d] = 1;
    std::vector<Integer> iroots;
    detail::integer_roots(monic, iroots);
    for (const auto& z : iroots) {
      Rational r(z, ad);
      r.canonicalize();
      result.roots.push_back(r);
      sf = exact_quotient(sf, UPoly<Rational>(std::vector<Rational>{-r, Rational(1)}));
    }
  }
  std::sort(result.roots.begin(), result.roots.end());
  result.residual = sf.monic();
  return result;
}

}  // namespace gradinf
