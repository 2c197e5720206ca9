#pragma once

#include "gradinf/ext_rational.hpp"
#include "gradinf/multipoly.hpp"

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gradinf {

/// Finite Laurent polynomial in one parameter (default "t").
template <class S>
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const S& c) {  // NOLINT(implicit)
    if (!gradinf::is_zero(c)) terms_.emplace(0, c);
  }
  LaurentPoly(int c) : LaurentPoly(S(c)) {}  // NOLINT(implicit)

  static LaurentPoly monomial(const S& c, std::int64_t e) {
    LaurentPoly p;
    if (!gradinf::is_zero(c)) p.terms_.emplace(e, c);
    return p;
  }
  static LaurentPoly t() { return monomial(S(1), 1); }

  const std::map<std::int64_t, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  S coeff(std::int64_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? S(0) : it->second;
  }

  ExtRational degree() const {
    if (terms_.empty()) return ExtRational::neg_infinity();
    return ExtRational(Rational(static_cast<long>(terms_.rbegin()->first)));
  }

  /// Leading exponent after discarding coefficients that vanish (D5-checked).
  ExtRational degree_checked() const {
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      if (!is_zero_checked(it->second)) return ExtRational(Rational(static_cast<long>(it->first)));
    return ExtRational::neg_infinity();
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  LaurentPoly pow(unsigned k) const {
    LaurentPoly r(S(1)), base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  /// t -> t^k for k >= 1.
  LaurentPoly reparametrized(std::int64_t k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e * k, c);
    return r;
  }

  /// Drops every term of exponent below `floor`.
  LaurentPoly truncated_below(std::int64_t floor) const {
    LaurentPoly r;
    for (auto it = terms_.lower_bound(floor); it != terms_.end(); ++it) r.terms_.insert(*it);
    return r;
  }

  void add_term(std::int64_t e, const S& c) {
    if (gradinf::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (gradinf::is_zero(it->second)) terms_.erase(it);
  }

  std::string to_string(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string coef = gradinf::to_string(it->second);
      bool neg = !coef.empty() && coef[0] == '-' && coef.find_first_of("+ ", 1) == std::string::npos;
      if (neg) coef = coef.substr(1);
      if (coef.find_first_of("+-* ") != std::string::npos) coef = "(" + coef + ")";
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      std::string mon;
      if (it->first == 1)
        mon = var;
      else if (it->first != 0)
        mon = var + "^" + std::to_string(it->first);
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
  std::map<std::int64_t, S> terms_;
};

template <class S>
ExtRational laurent_degree(const LaurentPoly<S>& q) {
  return q.degree();
}

/// p(phi_1(t), ..., phi_n(t)); phi[i] substitutes the i-th variable of `vars`.
template <class S>
LaurentPoly<S> eval_on_curve(const MultiPoly<S>& p, const std::vector<std::string>& vars,
                             const std::vector<LaurentPoly<S>>& phi) {
  if (vars.size() != phi.size())
    throw PreconditionError("curve has " + std::to_string(phi.size()) + " components but the polynomial has " +
                            std::to_string(vars.size()) + " variables");
  for (const auto& v : p.used_vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw PreconditionError("variable '" + v + "' has no curve component");
  auto q = p.over(vars);
  // Power caches per variable keep repeated exponents cheap.
  std::vector<std::vector<LaurentPoly<S>>> powers(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) powers[i].push_back(LaurentPoly<S>(S(1)));
  LaurentPoly<S> acc;
  for (const auto& [e, c] : q.terms()) {
    LaurentPoly<S> term(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& cache = powers[i];
      while (cache.size() <= e[i]) cache.push_back(cache.back() * phi[i]);
      term = term * cache[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

/// Overload using the polynomial's own variable order.
template <class S>
LaurentPoly<S> eval_on_curve(const MultiPoly<S>& p, const std::vector<LaurentPoly<S>>& phi) {
  return eval_on_curve(p, p.vars(), phi);
}

}  // namespace gradinf
