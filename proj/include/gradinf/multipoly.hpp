#pragma once

#include "gradinf/algebraic.hpp"
#include "gradinf/ext_rational.hpp"
#include "gradinf/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gradinf {

// Fixed variable order used everywhere: x, y, z, lambda, u, tau, s, t, then
// any other name alphabetically.
inline int variable_rank(const std::string& name) {
  static const char* const known[] = {"x", "y", "z", "lambda", "u", "tau", "s", "t"};
  for (int i = 0; i < 8; ++i)
    if (name == known[i]) return i;
  return 100;
}

inline bool variable_less(const std::string& a, const std::string& b) {
  int ra = variable_rank(a), rb = variable_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic, descending: larger monomials first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial in named variables over S (Rational or AlgNum).
template <class S>
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, S, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end(), variable_less);
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  }
  MultiPoly(const S& c) {  // NOLINT(implicit)
    if (!gradinf::is_zero(c)) terms_.emplace(Exponents{}, c);
  }
  MultiPoly(int c) : MultiPoly(S(c)) {}  // NOLINT(implicit)

  static MultiPoly variable(const std::string& name) {
    MultiPoly p(std::vector<std::string>{name});
    p.terms_.emplace(Exponents{1}, S(1));
    return p;
  }

  static MultiPoly monomial(const S& coef, const std::vector<std::string>& vars, Exponents e) {
    MultiPoly p(vars);
    if (!gradinf::is_zero(coef)) p.terms_.emplace(std::move(e), coef);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> index_of(const std::string& v) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return i;
    return std::nullopt;
  }

  /// Variables that actually occur in some term.
  std::vector<std::string> used_vars() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      bool used = false;
      for (const auto& [e, c] : terms_)
        if (e[i] != 0) {
          used = true;
          break;
        }
      if (used) out.push_back(vars_[i]);
    }
    return out;
  }

  /// Same polynomial expressed over the variable list `vars` (a superset of the used variables).
  MultiPoly over(const std::vector<std::string>& vars) const {
    MultiPoly r(vars);
    if (r.vars_ == vars_) {
      r.terms_ = terms_;
      return r;
    }
    std::vector<std::optional<std::size_t>> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) map[i] = r.index_of(vars_[i]);
    for (const auto& [e, c] : terms_) {
      Exponents ne(r.vars_.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!map[i]) throw Error("variable '" + vars_[i] + "' is not in the target variable list");
        ne[*map[i]] = e[i];
      }
      r.terms_.emplace(std::move(ne), c);
    }
    return r;
  }

  MultiPoly compact() const { return over(used_vars()); }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) {
      auto v = merged(a, b);
      return a.over(v) + b.over(v);
    }
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ != b.vars_) {
      auto v = merged(a, b);
      return a.over(v) * b.over(v);
    }
    MultiPoly r(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const S& s) const {
    MultiPoly r(vars_);
    if (gradinf::is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly r(S(1));
    MultiPoly base = *this;
    while (k) {
      if (k & 1u) r = r * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return r;
  }

  /// Equality up to unused variables.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto v = merged(a, b);
    return a.over(v).terms_ == b.over(v).terms_;
  }

  MultiPoly derivative(const std::string& var) const {
    auto idx = index_of(var);
    MultiPoly r(vars_);
    if (!idx) return r;
    for (const auto& [e, c] : terms_) {
      if (e[*idx] == 0) continue;
      Exponents ne = e;
      --ne[*idx];
      r.add_term(ne, c * S(static_cast<long>(e[*idx])));
    }
    return r;
  }

  /// Highest exponent of var over terms whose coefficient does not vanish;
  /// -inf for the zero polynomial.
  ExtRational deg_in(const std::string& var) const {
    auto idx = index_of(var);
    std::optional<std::uint32_t> best;
    for (const auto& [e, c] : terms_) {
      std::uint32_t k = idx ? e[*idx] : 0;
      if (best && k <= *best) continue;
      if (is_zero_checked(c)) continue;
      best = k;
    }
    if (!best) return ExtRational::neg_infinity();
    return ExtRational(Rational(static_cast<long>(*best)));
  }

  long total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      long s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  /// Coefficients by powers of var (index = power), with var removed.
  std::vector<MultiPoly> coefficients_in(const std::string& var) const {
    auto idx = index_of(var);
    std::vector<std::string> rest;
    for (const auto& v : vars_)
      if (v != var) rest.push_back(v);
    if (!idx) {
      if (is_zero()) return {};
      return {over(vars_).without(var)};
    }
    std::uint32_t top = 0;
    for (const auto& [e, c] : terms_) top = std::max(top, e[*idx]);
    std::vector<MultiPoly> out(is_zero() ? 0 : top + 1, MultiPoly(rest));
    for (const auto& [e, c] : terms_) {
      Exponents ne;
      ne.reserve(e.size() - 1);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != *idx) ne.push_back(e[i]);
      out[e[*idx]].add_term(ne, c);
    }
    return out;
  }

  /// Substitutes var := value; the result lives over S2 (S must convert to S2).
  template <class S2>
  MultiPoly<S2> substitute(const std::string& var, const MultiPoly<S2>& value) const {
    auto coeffs = coefficients_in(var);
    MultiPoly<S2> acc;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * value + coeffs[k].template convert<S2>();
    return acc;
  }

  template <class S2>
  MultiPoly<S2> convert() const {
    MultiPoly<S2> r(vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, S2(c));
    return r;
  }

  template <class S2, class Fn>
  MultiPoly<S2> map_coeffs(Fn&& fn) const {
    MultiPoly<S2> r(vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  bool is_constant() const {
    for (const auto& [e, c] : terms_)
      for (auto k : e)
        if (k) return false;
    return true;
  }

  S constant_term() const {
    for (const auto& [e, c] : terms_) {
      bool zero = true;
      for (auto k : e) zero = zero && k == 0;
      if (zero) return c;
    }
    return S(0);
  }

  /// Univariate view in `var`; other variables must not occur.
  UPoly<S> to_upoly(const std::string& var) const {
    auto cs = coefficients_in(var);
    std::vector<S> v;
    v.reserve(cs.size());
    for (const auto& c : cs) {
      if (!c.is_constant()) throw Error("polynomial is not univariate in " + var);
      v.push_back(c.constant_term());
    }
    return UPoly<S>(std::move(v));
  }

  static MultiPoly from_upoly(const UPoly<S>& p, const std::string& var) {
    MultiPoly r(std::vector<std::string>{var});
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) r.add_term(Exponents{static_cast<std::uint32_t>(i)}, p.coeffs()[i]);
    return r;
  }

  /// Leading term in the graded lexicographic order.
  std::pair<Exponents, S> leading_term() const {
    if (is_zero()) throw Error("leading term of the zero polynomial");
    return *terms_.begin();
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string coef = gradinf::to_string(c);
      bool neg = !coef.empty() && coef[0] == '-' && coef.find_first_of("+ ", 1) == std::string::npos;
      if (neg) coef = coef.substr(1);
      if (coef.find_first_of("+-* ") != std::string::npos) coef = "(" + coef + ")";
      std::string mon;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mon.empty()) mon += "*";
        mon += vars_[i];
        if (e[i] > 1) mon += "^" + std::to_string(e[i]);
      }
      if (first)
        os << (neg ? "-" : "");
      else
        os << (neg ? " - " : " + ");
      first = false;
      if (mon.empty())
        os << coef;
      else if (coef == "1")
        os << mon;
      else
        os << coef << "*" << mon;
    }
    return os.str();
  }

  void add_term(const Exponents& e, const S& c) {
    if (gradinf::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second = it->second + c;
    if (gradinf::is_zero(it->second)) terms_.erase(it);
  }

 private:
  template <class>
  friend class MultiPoly;

  MultiPoly without(const std::string& var) const {
    std::vector<std::string> rest;
    for (const auto& v : vars_)
      if (v != var) rest.push_back(v);
    return over(rest);
  }

  static std::vector<std::string> merged(const MultiPoly& a, const MultiPoly& b) {
    std::vector<std::string> v = a.vars_;
    v.insert(v.end(), b.vars_.begin(), b.vars_.end());
    std::sort(v.begin(), v.end(), variable_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

using QPoly = MultiPoly<Rational>;

/// Exact quotient a / b; throws when b does not divide a.
template <class S>
MultiPoly<S> divide_exact(const MultiPoly<S>& a, const MultiPoly<S>& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  std::vector<std::string> vars = a.vars();
  vars.insert(vars.end(), b.vars().begin(), b.vars().end());
  MultiPoly<S> probe(vars);
  vars = probe.vars();
  MultiPoly<S> rem = a.over(vars), div = b.over(vars), quot(vars);
  auto [lb, cb] = div.leading_term();
  S inv_cb = inverse(cb);
  while (!rem.is_zero()) {
    auto [la, ca] = rem.leading_term();
    Exponents q(la.size());
    for (std::size_t i = 0; i < la.size(); ++i) {
      if (la[i] < lb[i]) throw Error("polynomial division is not exact");
      q[i] = la[i] - lb[i];
    }
    auto m = MultiPoly<S>::monomial(ca * inv_cb, vars, q);
    quot = quot + m;
    rem = rem - m * div;
  }
  return quot;
}

/// Order of vanishing at the point (var1, var2) = (a, 0): the least total
/// degree of a non-vanishing term of p(a + s, v2). nullopt stands for +inf
/// (p identically zero).
template <class S>
std::optional<std::size_t> ord_at(const MultiPoly<Rational>& p, const std::string& shifted_var, const S& at,
                                  const std::string& other_var) {
  for (const auto& v : p.used_vars())
    if (v != shifted_var && v != other_var) throw PreconditionError("ord_at: unexpected variable " + v);
  if (p.is_zero()) return std::nullopt;
  auto shift = MultiPoly<S>::variable(shifted_var) + MultiPoly<S>(at);
  MultiPoly<S> q = p.substitute(shifted_var, shift);
  std::optional<std::size_t> best;
  for (const auto& [e, c] : q.terms()) {
    std::size_t d = 0;
    for (auto k : e) d += k;
    if (best && d >= *best) continue;
    if (is_zero_checked(c)) continue;
    best = d;
  }
  return best;
}

}  // namespace gradinf
