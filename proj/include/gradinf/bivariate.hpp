#pragma once

// Polynomials in K[x][y] stored as their y-coefficients (low to high), each a
// univariate polynomial in x. Used for gcds over towers, where the multivariate
// container has no Euclidean structure.

#include "gradinf/multipoly.hpp"
#include "gradinf/upoly.hpp"

#include <string>
#include <vector>

namespace gradinf {

template <class S>
using BiPoly = std::vector<UPoly<S>>;

namespace bivariate {

template <class S>
void trim(BiPoly<S>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class S>
long degree(const BiPoly<S>& p) {
  return static_cast<long>(p.size()) - 1;
}

template <class S>
BiPoly<S> from_multipoly(const MultiPoly<S>& p, const std::string& main = "y", const std::string& aux = "x") {
  BiPoly<S> out;
  for (const auto& c : p.coefficients_in(main)) out.push_back(c.to_upoly(aux));
  trim(out);
  return out;
}

template <class S>
MultiPoly<S> to_multipoly(const BiPoly<S>& p, const std::string& main = "y", const std::string& aux = "x") {
  MultiPoly<S> out(std::vector<std::string>{aux, main});
  const auto& vars = out.vars();
  bool main_first = vars[0] == main;
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p[j].coeffs().size(); ++i) {
      Exponents e(2);
      e[main_first ? 0 : 1] = static_cast<std::uint32_t>(j);
      e[main_first ? 1 : 0] = static_cast<std::uint32_t>(i);
      out.add_term(e, p[j].coeffs()[i]);
    }
  return out;
}

/// Same polynomial with the roles of the variables exchanged.
template <class S>
BiPoly<S> transpose(const BiPoly<S>& p) {
  std::size_t width = 0;
  for (const auto& c : p) width = std::max(width, c.coeffs().size());
  std::vector<std::vector<S>> cols(width, std::vector<S>(p.size(), S(0)));
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p[j].coeffs().size(); ++i) cols[i][j] = p[j].coeffs()[i];
  BiPoly<S> out;
  for (auto& c : cols) out.emplace_back(std::move(c));
  trim(out);
  return out;
}

template <class S>
BiPoly<S> sub(const BiPoly<S>& a, const BiPoly<S>& b) {
  BiPoly<S> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  trim(r);
  return r;
}

template <class S>
BiPoly<S> mul(const BiPoly<S>& a, const BiPoly<S>& b) {
  if (a.empty() || b.empty()) return {};
  BiPoly<S> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  trim(r);
  return r;
}

template <class S>
BiPoly<S> scale(const BiPoly<S>& a, const UPoly<S>& s) {
  BiPoly<S> r;
  for (const auto& c : a) r.push_back(c * s);
  trim(r);
  return r;
}

template <class S>
BiPoly<S> derivative(const BiPoly<S>& a) {
  BiPoly<S> r;
  for (std::size_t j = 1; j < a.size(); ++j) r.push_back(a[j].scaled(S(static_cast<long>(j))));
  trim(r);
  return r;
}

/// Forces a decision on the leading coefficient of b (over a tower this may
/// raise a split), so that degree bookkeeping is valid in every branch.
template <class S>
void require_regular(const BiPoly<S>& b) {
  if (!b.empty()) (void)is_zero_checked(b.back().lc());
}

/// Pseudo-remainder of a by b in y.
template <class S>
BiPoly<S> prem(BiPoly<S> a, const BiPoly<S>& b) {
  const long db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    long shift = degree(a) - db;
    UPoly<S> la = a.back();
    BiPoly<S> r = scale(a, b.back());
    BiPoly<S> t(static_cast<std::size_t>(shift), UPoly<S>());
    for (const auto& c : b) t.push_back(c * la);
    a = sub(r, t);
  }
  return a;
}

/// Monic gcd of the x-coefficients.
template <class S>
UPoly<S> content(const BiPoly<S>& a) {
  UPoly<S> g;
  for (const auto& c : a) {
    g = gradinf::gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

template <class S>
BiPoly<S> primitive_part(const BiPoly<S>& a) {
  if (a.empty()) return a;
  UPoly<S> c = content(a);
  BiPoly<S> r;
  for (const auto& x : a) r.push_back(exact_quotient(x, c));
  return r;
}

/// Normalizes so that the y-leading coefficient has a monic x-leading term.
template <class S>
BiPoly<S> normalized(const BiPoly<S>& a) {
  if (a.empty()) return a;
  S inv = inverse(a.back().lc());
  BiPoly<S> r;
  for (const auto& c : a) r.push_back(c.scaled(inv));
  return r;
}

/// gcd in K[x][y] by the primitive pseudo-remainder sequence.
template <class S>
BiPoly<S> gcd(BiPoly<S> a, BiPoly<S> b) {
  trim(a);
  trim(b);
  if (a.empty()) return normalized(b);
  if (b.empty()) return normalized(a);
  UPoly<S> c = gradinf::gcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.empty()) {
    require_regular(b);
    BiPoly<S> r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive_part(r);
  }
  return normalized(scale(a, c));
}

/// Exact quotient a / b in K[x][y].
template <class S>
BiPoly<S> divide(BiPoly<S> a, const BiPoly<S>& b) {
  if (b.empty()) throw Error("bivariate division by zero");
  require_regular(b);
  const long db = degree(b);
  BiPoly<S> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (!a.empty() && degree(a) >= db) {
    auto [qq, rr] = divmod(a.back(), b.back());
    if (!rr.is_zero()) throw Error("bivariate division is not exact");
    std::size_t shift = static_cast<std::size_t>(degree(a) - db);
    q[shift] = qq;
    BiPoly<S> t(shift, UPoly<S>());
    for (const auto& c : b) t.push_back(c * qq);
    a = sub(a, t);
  }
  if (!a.empty()) throw Error("bivariate division is not exact");
  trim(q);
  return q;
}

/// Squarefree part in y of a primitive polynomial.
template <class S>
BiPoly<S> squarefree_in_y(const BiPoly<S>& a) {
  BiPoly<S> d = derivative(a);
  if (d.empty()) return normalized(a);
  return normalized(divide(a, gcd(a, d)));
}

/// p(x0, y) for a value x0 of the coefficient field.
template <class S>
UPoly<S> eval_aux(const BiPoly<S>& p, const S& x0) {
  std::vector<S> v;
  for (const auto& c : p) v.push_back(c.evaluate(x0));
  return UPoly<S>(std::move(v));
}

template <class S, class T>
BiPoly<T> convert(const BiPoly<S>& p) {
  BiPoly<T> out;
  for (const auto& c : p) {
    std::vector<T> v;
    for (const auto& s : c.coeffs()) v.push_back(T(s));
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace bivariate
}  // namespace gradinf
