#pragma once

#include "gradinf/ext_rational.hpp"
#include "gradinf/multipoly.hpp"
#include "gradinf/resultant.hpp"

#include <string>

namespace gradinf {

/// Records g(x, y) = f(x + a*y, y) / c. A fiber g = lambda is the fiber
/// f = c*lambda, and exponents transport along that map.
struct NormalizationCert {
  Rational shear{0};
  Rational scale{1};

  bool is_identity() const { return shear == 0 && scale == 1; }
  Rational to_normalized(const Rational& lambda_f) const { return lambda_f / scale; }
  Rational to_original(const Rational& lambda_g) const { return lambda_g * scale; }
  std::string lambda_map() const {
    if (scale == 1) return "lambda -> lambda";
    return "lambda -> lambda/" + scale.get_str();
  }
};

namespace detail {
inline void require_plane_nonconstant(const QPoly& f) {
  for (const auto& v : f.used_vars())
    if (v != "x" && v != "y") throw PreconditionError("expected a polynomial in x and y, found variable '" + v + "'");
  if (f.total_degree() < 1) throw PreconditionError("polynomial must be non-constant");
}

/// Top-degree homogeneous part.
inline QPoly degree_form(const QPoly& f) {
  long n = f.total_degree();
  QPoly out(f.vars());
  for (const auto& [e, c] : f.terms()) {
    long d = 0;
    for (auto k : e) d += k;
    if (d == n) out.add_term(e, c);
  }
  return out;
}
}  // namespace detail

inline bool is_normal_form(const QPoly& f) {
  detail::require_plane_nonconstant(f);
  return is_normal_form_poly(f);
}

struct Normalized {
  QPoly g;
  NormalizationCert cert;
};

/// Shear a from 0, 1, -1, 2, -2, ... until c = F_n(a, 1) != 0, then scale by 1/c.
inline Normalized normalize(const QPoly& f) {
  detail::require_plane_nonconstant(f);
  QPoly top = detail::degree_form(f);
  QPoly x = QPoly::variable("x"), y = QPoly::variable("y");
  for (long k = 0;; ++k) {
    long a = (k + 1) / 2 * (k % 2 == 1 ? 1 : -1);
    QPoly at = top.substitute("x", QPoly(Rational(a))).substitute("y", QPoly(Rational(1)));
    Rational c = at.constant_term();
    if (sgn(c) == 0) continue;
    Normalized out;
    out.cert.shear = a;
    out.cert.scale = c;
    QPoly sheared = a == 0 ? f : f.substitute("x", x + y.scaled(Rational(a)));
    out.g = sheared.scaled(Rational(1) / c).compact();
    if (!is_normal_form_poly(out.g)) throw CrossCheckError("normalization did not produce a normal form");
    return out;
  }
}

}  // namespace gradinf
