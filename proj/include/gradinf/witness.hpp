#pragma once

// Evaluation of meromorphic curves at infinity: given Phi(t) with deg Phi > 0
// and deg (f - lambda0)(Phi) < 0, the quotient deg grad f(Phi) / deg Phi is an
// upper bound for the gradient exponent of f near the fiber f = lambda0.

#include "gradinf/classifier.hpp"
#include "gradinf/laurent.hpp"
#include "gradinf/normalize.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace gradinf {

using LaurentCurve = std::vector<LaurentPoly<Rational>>;

struct WitnessReport {
  ExtRational deg_phi;
  ExtRational deg_fiber;
  ExtRational deg_grad;
  std::optional<ExtRational> ratio;  // absent when deg_phi <= 0
  bool valid = false;
};

inline ExtRational curve_degree(const LaurentCurve& phi) {
  ExtRational d = ExtRational::neg_infinity();
  for (const auto& c : phi) d = max(d, c.degree());
  return d;
}

inline WitnessReport witness(const QPoly& f, const std::vector<std::string>& vars, const LaurentCurve& phi,
                             const Rational& l0) {
  if (vars.size() != phi.size())
    throw PreconditionError("curve has " + std::to_string(phi.size()) + " components for " +
                            std::to_string(vars.size()) + " variables");
  WitnessReport r;
  r.deg_phi = curve_degree(phi);
  r.deg_fiber = eval_on_curve(f - QPoly(l0), vars, phi).degree();
  r.deg_grad = ExtRational::neg_infinity();
  for (const auto& v : vars) r.deg_grad = max(r.deg_grad, eval_on_curve(f.derivative(v), vars, phi).degree());
  if (r.deg_phi > ExtRational(0)) r.ratio = r.deg_grad.is_neg_infinity() ? r.deg_grad : ExtRational(r.deg_grad.value() / r.deg_phi.value());
  r.valid = r.deg_phi > ExtRational(0) && r.deg_fiber < ExtRational(0);
  return r;
}

inline WitnessReport witness(const QPoly& f, const LaurentCurve& phi, const Rational& l0) {
  return witness(f, f.vars(), phi, l0);
}

namespace detail {

/// The same plane polynomial written in x, y.
inline QPoly as_plane(const QPoly& f, const std::vector<std::string>& vars) {
  if (vars.size() != 2) throw PreconditionError("a plane polynomial needs two variables");
  QPoly g = f.substitute(vars[0], QPoly::variable("__w0")).substitute(vars[1], QPoly::variable("__w1"));
  return g.substitute("__w0", QPoly::variable("x")).substitute("__w1", QPoly::variable("y")).compact();
}

}  // namespace detail

/// Gradient exponent near the fiber f = l0 of a plane polynomial in any
/// coordinates, together with membership of l0 in K_inf(f).
struct PlaneExponent {
  ExtRational value;
  bool in_kinf = false;
};

inline PlaneExponent plane_exponent(const QPoly& f, const std::vector<std::string>& vars, const Rational& l0) {
  auto nf = normalize(detail::as_plane(f, vars));
  Classifier c(nf.g);
  Rational lg = nf.cert.to_normalized(l0);
  PlaneExponent p;
  p.value = exponent_at(c, lg).value;
  p.in_kinf = kinf_and_fedorjuk(c).kinf.contains(lg);
  return p;
}

struct Prop621Result {
  bool applicable = false;
  ExtRational concluded;  // -1 when applicable
  std::string reason;
};

/// When a valid witness has deg grad f(Phi) = -deg Phi and lambda0 is not in
/// K_inf(f), the gradient exponent near lambda0 equals -1. For two variables
/// membership in K_inf is decided by the classifier rather than trusted.
inline Prop621Result prop621_check(const QPoly& f, const std::vector<std::string>& vars, const LaurentCurve& phi,
                                   const Rational& l0, bool lambda_in_kinf) {
  auto w = witness(f, vars, phi, l0);
  if (!w.valid) throw PreconditionError("the curve is not a valid witness (needs deg Phi > 0 and deg (f - lambda0)(Phi) < 0)");
  Prop621Result r;
  if (w.deg_grad.is_neg_infinity() || !(w.deg_grad.value() == -w.deg_phi.value())) {
    r.reason = "deg grad f(Phi) = " + w.deg_grad.to_string() + " differs from -deg Phi = " + Rational(-w.deg_phi.value()).get_str();
    return r;
  }
  bool in_kinf = lambda_in_kinf;
  std::optional<PlaneExponent> plane;
  if (vars.size() == 2) {
    plane = plane_exponent(f, vars, l0);
    in_kinf = plane->in_kinf;
  }
  if (in_kinf) {
    r.reason = "lambda0 lies in K_inf(f)";
    return r;
  }
  r.applicable = true;
  r.concluded = ExtRational(-1);
  r.reason = "deg grad f(Phi) = -deg Phi and lambda0 is not in K_inf(f)";
  if (plane && !(plane->value == r.concluded))
    throw CrossCheckError("classifier exponent " + plane->value.to_string() + " contradicts the witness conclusion -1");
  return r;
}

}  // namespace gradinf
