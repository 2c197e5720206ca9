#pragma once

// Sylvester resultants by fraction-free elimination, the profiles
// Q(x, lambda, u) = Res_y(f - lambda, f_y - u) and R(x, tau) = Res_y(g - tau, h),
// and the four-case exponent formula for g restricted to {h = 0}.

#include "gradinf/algebraic.hpp"
#include "gradinf/ext_rational.hpp"
#include "gradinf/multipoly.hpp"
#include "gradinf/upoly.hpp"

#include <string>
#include <utility>
#include <vector>

namespace gradinf {

using PolyMatrix = std::vector<std::vector<QPoly>>;

/// Sylvester matrix of A and B in `var`: deg_var B rows of A's coefficients
/// followed by deg_var A rows of B's, highest power first.
inline PolyMatrix sylvester_matrix(const QPoly& a, const QPoly& b, const std::string& var = "y") {
  auto ca = a.coefficients_in(var), cb = b.coefficients_in(var);
  if (ca.empty() || cb.empty()) throw PreconditionError("resultant of a zero polynomial");
  std::size_t m = ca.size() - 1, n = cb.size() - 1;
  if (m == 0 && n == 0) throw PreconditionError("resultant: both inputs are constant in " + var);
  std::size_t size = m + n;
  PolyMatrix s(size, std::vector<QPoly>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = ca[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = cb[n - k];
  return s;
}

/// Determinant by Bareiss fraction-free elimination; every division is exact.
inline QPoly bareiss_determinant(PolyMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return QPoly(Rational(1));
  bool negate = false;
  QPoly prev(Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return QPoly();
      std::swap(m[k], m[piv]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        QPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev.is_constant() && prev.constant_term() == 1 ? num : divide_exact(num, prev);
      }
      m[i][k] = QPoly();
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Res_var(A, B), the raw Sylvester determinant with A's rows first.
/// With this convention Res_y(y - a, y - b) = a - b.
inline QPoly resultant_y(const QPoly& a, const QPoly& b, const std::string& var = "y") {
  return bareiss_determinant(sylvester_matrix(a, b, var));
}

/// Coefficients of p by descending powers of `var`: p = sum c_i var^(N-i).
/// Zero coefficients are kept so the index arithmetic stays aligned.
inline std::vector<QPoly> descending_coefficients(const QPoly& p, const std::string& var) {
  auto asc = p.coefficients_in(var);
  return std::vector<QPoly>(asc.rbegin(), asc.rend());
}

struct ResultantProfile {
  std::size_t N = 0;
  std::vector<QPoly> Q;  // Q[i] multiplies x^(N-i); polynomials in (lambda, u)
  QPoly full;            // Q(x, lambda, u)
};

/// Total degree n of f and deg_y f agree and the y^n coefficient is 1.
inline bool is_normal_form_poly(const QPoly& f) {
  long n = f.total_degree();
  if (n < 1) return false;
  auto cy = f.coefficients_in("y");
  if (static_cast<long>(cy.size()) - 1 != n) return false;
  return cy.back() == QPoly(Rational(1));
}

inline ResultantProfile resultant_profile(const QPoly& f) {
  for (const auto& v : f.used_vars())
    if (v != "x" && v != "y") throw PreconditionError("resultant profile expects a polynomial in x and y");
  if (!is_normal_form_poly(f)) throw PreconditionError("resultant profile requires f monic in y with deg f = deg_y f");
  QPoly lam = QPoly::variable("lambda"), u = QPoly::variable("u");
  QPoly q = resultant_y(f - lam, f.derivative("y") - u);
  ResultantProfile p;
  p.full = q;
  p.Q = descending_coefficients(q, "x");
  if (p.Q.empty() || p.Q.front().is_zero()) throw CrossCheckError("resultant profile has a vanishing leading coefficient");
  p.N = p.Q.size() - 1;
  // Q(0, lambda, 0) = +-n^n lambda^(n-1) + lower terms.
  long n = f.total_degree();
  QPoly at0 = p.Q.back().substitute("u", QPoly(Rational(0)));
  auto lc = at0.coefficients_in("lambda");
  Integer nn;
  mpz_ui_pow_ui(nn.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
  bool ok = static_cast<long>(lc.size()) == n && lc.back().is_constant() &&
            abs(lc.back().constant_term()) == Rational(nn);
  if (!ok) throw CrossCheckError("Q(0,lambda,0) does not have the expected leading term +-n^n lambda^(n-1)");
  return p;
}

/// Profile of R(x, tau) = Res_y(g - tau, h) with R = sum R_i x^(K-i).
template <class S>
struct FiberProfile {
  std::size_t K = 0;
  std::vector<UPoly<S>> R;  // univariate in tau
};

/// Collects a polynomial in (x, tau) over S into a fiber profile. The leading
/// x-coefficient is found with checked zero tests (may raise a split).
template <class S>
FiberProfile<S> collect_fiber_profile(const MultiPoly<S>& r) {
  auto asc = r.coefficients_in("x");
  std::vector<UPoly<S>> up;
  up.reserve(asc.size());
  for (const auto& c : asc) up.push_back(c.to_upoly("tau"));
  while (!up.empty() && up.back().degree_checked() < 0) up.pop_back();
  if (up.empty()) throw PreconditionError("fiber resultant vanishes identically");
  FiberProfile<S> p;
  p.R.assign(up.rbegin(), up.rend());
  p.K = p.R.size() - 1;
  return p;
}

inline void check_fiber_hypothesis(const QPoly& h) {
  long d = h.total_degree();
  auto dy = h.deg_in("y");
  if (d <= 0 || !dy.is_finite() || dy.value() != Rational(d))
    throw PreconditionError("fiber profile requires 0 < deg h = deg_y h");
}

/// Exact profile of Res_y(g - tau, h) for g, h in Q[x, y].
inline FiberProfile<Rational> fiber_profile(const QPoly& g, const QPoly& h) {
  check_fiber_hypothesis(h);
  QPoly r = resultant_y(g - QPoly::variable("tau"), h);
  return collect_fiber_profile(r);
}

/// R(x, lambda, tau) for a pair depending polynomially on lambda; its
/// specialisation at lambda0 is the resultant of the specialised pair because
/// both y-leading coefficients are nonzero constants.
inline QPoly generic_fiber_resultant(const QPoly& g, const QPoly& h) {
  auto cg = g.coefficients_in("y"), ch = h.coefficients_in("y");
  bool const_lc = !cg.empty() && !ch.empty() && cg.back().is_constant() && ch.back().is_constant();
  if (!const_lc) throw PreconditionError("generic fiber resultant needs constant y-leading coefficients");
  return resultant_y(g - QPoly::variable("tau"), h);
}

template <class S>
FiberProfile<S> specialize_fiber(const QPoly& generic, const S& lambda0) {
  MultiPoly<S> r = generic.substitute("lambda", MultiPoly<S>(lambda0));
  return collect_fiber_profile(r);
}

enum class LpCase { I, II, III, IV };

inline const char* to_string(LpCase c) {
  switch (c) {
    case LpCase::I: return "I";
    case LpCase::II: return "II";
    case LpCase::III: return "III";
    case LpCase::IV: return "IV";
  }
  return "?";
}

struct LpResult {
  ExtRational value;
  LpCase which = LpCase::I;
};

/// Exponent of g on T = {h = 0} from the profile of Res_y(g - tau, h).
/// The case III minimum runs over i = 0..r: with R_0(0) = 0 and R_1(0) != 0
/// (r = 0) the only available term is ord_0 R_0.
template <class S>
LpResult lemma_lp_exponent(const FiberProfile<S>& p) {
  if (p.R.empty() || p.R.front().degree_checked() < 0) throw PreconditionError("fiber profile with R_0 = 0");
  const std::size_t K = p.K;
  if (p.R.front().degree_checked() == 0) {
    std::optional<Rational> best;
    for (std::size_t i = 1; i <= K; ++i) {
      long d = p.R[i].degree_checked();
      if (d < 0) continue;
      Rational q(d, static_cast<long>(i));
      q.canonicalize();
      if (!best || q > *best) best = q;
    }
    if (!best || sgn(*best) <= 0) throw CrossCheckError("case I profile without a tau-dependent coefficient");
    return {ExtRational(Rational(1) / *best), LpCase::I};
  }
  if (!is_zero_checked(p.R.front().coeff(0))) return {ExtRational(0), LpCase::II};
  std::size_t r = 0;
  while (r + 1 <= K && is_zero_checked(p.R[r + 1].coeff(0))) ++r;
  if (r == K) return {ExtRational::neg_infinity(), LpCase::IV};
  std::optional<Rational> best;
  for (std::size_t i = 0; i <= r; ++i) {
    long o = p.R[i].order_checked();
    if (o < 0) continue;  // R_i = 0 imposes no constraint
    Rational q(o, static_cast<long>(r + 1 - i));
    q.canonicalize();
    if (!best || q < *best) best = q;
  }
  if (!best || sgn(*best) <= 0) throw CrossCheckError("case III profile with a non-positive order ratio");
  return {ExtRational(Rational(-1) / *best), LpCase::III};
}

}  // namespace gradinf
