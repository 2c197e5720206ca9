#pragma once

// Newton-Puiseux expansions at infinity.
//
// Roots y(x) of polynomials in y over K((1/x)) are expanded as Puiseux series
// in decreasing powers of x. All tracked polynomials are expanded together
// through the squarefree part H of their product, so each distinct root is
// met exactly once and its multiplicity in every tracked polynomial is read
// off at the leaf. Leading coefficients that need a field extension are
// adjoined as tower levels; one tree node then stands for all conjugate
// choices of that coefficient at once.

#include "gradinf/bivariate.hpp"
#include "gradinf/classifier.hpp"
#include "gradinf/laurent.hpp"
#include "gradinf/normalize.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace gradinf {

using LaurentA = LaurentPoly<AlgNum>;
/// Polynomial in y with Laurent coefficients, ascending in y.
using LaurentYPoly = std::vector<LaurentA>;

struct PuiseuxTerm {
  Rational exponent;  // power of x
  AlgNum coeff;
};

/// A step of the expansion. The exponent is in powers of x; the conjugate
/// count is the degree of the coefficient's minimal polynomial when the step
/// adjoined a new algebraic coefficient, and 1 otherwise.
struct PuiseuxNode {
  std::size_t parent = 0;
  ExtRational exponent;
  std::size_t conjugates = 1;
};

/// One distinct root of H up to conjugation of the coefficients.
struct BranchClass {
  std::vector<std::size_t> path;  // node ids below the root
  std::vector<PuiseuxTerm> terms;
  std::int64_t ramification = 1;  // terms are polynomial in x^(1/ramification)
  bool exact = false;             // the series terminates
  ExtRational tail;               // every omitted term has exponent below this
  std::vector<std::size_t> mult;  // multiplicity as a root of each tracked polynomial
  std::vector<ExtRational> value; // degree in x of each tracked polynomial along the root

  std::size_t conjugates(const std::vector<PuiseuxNode>& nodes) const {
    std::size_t c = 1;
    for (auto id : path) c *= nodes[id].conjugates;
    return c;
  }
  ExtRational leading() const { return terms.empty() ? ExtRational::neg_infinity() : ExtRational(terms.front().exponent); }
};

struct ExpansionTree {
  std::vector<PuiseuxNode> nodes;  // nodes[0] is the root
  std::vector<BranchClass> classes;
};

/// A single root: a class, a choice of conjugate at each adjoining node of
/// its path, and a copy number for repeated roots.
struct RootLabel {
  std::size_t cls = 0;
  std::vector<std::size_t> conj;
  std::size_t copy = 0;
};

namespace detail {

inline ExtRational lp_degree(const LaurentA& p) { return p.degree_checked(); }

inline std::int64_t lp_int_degree(const LaurentA& p) {
  auto d = p.degree_checked();
  return static_cast<std::int64_t>(d.value().get_num().get_si());
}

inline void trim_y(LaurentYPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// p(y + a) by repeated synthetic division.
inline LaurentYPoly taylor_shift(LaurentYPoly p, const LaurentA& a) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) p[j - 1] = p[j - 1] + a * p[j];
  return p;
}

inline LaurentYPoly ramify(const LaurentYPoly& p, std::int64_t q) {
  LaurentYPoly r;
  for (const auto& c : p) r.push_back(c.reparametrized(q));
  return r;
}

/// Number of roots (with multiplicity) of degree below `bound`; all roots
/// when the bound is absent.
inline std::size_t count_below(const LaurentYPoly& p, const std::optional<std::int64_t>& bound) {
  if (!bound) return p.empty() ? 0 : p.size() - 1;
  std::optional<Rational> best;
  std::size_t arg = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    auto d = lp_degree(p[j]);
    if (d.is_neg_infinity()) continue;
    Rational v = d.value() + Rational(static_cast<long>(j)) * Rational(static_cast<long>(*bound));
    if (!best || v > *best) {
      best = v;
      arg = j;
    }
  }
  return arg;
}

/// Multiplicity of y = 0 as a root.
inline std::size_t zero_order(const LaurentYPoly& p) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (!lp_degree(p[j]).is_neg_infinity()) return j;
  throw Error("zero polynomial has no root order");
}

inline BiPoly<AlgNum> to_bipoly(const LaurentYPoly& p) {
  std::int64_t lo = 0;
  for (const auto& c : p)
    if (!c.terms().empty()) lo = std::min(lo, c.terms().begin()->first);
  BiPoly<AlgNum> out;
  for (const auto& c : p) {
    std::vector<AlgNum> v;
    for (const auto& [e, a] : c.terms()) {
      auto k = static_cast<std::size_t>(e - lo);
      if (v.size() <= k) v.resize(k + 1, AlgNum(0));
      v[k] = a;
    }
    out.emplace_back(std::move(v));
  }
  bivariate::trim(out);
  return out;
}

inline LaurentYPoly from_bipoly(const BiPoly<AlgNum>& p) {
  LaurentYPoly out;
  for (const auto& c : p) {
    LaurentA l;
    for (std::size_t i = 0; i < c.coeffs().size(); ++i) l.add_term(static_cast<std::int64_t>(i), c.coeffs()[i]);
    out.push_back(l);
  }
  return out;
}

/// Upper convex hull of the points (j, deg p_j), 0 <= j <= last.
inline std::vector<std::pair<std::size_t, std::int64_t>> upper_hull(const LaurentYPoly& p, std::size_t last) {
  std::vector<std::pair<std::size_t, std::int64_t>> pts, hull;
  for (std::size_t j = 0; j <= last; ++j)
    if (!lp_degree(p[j]).is_neg_infinity()) pts.emplace_back(j, lp_int_degree(p[j]));
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // b lies on or below the segment a -> pt
      __int128 lhs = static_cast<__int128>(b.second - a.second) * static_cast<__int128>(pt.first - a.first);
      __int128 rhs = static_cast<__int128>(pt.second - a.second) * static_cast<__int128>(b.first - a.first);
      if (lhs <= rhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  return hull;
}

struct ExpansionState {
  LaurentYPoly h;
  std::vector<LaurentYPoly> tracked;
  std::int64_t e = 1;  // x = t^e
  std::optional<std::int64_t> bound;
  std::vector<PuiseuxTerm> terms;
  TowerPtr tower;
  std::vector<std::size_t> path;
};

class Expander {
 public:
  Expander(ExpansionTree& out, std::size_t extra) : out_(out), extra_(extra) {}

  void expand(ExpansionState s, std::size_t node) {
    std::size_t m = count_below(s.h, s.bound);
    if (m >= 1 && lp_degree(s.h[0]).is_neg_infinity()) {
      std::size_t id = add_node(node, ExtRational::neg_infinity(), 1);
      ExpansionState leaf = s;
      leaf.path.push_back(id);
      emit(leaf, true);
      s.h.erase(s.h.begin());
      --m;
    }
    if (m == 0) return;
    if (m == 1) {
      regular(std::move(s), node);
      return;
    }
    auto hull = upper_hull(s.h, m);
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) edge(s, node, hull[k], hull[k + 1]);
  }

 private:
  std::size_t add_node(std::size_t parent, ExtRational exponent, std::size_t conj) {
    out_.nodes.push_back(PuiseuxNode{parent, std::move(exponent), conj});
    return out_.nodes.size() - 1;
  }

  void edge(const ExpansionState& s, std::size_t node, std::pair<std::size_t, std::int64_t> a,
            std::pair<std::size_t, std::int64_t> b) {
    Rational slope(static_cast<long>(a.second - b.second), static_cast<long>(b.first - a.first));
    slope.canonicalize();
    const std::int64_t q = slope.get_den().get_si();
    const std::int64_t p = slope.get_num().get_si();
    ExpansionState r = s;
    if (q > 1) {
      r.h = ramify(r.h, q);
      for (auto& tp : r.tracked) tp = ramify(tp, q);
      r.e *= q;
      if (r.bound) *r.bound *= q;
    }
    const std::int64_t top = a.second * q + static_cast<std::int64_t>(a.first) * p;
    std::vector<AlgNum> psi;
    for (std::size_t j = a.first; j <= b.first; ++j)
      psi.push_back(r.h[j].coeff(top - static_cast<std::int64_t>(j) * p));
    UPoly<AlgNum> sf = squarefree_part(UPoly<AlgNum>(psi));

    std::deque<UPoly<AlgNum>> work;
    std::vector<AlgNum> rational_roots_found;
    bool all_rational = std::all_of(sf.coeffs().begin(), sf.coeffs().end(),
                                    [](const AlgNum& c) { return c.as_rational().has_value(); });
    if (all_rational) {
      std::vector<Rational> qc;
      for (const auto& c : sf.coeffs()) qc.push_back(*c.as_rational());
      auto rr = rational_roots(UPoly<Rational>(qc));
      for (const auto& root : rr.roots) rational_roots_found.emplace_back(root);
      if (rr.residual.degree() >= 1) work.push_back(UPoly<AlgNum>(detail::to_alg(rr.residual)));
    } else {
      work.push_back(sf);
    }
    for (const auto& c : rational_roots_found) spawn(r, node, c, p, r.tower, 1);
    while (!work.empty()) {
      UPoly<AlgNum> mod = work.front().monic();
      work.pop_front();
      if (mod.degree() == 1) {
        spawn(r, node, -mod.coeff(0), p, r.tower, 1);
        continue;
      }
      auto tower = extend_tower(r.tower, mod.coeffs());
      const std::size_t nodes_before = out_.nodes.size(), classes_before = out_.classes.size();
      try {
        spawn(r, node, AlgNum::generator(tower), p, tower, static_cast<std::size_t>(mod.degree()));
      } catch (const SplitException& ex) {
        if (ex.level != tower->depth()) throw;
        out_.nodes.resize(nodes_before);
        out_.classes.resize(classes_before);
        work.push_front(UPoly<AlgNum>(split_factor(ex, false)));
        work.push_front(UPoly<AlgNum>(split_factor(ex, true)));
      }
    }
  }

  void spawn(const ExpansionState& r, std::size_t node, const AlgNum& c, std::int64_t p, const TowerPtr& tower,
             std::size_t conj) {
    Rational xexp(static_cast<long>(p), static_cast<long>(r.e));
    xexp.canonicalize();
    std::size_t id = add_node(node, ExtRational(xexp), conj);
    ExpansionState child = r;
    child.tower = tower;
    step(child, c, p);
    child.path.push_back(id);
    expand(std::move(child), id);
  }

  static void step(ExpansionState& s, const AlgNum& c, std::int64_t p) {
    LaurentA a = LaurentA::monomial(c, p);
    s.h = taylor_shift(std::move(s.h), a);
    for (auto& tp : s.tracked) tp = taylor_shift(std::move(tp), a);
    s.bound = p;
    Rational xexp(static_cast<long>(p), static_cast<long>(s.e));
    xexp.canonicalize();
    s.terms.push_back(PuiseuxTerm{xexp, c});
  }

  /// One simple root remains below the bound: its next term is linear in
  /// the two lowest coefficients and needs neither ramification nor a new
  /// field element.
  static bool newton_step(ExpansionState& s) {
    if (lp_degree(s.h[0]).is_neg_infinity()) return false;
    const std::int64_t d0 = lp_int_degree(s.h[0]), d1 = lp_int_degree(s.h[1]);
    AlgNum c = -(s.h[0].coeff(d0) * inverse(s.h[1].coeff(d1)));
    step(s, c, d0 - d1);
    return true;
  }

  void regular(ExpansionState s, std::size_t node) {
    // The first step fixes the node where this root separates from the others.
    if (!newton_step(s)) throw Error("regular root expected a nonzero constant coefficient");
    std::size_t id = add_node(node, ExtRational(s.terms.back().exponent), 1);
    s.path.push_back(id);
    if (!s.bound) throw Error("regular root without a finite bound");
    BranchClass partial = measure(s);
    bool exact = false;
    for (std::size_t k = 0; k < extra_; ++k)
      if (!newton_step(s)) {
        exact = true;
        break;
      }
    if (!exact && lp_degree(s.h[0]).is_neg_infinity()) exact = true;
    partial.terms = s.terms;
    partial.exact = exact;
    if (exact) {
      partial.tail = ExtRational::neg_infinity();
    } else {
      Rational t(static_cast<long>(*s.bound), static_cast<long>(s.e));
      t.canonicalize();
      partial.tail = ExtRational(t);
    }
    out_.classes.push_back(std::move(partial));
  }

  /// Multiplicities and along-root degrees for the root that the state
  /// currently isolates below its bound (or exactly, when y = 0 is the root).
  static BranchClass measure(const ExpansionState& s, bool exact = false) {
    BranchClass b;
    b.path = s.path;
    b.ramification = s.e;
    for (const auto& tp : s.tracked) {
      std::size_t mult = exact ? zero_order(tp) : count_below(tp, s.bound);
      b.mult.push_back(mult);
      if (mult > 0) {
        b.value.push_back(ExtRational::neg_infinity());
      } else {
        // No root of tp continues this prefix, so the tail cannot cancel the
        // leading term of tp evaluated at the truncation.
        auto d = lp_degree(tp[0]);
        Rational v = d.value() / Rational(static_cast<long>(s.e));
        b.value.push_back(ExtRational(v));
      }
    }
    return b;
  }

  void emit(const ExpansionState& s, bool exact) {
    BranchClass b = measure(s, exact);
    b.terms = s.terms;
    b.exact = exact;
    b.tail = ExtRational::neg_infinity();
    out_.classes.push_back(std::move(b));
  }

  ExpansionTree& out_;
  std::size_t extra_;
};

inline bool class_less(const BranchClass& a, const BranchClass& b) {
  std::size_t n = std::min(a.terms.size(), b.terms.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a.terms[k].exponent != b.terms[k].exponent) return a.terms[k].exponent > b.terms[k].exponent;
    auto sa = a.terms[k].coeff.to_string(), sb = b.terms[k].coeff.to_string();
    if (sa != sb) return sa < sb;
  }
  if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
  return a.path < b.path;
}

}  // namespace detail

/// Expands every root of the tracked polynomials (all in y, coefficients in
/// the field of `base`). Classes are ordered by leading exponent (ascending,
/// an exactly vanishing root first), then by coefficients.
inline ExpansionTree expand_roots(const std::vector<LaurentYPoly>& tracked, std::size_t extra_terms = 2) {
  if (tracked.empty()) throw PreconditionError("nothing to expand");
  BiPoly<AlgNum> prod{UPoly<AlgNum>(AlgNum(1))};
  for (const auto& tp : tracked) {
    auto bp = detail::to_bipoly(tp);
    if (bivariate::degree(bp) < 1) throw PreconditionError("tracked polynomial has no roots in y");
    prod = bivariate::mul(prod, bp);
  }
  detail::ExpansionState s;
  s.h = detail::from_bipoly(bivariate::squarefree_in_y(prod));
  s.tracked = tracked;
  for (const auto& tp : tracked)
    for (const auto& c : tp)
      for (const auto& [e, a] : c.terms())
        if (a.level() > depth_of(s.tower.get())) s.tower = a.tower();
  ExpansionTree out;
  out.nodes.push_back(PuiseuxNode{0, ExtRational(0), 1});
  detail::Expander(out, extra_terms).expand(std::move(s), 0);

  std::sort(out.classes.begin(), out.classes.end(), [](const BranchClass& a, const BranchClass& b) {
    if (a.leading() != b.leading()) return a.leading() < b.leading();
    return detail::class_less(a, b);
  });
  return out;
}

/// All roots of the tracked polynomial with index `which`, each repeated by
/// its multiplicity.
inline std::vector<RootLabel> root_labels(const ExpansionTree& t, std::size_t which) {
  std::vector<RootLabel> out;
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    const auto& cls = t.classes[c];
    if (cls.mult[which] == 0) continue;
    std::vector<std::size_t> radices;
    for (auto id : cls.path) radices.push_back(t.nodes[id].conjugates);
    std::vector<std::size_t> idx(radices.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < cls.mult[which]; ++k) out.push_back(RootLabel{c, idx, k});
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == radices[pos]) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  return out;
}

/// deg_x(a - b); -inf for the same root.
inline ExtRational contact(const ExpansionTree& t, const RootLabel& a, const RootLabel& b) {
  const auto& pa = t.classes[a.cls].path;
  const auto& pb = t.classes[b.cls].path;
  for (std::size_t k = 0; k < std::min(pa.size(), pb.size()); ++k) {
    if (pa[k] != pb[k]) return max(t.nodes[pa[k]].exponent, t.nodes[pb[k]].exponent);
    if (t.nodes[pa[k]].conjugates > 1 && a.conj[k] != b.conj[k]) return t.nodes[pa[k]].exponent;
  }
  if (pa.size() != pb.size()) throw Error("expansion paths end inside one another");
  return ExtRational::neg_infinity();
}

// ---------------------------------------------------------------------------

/// Largest degree in t among the roots of c_0 x^N + c_1 x^(N-1) + ... + c_N,
/// read off the coefficients.
template <class S>
ExtRational newton_polygon_max_root_degree(const std::vector<LaurentPoly<S>>& c) {
  if (c.empty() || c[0].is_zero()) throw PreconditionError("leading coefficient c_0 must be nonzero");
  ExtRational best = ExtRational::neg_infinity();
  const Rational d0 = c[0].degree().value();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    Rational v = (c[i].degree().value() - d0) / Rational(static_cast<long>(i));
    v.canonicalize();
    best = max(best, ExtRational(v));
  }
  return best;
}

/// Fiber and polar branches: the roots beta of f(t^D, y) - lambda0 and
/// gamma of f_y(t^D, y).
struct PuiseuxBranchSet {
  std::size_t n = 0;
  std::int64_t D = 1;
  ExpansionTree tree;
  std::vector<RootLabel> beta;
  std::vector<RootLabel> gamma;
  std::int64_t truncation_order = 0;  // every omitted term has t-degree below this

  /// Truncated series in t with x = t^D.
  LaurentA series(const RootLabel& r) const {
    LaurentA s;
    for (const auto& term : tree.classes[r.cls].terms) {
      Rational e = term.exponent * Rational(static_cast<long>(D));
      s.add_term(e.get_num().get_si(), term.coeff);
    }
    return s;
  }
  std::size_t conjugates(const RootLabel& r) const { return tree.classes[r.cls].conjugates(tree.nodes); }
};

struct ContactMatrix {
  std::vector<std::vector<ExtRational>> entries;  // t-degrees, x = t^D
  std::size_t size() const { return entries.size(); }
  const ExtRational& operator()(std::size_t i, std::size_t j) const { return entries[i][j]; }
};

namespace detail {

inline std::size_t require_degree_two(const QPoly& f) {
  if (!is_normal_form(f)) throw PreconditionError("polynomial is not in normal form y^n + a_1(x) y^(n-1) + ...");
  auto d = f.deg_in("y");
  if (d < ExtRational(2)) throw PreconditionError("needs deg_y f >= 2");
  return static_cast<std::size_t>(d.value().get_num().get_ui());
}

inline LaurentYPoly laurent_in_y(const QPoly& p) {
  LaurentYPoly out;
  for (const auto& c : bivariate::from_multipoly(p)) {
    LaurentA l;
    for (std::size_t i = 0; i < c.coeffs().size(); ++i)
      l.add_term(static_cast<std::int64_t>(i), AlgNum(c.coeffs()[i]));
    out.push_back(l);
  }
  return out;
}

/// Extra terms beyond separation: n choose 2, at least one.
inline std::size_t safety_terms(std::size_t n) { return std::max<std::size_t>(1, n * (n - 1) / 2); }

}  // namespace detail

template <class S>
PuiseuxBranchSet puiseux_branches(const QPoly& f, const S& l0) {
  PuiseuxBranchSet out;
  out.n = detail::require_degree_two(f);
  LaurentYPoly F = detail::laurent_in_y(f);
  F[0] = F[0] - LaurentA(AlgNum(l0));
  LaurentYPoly G = detail::laurent_in_y(f.derivative("y"));
  out.tree = expand_roots({F, G}, detail::safety_terms(out.n));
  out.beta = root_labels(out.tree, 0);
  out.gamma = root_labels(out.tree, 1);
  if (out.beta.size() != out.n || out.gamma.size() + 1 != out.n)
    throw CrossCheckError("root count mismatch in the Puiseux expansion");
  for (const auto& c : out.tree.classes) out.D = std::lcm(out.D, c.ramification);
  out.truncation_order = 0;
  bool any = false;
  for (const auto& c : out.tree.classes) {
    if (c.leading() > ExtRational(1)) throw CrossCheckError("branch grows faster than x");
    if (c.tail.is_neg_infinity()) continue;
    Rational t = c.tail.value() * Rational(static_cast<long>(out.D));
    std::int64_t ti = t.get_num().get_si();
    out.truncation_order = any ? std::max(out.truncation_order, ti) : ti;
    any = true;
  }
  return out;
}

inline ContactMatrix contact_matrix(const PuiseuxBranchSet& b) {
  ContactMatrix m;
  const std::size_t n = b.beta.size();
  m.entries.assign(n, std::vector<ExtRational>(n, ExtRational::neg_infinity()));
  const Rational D(static_cast<long>(b.D));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m.entries[i][j] = contact(b.tree, b.beta[i], b.beta[j]).scaled(D);
  return m;
}

namespace detail {

/// min_i (sum_{j != i} c_ij + min_{j != i} c_ij), in powers of x.
inline ExtRational contact_functional(const PuiseuxBranchSet& b) {
  ContactMatrix m = contact_matrix(b);
  const Rational inv_d = Rational(1) / Rational(static_cast<long>(b.D));
  std::optional<ExtRational> best;
  for (std::size_t i = 0; i < m.size(); ++i) {
    ExtRational sum(0);
    std::optional<ExtRational> lo;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j == i) continue;
      sum = sum + m(i, j);
      lo = lo ? min(*lo, m(i, j)) : m(i, j);
    }
    ExtRational v = (sum + *lo).scaled(inv_d);
    best = best ? min(*best, v) : v;
  }
  return *best;
}

}  // namespace detail

struct Lemma31Values {
  ExtRational on_fiber;     // f_y along the branches of f = lambda0
  ExtRational on_critical;  // f - lambda0 along the branches of f_y = 0
};

inline Lemma31Values lemma31_from(const PuiseuxBranchSet& b) {
  Lemma31Values v;
  std::optional<ExtRational> fib, crit;
  for (const auto& c : b.tree.classes) {
    if (c.mult[0] > 0) fib = fib ? min(*fib, c.value[1]) : c.value[1];
    if (c.mult[1] > 0) crit = crit ? min(*crit, c.value[0]) : c.value[0];
  }
  v.on_fiber = *fib;
  v.on_critical = *crit;
  return v;
}

template <class S>
Lemma31Values lemma31_exponents(const QPoly& f, const S& l0) {
  return lemma31_from(puiseux_branches(f, l0));
}

struct Prop22Result {
  ExtRational lhs;
  ExtRational rhs;
  bool equal = false;
};

inline Prop22Result prop22_from(const PuiseuxBranchSet& b) {
  Prop22Result r;
  r.lhs = detail::contact_functional(b);
  r.rhs = lemma31_from(b).on_critical;
  r.equal = r.lhs == r.rhs;
  return r;
}

template <class S>
Prop22Result prop22_check(const QPoly& f, const S& l0) {
  return prop22_from(puiseux_branches(f, l0));
}

inline ExtRational cor36_from(const PuiseuxBranchSet& b) {
  auto v = lemma31_from(b);
  if (!(min(v.on_fiber, v.on_critical) < ExtRational(0)))
    throw PreconditionError("lambda0 is not a critical value at infinity (the pair exponent is not negative)");
  return detail::contact_functional(b) - Rational(1);
}

template <class S>
ExtRational cor36_exponent(const QPoly& f, const S& l0) {
  return cor36_from(puiseux_branches(f, l0));
}

inline bool lemmad2_from(const PuiseuxBranchSet& b) {
  const auto& t = b.tree;
  for (std::size_t i = 0; i < b.beta.size(); ++i) {
    for (std::size_t j = 0; j < b.beta.size(); ++j) {
      if (i == j) continue;
      ExtRational d = contact(t, b.beta[i], b.beta[j]);
      if (d.is_neg_infinity()) continue;
      bool found = std::any_of(b.gamma.begin(), b.gamma.end(),
                               [&](const RootLabel& g) { return contact(t, b.beta[i], g) == d; });
      if (!found) return false;
    }
    for (const auto& g : b.gamma) {
      ExtRational d = contact(t, b.beta[i], g);
      bool found = false;
      for (std::size_t j = 0; j < b.beta.size() && !found; ++j)
        found = j != i && contact(t, b.beta[i], b.beta[j]) == d;
      if (!found) return false;
    }
  }
  return true;
}

template <class S>
bool lemmad2_check(const QPoly& f, const S& l0) {
  return lemmad2_from(puiseux_branches(f, l0));
}

/// All oracle quantities at one point.
struct OracleBundle {
  LambdaPoint lambda;
  std::int64_t D = 1;
  Prop22Result prop22;
  Lemma31Values lemma31;
  std::optional<ExtRational> cor36;  // present when lambda0 is in Lambda(f)
  bool lemmad2 = false;
  ContactMatrix contacts;
};

template <class S>
OracleBundle oracle_bundle(const QPoly& f, const S& l0) {
  auto b = puiseux_branches(f, l0);
  OracleBundle r;
  r.D = b.D;
  r.prop22 = prop22_from(b);
  r.lemma31 = lemma31_from(b);
  if (min(r.lemma31.on_fiber, r.lemma31.on_critical) < ExtRational(0)) r.cor36 = cor36_from(b);
  r.lemmad2 = lemmad2_from(b);
  r.contacts = contact_matrix(b);
  return r;
}

/// One bundle per dynamic-evaluation branch of the point.
inline std::vector<OracleBundle> oracle_at(const QPoly& f, const LambdaPoint& at,
                                           SplitOrder order = SplitOrder::FirstFactorFirst) {
  auto branches = for_each_branch(at, [&](const auto& l0) { return oracle_bundle(f, l0); }, order);
  std::vector<OracleBundle> out;
  for (auto& [pt, v] : branches) {
    v.lambda = pt;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace gradinf
