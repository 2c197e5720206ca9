#pragma once

// Algebraic numbers by dynamic evaluation (D5). An element lives in a tower
// Q[t1]/(m1)[t2]/(m2)... of squarefree, monic moduli. Nothing is factored up
// front: when an inversion meets a zero divisor the offending modulus is split
// by a gcd and a SplitException tells the caller to fork.

#include "gradinf/ext_rational.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace gradinf {

/// Dense representative of a tower element. At level 0 only `q` is used; at
/// level k, `c` holds the coefficients (low to high) in t_k, each a level k-1
/// representative, trimmed so that the last entry is nonzero.
struct Rep {
  Rational q;
  std::vector<Rep> c;

  friend bool operator==(const Rep& a, const Rep& b) { return a.q == b.q && a.c == b.c; }
};

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// One level of a tower: its modulus is monic in t_depth with coefficients at
/// level depth-1.
class Tower {
 public:
  Tower(TowerPtr parent, std::vector<Rep> modulus)
      : parent_(std::move(parent)), modulus_(std::move(modulus)) {
    depth_ = parent_ ? parent_->depth() + 1 : 1;
  }

  std::size_t depth() const { return depth_; }
  const TowerPtr& parent() const { return parent_; }
  const std::vector<Rep>& modulus() const { return modulus_; }
  std::size_t degree() const { return modulus_.size() - 1; }

  /// Tower ending at level `level` (nullptr for level 0).
  static const Tower* at_level(const Tower* t, std::size_t level) {
    while (t && t->depth() > level) t = t->parent_.get();
    return t;
  }
  static TowerPtr at_level(const TowerPtr& t, std::size_t level) {
    TowerPtr cur = t;
    while (cur && cur->depth() > level) cur = cur->parent_;
    return cur;
  }

 private:
  TowerPtr parent_;
  std::vector<Rep> modulus_;
  std::size_t depth_ = 1;
};

inline std::size_t depth_of(const Tower* t) { return t ? t->depth() : 0; }

/// Thrown when a tower modulus m at `level` was found to factor as
/// first * second during an inversion. Both factors are monic with
/// coefficients at level-1 (i.e. in the tower `base`).
struct SplitException : std::exception {
  std::size_t level = 0;
  TowerPtr base;
  std::vector<Rep> first;
  std::vector<Rep> second;
  const char* what() const noexcept override { return "dynamic evaluation split"; }
};

namespace detail {

inline bool rep_is_zero(const Rep& r, std::size_t level) {
  return level == 0 ? sgn(r.q) == 0 : r.c.empty();
}

inline Rep rep_from_rational(const Rational& q, std::size_t level) {
  if (level == 0) return Rep{q, {}};
  if (sgn(q) == 0) return Rep{};
  Rep r;
  r.c.push_back(rep_from_rational(q, level - 1));
  return r;
}

inline Rep rep_lift(Rep r, std::size_t from, std::size_t to) {
  while (from < to) {
    Rep w;
    if (!rep_is_zero(r, from)) w.c.push_back(std::move(r));
    r = std::move(w);
    ++from;
  }
  return r;
}

inline void trim(std::vector<Rep>& v, std::size_t level) {
  while (!v.empty() && rep_is_zero(v.back(), level)) v.pop_back();
}

Rep rep_add(const Rep& a, const Rep& b, const Tower* t);
Rep rep_neg(const Rep& a, const Tower* t);
Rep rep_mul(const Rep& a, const Rep& b, const Tower* t);
Rep rep_inv(const Rep& a, const Tower* t);

inline Rep rep_sub(const Rep& a, const Rep& b, const Tower* t) { return rep_add(a, rep_neg(b, t), t); }

// Univariate polynomials over the field of tower `t` (coefficients at level depth(t)).
inline std::vector<Rep> poly_add(const std::vector<Rep>& a, const std::vector<Rep>& b, const Tower* t) {
  std::size_t lv = depth_of(t);
  std::vector<Rep> r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = rep_add(a[i], b[i], t);
    else
      r[i] = i < a.size() ? a[i] : b[i];
  }
  trim(r, lv);
  return r;
}

inline std::vector<Rep> poly_neg(const std::vector<Rep>& a, const Tower* t) {
  std::vector<Rep> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(rep_neg(x, t));
  return r;
}

inline std::vector<Rep> poly_mul(const std::vector<Rep>& a, const std::vector<Rep>& b, const Tower* t) {
  if (a.empty() || b.empty()) return {};
  std::size_t lv = depth_of(t);
  std::vector<Rep> r(a.size() + b.size() - 1, rep_from_rational(Rational(0), lv));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rep_is_zero(a[i], lv)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (rep_is_zero(b[j], lv)) continue;
      r[i + j] = rep_add(r[i + j], rep_mul(a[i], b[j], t), t);
    }
  }
  trim(r, lv);
  return r;
}

inline std::vector<Rep> poly_scale(const std::vector<Rep>& a, const Rep& s, const Tower* t) {
  std::vector<Rep> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(rep_mul(x, s, t));
  trim(r, depth_of(t));
  return r;
}

// Remainder modulo a monic polynomial; no inversion needed.
inline std::vector<Rep> poly_rem_monic(std::vector<Rep> a, const std::vector<Rep>& m, const Tower* t) {
  std::size_t lv = depth_of(t);
  std::size_t dm = m.size() - 1;
  trim(a, lv);
  while (a.size() > dm) {
    Rep lead = a.back();
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = rep_sub(a[shift + i], rep_mul(lead, m[i], t), t);
    trim(a, lv);
  }
  return a;
}

// Quotient and remainder; inverts the leading coefficient of b (may split).
inline std::pair<std::vector<Rep>, std::vector<Rep>> poly_divmod(std::vector<Rep> a, const std::vector<Rep>& b,
                                                                 const Tower* t) {
  std::size_t lv = depth_of(t);
  if (b.empty()) throw Error("polynomial division by zero");
  Rep inv_lc = rep_inv(b.back(), t);
  std::size_t db = b.size() - 1;
  trim(a, lv);
  std::vector<Rep> q;
  if (a.size() > db) q.assign(a.size() - db, Rep{});
  for (auto& x : q) x = rep_from_rational(Rational(0), lv);
  while (a.size() > db) {
    std::size_t shift = a.size() - 1 - db;
    Rep coef = rep_mul(a.back(), inv_lc, t);
    q[shift] = coef;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = rep_sub(a[shift + i], rep_mul(coef, b[i], t), t);
    a.pop_back();
    trim(a, lv);
  }
  trim(q, lv);
  return {q, a};
}

inline std::vector<Rep> poly_monic(const std::vector<Rep>& a, const Tower* t) {
  if (a.empty()) return a;
  return poly_scale(a, rep_inv(a.back(), t), t);
}

inline Rep rep_add(const Rep& a, const Rep& b, const Tower* t) {
  if (!t) return Rep{a.q + b.q, {}};
  return Rep{Rational(0), poly_add(a.c, b.c, t->parent().get())};
}

inline Rep rep_neg(const Rep& a, const Tower* t) {
  if (!t) return Rep{-a.q, {}};
  return Rep{Rational(0), poly_neg(a.c, t->parent().get())};
}

inline Rep rep_mul(const Rep& a, const Rep& b, const Tower* t) {
  if (!t) return Rep{a.q * b.q, {}};
  const Tower* p = t->parent().get();
  return Rep{Rational(0), poly_rem_monic(poly_mul(a.c, b.c, p), t->modulus(), p)};
}

// Inverse modulo the tower. A non-trivial gcd with the modulus raises a split.
inline Rep rep_inv(const Rep& a, const Tower* t) {
  if (!t) {
    if (sgn(a.q) == 0) throw Error("division by zero in algebraic arithmetic");
    return Rep{Rational(1) / a.q, {}};
  }
  const Tower* p = t->parent().get();
  std::size_t plv = depth_of(p);
  if (a.c.empty()) throw Error("division by zero in algebraic arithmetic");
  // Extended Euclid on (modulus, a); track the cofactor of a only.
  std::vector<Rep> r0 = t->modulus(), r1 = a.c;
  std::vector<Rep> s0, s1{rep_from_rational(Rational(1), plv)};
  while (!r1.empty()) {
    auto [q, r] = poly_divmod(r0, r1, p);
    std::vector<Rep> s2 = poly_add(s0, poly_neg(poly_mul(q, s1, p), p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() == 1) {
    Rep inv_g = rep_inv(r0[0], p);
    return Rep{Rational(0), poly_rem_monic(poly_scale(s0, inv_g, p), t->modulus(), p)};
  }
  SplitException ex;
  ex.level = t->depth();
  ex.base = t->parent();
  ex.first = poly_monic(r0, p);
  ex.second = poly_divmod(t->modulus(), ex.first, p).first;
  throw ex;
}

inline std::string rep_to_string(const Rep& r, std::size_t level) {
  if (level == 0) return r.q.get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = r.c.size(); i-- > 0;) {
    if (rep_is_zero(r.c[i], level - 1)) continue;
    std::string coef = rep_to_string(r.c[i], level - 1);
    std::string var = "t" + std::to_string(level);
    std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    bool simple = level == 1;
    if (!first) os << " + ";
    first = false;
    if (mon.empty()) {
      os << (simple ? coef : "(" + coef + ")");
    } else if (simple && coef == "1") {
      os << mon;
    } else {
      os << (simple ? coef : "(" + coef + ")") << "*" << mon;
    }
  }
  return first ? "0" : os.str();
}

}  // namespace detail

/// Element of a tower field (or of Q when the tower is null).
class AlgNum {
 public:
  AlgNum() : rep_{Rational(0), {}} {}
  AlgNum(const Rational& q) : rep_{q, {}} {}  // NOLINT(implicit)
  AlgNum(long q) : rep_{Rational(q), {}} {}   // NOLINT(implicit)
  AlgNum(int q) : rep_{Rational(q), {}} {}    // NOLINT(implicit)
  AlgNum(TowerPtr tower, Rep rep) : tower_(std::move(tower)), rep_(std::move(rep)) {}

  /// The class of t_k in the tower ending at level k.
  static AlgNum generator(const TowerPtr& tower) {
    std::size_t lv = depth_of(tower.get());
    Rep g;
    g.c = {detail::rep_from_rational(Rational(0), lv - 1), detail::rep_from_rational(Rational(1), lv - 1)};
    detail::trim(g.c, lv - 1);
    g.c = detail::poly_rem_monic(g.c, tower->modulus(), tower->parent().get());
    return AlgNum(tower, g);
  }

  const TowerPtr& tower() const { return tower_; }
  std::size_t level() const { return depth_of(tower_.get()); }
  const Rep& rep() const { return rep_; }

  bool is_structural_zero() const { return detail::rep_is_zero(rep_, level()); }

  /// Rational value when the element lies in the ground field.
  std::optional<Rational> as_rational() const {
    const Rep* r = &rep_;
    for (std::size_t lv = level(); lv > 0; --lv) {
      if (r->c.empty()) return Rational(0);
      if (r->c.size() > 1) return std::nullopt;
      r = &r->c[0];
    }
    return r->q;
  }

  AlgNum lifted_to(const TowerPtr& t) const {
    std::size_t to = depth_of(t.get());
    if (to < level() || Tower::at_level(t.get(), level()) != tower_.get())
      throw Error("incompatible algebraic towers");
    return AlgNum(t, detail::rep_lift(rep_, level(), to));
  }

  friend AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    auto t = common(a, b);
    return AlgNum(t, detail::rep_add(a.lift_rep(t), b.lift_rep(t), t.get()));
  }
  friend AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    auto t = common(a, b);
    return AlgNum(t, detail::rep_sub(a.lift_rep(t), b.lift_rep(t), t.get()));
  }
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    auto t = common(a, b);
    return AlgNum(t, detail::rep_mul(a.lift_rep(t), b.lift_rep(t), t.get()));
  }
  AlgNum operator-() const { return AlgNum(tower_, detail::rep_neg(rep_, tower_.get())); }
  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

  /// Structural equality after lifting to a common tower.
  friend bool operator==(const AlgNum& a, const AlgNum& b) {
    auto t = common(a, b);
    return a.lift_rep(t) == b.lift_rep(t);
  }

  AlgNum inverse() const { return AlgNum(tower_, detail::rep_inv(rep_, tower_.get())); }

  std::string to_string() const { return detail::rep_to_string(rep_, level()); }

 private:
  static TowerPtr common(const AlgNum& a, const AlgNum& b) {
    if (a.level() >= b.level()) {
      if (b.level() > 0 && Tower::at_level(a.tower_.get(), b.level()) != b.tower_.get())
        throw Error("incompatible algebraic towers");
      return a.tower_;
    }
    if (a.level() > 0 && Tower::at_level(b.tower_.get(), a.level()) != a.tower_.get())
      throw Error("incompatible algebraic towers");
    return b.tower_;
  }
  Rep lift_rep(const TowerPtr& t) const { return detail::rep_lift(rep_, level(), depth_of(t.get())); }

  TowerPtr tower_;
  Rep rep_;
};

inline bool is_zero(const AlgNum& a) { return a.is_structural_zero(); }
inline bool is_one(const AlgNum& a) {
  auto q = a.as_rational();
  return q && *q == 1;
}
inline AlgNum inverse(const AlgNum& a) { return a.inverse(); }
inline std::string to_string(const AlgNum& a) { return a.to_string(); }

/// Zero iff the representative vanishes; a stored nonzero representative must
/// also be a unit, otherwise the tower splits (thrown).
inline bool is_zero_checked(const AlgNum& a) {
  if (a.is_structural_zero()) return true;
  (void)a.inverse();
  return false;
}

enum class ZeroTest { Zero, NonZero, Split };

struct ZeroTestResult {
  ZeroTest outcome = ZeroTest::Zero;
  std::optional<SplitException> split;
};

/// Non-throwing variant of the zero test.
inline ZeroTestResult alg_is_zero(const AlgNum& a) {
  if (a.is_structural_zero()) return {ZeroTest::Zero, std::nullopt};
  try {
    (void)a.inverse();
    return {ZeroTest::NonZero, std::nullopt};
  } catch (const SplitException& s) {
    return {ZeroTest::Split, s};
  }
}

/// Builds a new tower level over `parent` from a polynomial with coefficients
/// in that field (low to high). The polynomial is made monic; callers pass a
/// squarefree polynomial.
inline TowerPtr extend_tower(const TowerPtr& parent, const std::vector<AlgNum>& poly) {
  std::size_t lv = depth_of(parent.get());
  std::vector<Rep> m;
  m.reserve(poly.size());
  for (const auto& c : poly) {
    if (c.level() > lv) throw Error("modulus coefficient outside the base field");
    m.push_back(detail::rep_lift(c.rep(), c.level(), lv));
  }
  detail::trim(m, lv);
  if (m.size() < 2) throw Error("tower modulus must be non-constant");
  m = detail::poly_monic(m, parent.get());
  return std::make_shared<const Tower>(parent, std::move(m));
}

/// Coefficients of a split factor as field elements over the split's base.
inline std::vector<AlgNum> split_factor(const SplitException& s, bool first) {
  const auto& v = first ? s.first : s.second;
  std::vector<AlgNum> out;
  out.reserve(v.size());
  for (const auto& r : v) out.emplace_back(s.base, r);
  return out;
}

}  // namespace gradinf
