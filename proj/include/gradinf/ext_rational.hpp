#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace gradinf {

using Rational = mpq_class;
using Integer = mpz_class;

// Error taxonomy shared by the library and the CLI exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (exit code 2 in the CLI).
struct PreconditionError : Error {
  using Error::Error;
};

// A theorem identity or internal invariant failed; indicates a bug (exit code 3).
struct CrossCheckError : Error {
  using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& text) {
  Rational r(text, 10);
  if (r.get_den() == 0) throw Error("zero denominator in '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Scalar protocol used by the templated containers. Every scalar type supplies
// is_zero (structural), is_zero_checked (decides vanishing, may throw a
// dynamic-evaluation split) and inverse.
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero_checked(const Rational& r) { return sgn(r) == 0; }
inline Rational inverse(const Rational& r) {
  if (sgn(r) == 0) throw Error("division by zero");
  return Rational(1) / r;
}
inline bool is_one(const Rational& r) { return r == 1; }

/// Value type of degrees and exponents: a rational number or -infinity.
/// -infinity is below every rational and absorbs addition.
class ExtRational {
 public:
  ExtRational() : value_(Rational(0)) {}
  ExtRational(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
  ExtRational(long v) : value_(Rational(v)) {}       // NOLINT(implicit)
  ExtRational(int v) : value_(Rational(v)) {}        // NOLINT(implicit)

  static ExtRational neg_infinity() {
    ExtRational e;
    e.value_.reset();
    return e;
  }

  bool is_neg_infinity() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }

  const Rational& value() const {
    if (!value_) throw Error("-inf has no rational value");
    return *value_;
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.is_neg_infinity() || b.is_neg_infinity())
      return a.is_neg_infinity() == b.is_neg_infinity();
    return *a.value_ == *b.value_;
  }

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.is_neg_infinity() && b.is_neg_infinity()) return std::strong_ordering::equal;
    if (a.is_neg_infinity()) return std::strong_ordering::less;
    if (b.is_neg_infinity()) return std::strong_ordering::greater;
    int c = cmp(*a.value_, *b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_neg_infinity() || b.is_neg_infinity()) return neg_infinity();
    return ExtRational(Rational(*a.value_ + *b.value_));
  }

  friend ExtRational operator-(const ExtRational& a, const Rational& b) {
    if (a.is_neg_infinity()) return neg_infinity();
    return ExtRational(Rational(*a.value_ - b));
  }

  /// Multiplication by a positive rational scale (keeps -inf).
  ExtRational scaled(const Rational& positive) const {
    if (is_neg_infinity()) return neg_infinity();
    return ExtRational(Rational(*value_ * positive));
  }

  std::string to_string() const { return value_ ? value_->get_str() : std::string("-inf"); }

 private:
  std::optional<Rational> value_;
};

inline std::string to_string(const ExtRational& e) { return e.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const ExtRational& e) { return os << e.to_string(); }

inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }
inline ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }

}  // namespace gradinf
