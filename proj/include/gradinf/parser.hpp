#pragma once

// Recursive-descent parser for polynomial expressions.
//
//   expr   := term (('+' | '-') term)*
//   term   := ['-'] factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := rational | name | '(' expr ')'
//   rational := int | int '/' posint
//
// There is no implicit multiplication and whitespace is ignored. In curve
// mode the parameter t may carry a negative exponent ("t^-2").

#include "gradinf/classifier.hpp"
#include "gradinf/laurent.hpp"
#include "gradinf/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

namespace gradinf {

/// Malformed input. `column` is 1-based and points into the parsed string.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t column)
      : Error(msg + " at column " + std::to_string(column)), column(column) {}
  std::size_t column;
};

namespace detail {

struct PolyBuilder {
  using Value = QPoly;
  std::vector<std::string> vars;

  bool knows(const std::string& name) const { return std::find(vars.begin(), vars.end(), name) != vars.end(); }
  Value constant(const Rational& q) const { return Value(q); }
  Value variable(const std::string& name) const { return Value::variable(name); }
  bool negative_power_allowed(const std::string&) const { return false; }
  Value negative_power(const std::string&, unsigned) const { return Value(); }
  static Value power(const Value& v, unsigned k) { return v.pow(k); }
};

struct CurveBuilder {
  using Value = LaurentPoly<Rational>;
  std::string param = "t";

  bool knows(const std::string& name) const { return name == param; }
  Value constant(const Rational& q) const { return Value(q); }
  Value variable(const std::string&) const { return Value::t(); }
  bool negative_power_allowed(const std::string& name) const { return name == param; }
  Value negative_power(const std::string&, unsigned k) const {
    return Value::monomial(Rational(1), -static_cast<std::int64_t>(k));
  }
  static Value power(const Value& v, unsigned k) { return v.pow(k); }
};

template <class Builder>
class Parser {
 public:
  using Value = typename Builder::Value;

  Parser(const std::string& src, Builder b, std::size_t offset = 0) : src_(src), b_(std::move(b)), offset_(offset) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ < src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, offset_ + pos_ + 1); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return src_.substr(start, pos_ - start);
  }

  Value expr() {
    Value acc = term();
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Value term() {
    bool negate = accept('-');
    Value acc = factor();
    while (accept('*')) acc = acc * factor();
    return negate ? -acc : acc;
  }

  Value factor() {
    std::string name;
    Value v = base(name);
    if (!accept('^')) return v;
    skip();
    if (pos_ < src_.size() && src_[pos_] == '-') {
      if (name.empty() || !b_.negative_power_allowed(name)) fail("negative exponent is only allowed on the curve parameter");
      ++pos_;
      std::size_t at = pos_;
      unsigned k = exponent();
      if (k == 0) {
        pos_ = at;
        fail("exponent must be positive after '-'");
      }
      return b_.negative_power(name, k);
    }
    return Builder::power(v, exponent());
  }

  unsigned exponent() {
    if (!peek_digit()) fail("expected an exponent");
    std::string d = digits();
    if (d.size() > 4) fail("exponent too large");
    return static_cast<unsigned>(std::stoul(d));
  }

  // `name` is set when the base is a bare variable.
  Value base(std::string& name) {
    skip();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num(digits());
      Integer den(1);
      if (accept('/')) {
        std::size_t at = pos_;
        den = Integer(digits());
        if (den == 0) {
          pos_ = at;
          skip();
          fail("zero denominator");
        }
      }
      Rational q(num, den);
      q.canonicalize();
      return b_.constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      name = src_.substr(start, pos_ - start);
      if (!b_.knows(name)) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return b_.variable(name);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& src_;
  Builder b_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline QPoly parse_poly(const std::string& src, const std::vector<std::string>& vars = {"x", "y"}) {
  return detail::Parser<detail::PolyBuilder>(src, detail::PolyBuilder{vars}).parse().compact();
}

inline LaurentPoly<Rational> parse_laurent(const std::string& src, const std::string& param = "t",
                                           std::size_t offset = 0) {
  return detail::Parser<detail::CurveBuilder>(src, detail::CurveBuilder{param}, offset).parse();
}

/// Comma-separated Laurent expressions in t.
inline std::vector<LaurentPoly<Rational>> parse_curve(const std::string& src) {
  std::vector<LaurentPoly<Rational>> out;
  std::size_t start = 0, depth = 0;
  for (std::size_t i = 0; i <= src.size(); ++i) {
    if (i < src.size() && src[i] == '(') ++depth;
    if (i < src.size() && src[i] == ')' && depth > 0) --depth;
    if (i == src.size() || (src[i] == ',' && depth == 0)) {
      out.push_back(parse_laurent(src.substr(start, i - start), "t", start));
      start = i + 1;
    }
  }
  return out;
}

/// "generic", a rational such as "-3/2", or "root(<polynomial in t>)".
inline LambdaPoint parse_lambda(const std::string& spec) {
  std::string s = spec;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s == "generic") return LambdaPoint::generic();
  if (s.rfind("root(", 0) == 0) {
    if (s.back() != ')') throw ParseError("expected ')' closing root(", s.size() + 1);
    QPoly p = detail::Parser<detail::PolyBuilder>(s.substr(5, s.size() - 6), detail::PolyBuilder{{"t"}}, 5).parse();
    auto u = p.compact().to_upoly("t");
    if (u.degree() < 1) throw PreconditionError("root(...) needs a non-constant polynomial in t");
    if (squarefree_part(u).degree() != u.degree()) throw PreconditionError("root(...) needs a squarefree polynomial");
    return LambdaPoint::algebraic(u);
  }
  QPoly c = detail::Parser<detail::PolyBuilder>(s, detail::PolyBuilder{{}}).parse();
  if (!c.is_constant()) throw ParseError("lambda must be a rational, root(...) or generic", 1);
  return LambdaPoint::rational(c.constant_term());
}

/// "x,y,z" -> {"x", "y", "z"}.
inline std::vector<std::string> parse_vars(const std::string& list) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&](std::size_t column) {
    if (cur.empty() || !(std::isalpha(static_cast<unsigned char>(cur[0])) || cur[0] == '_'))
      throw ParseError("bad variable name '" + cur + "'", column);
    for (char ch : cur)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw ParseError("bad variable name '" + cur + "'", column);
    if (std::find(out.begin(), out.end(), cur) != out.end()) throw ParseError("duplicate variable '" + cur + "'", column);
    out.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    char ch = list[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == ',')
      flush(i + 1);
    else
      cur += ch;
  }
  flush(list.size() + 1);
  return out;
}

}  // namespace gradinf
