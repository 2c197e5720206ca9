#pragma once

// Independent reference computations used only by the test suites.

#include "gradinf/multipoly.hpp"

#include <random>
#include <vector>

namespace gradinf::testing {

/// Determinant by Laplace expansion along the first row.
inline QPoly cofactor_determinant(const std::vector<std::vector<QPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return QPoly(Rational(1));
  if (n == 1) return m[0][0];
  QPoly acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<QPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<QPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    QPoly term = m[0][j] * cofactor_determinant(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline QPoly var(const char* name) { return QPoly::variable(name); }
inline QPoly cst(long v) { return QPoly(Rational(v)); }
inline QPoly cst(long p, long q) { return QPoly(make_rational(p, q)); }

/// y^(n+1) + x*y^n + y.
inline QPoly family_b(unsigned n) {
  return var("y").pow(n + 1) + var("x") * var("y").pow(n) + var("y");
}

/// Random polynomial in the given variables with small integer coefficients.
inline QPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int terms,
                         int coef_range = 5) {
  std::uniform_int_distribution<int> coef(-coef_range, coef_range), deg(0, max_deg);
  QPoly p;
  for (int k = 0; k < terms; ++k) {
    QPoly m = cst(coef(rng));
    for (const auto& v : vars) m = m * QPoly::variable(v).pow(static_cast<unsigned>(deg(rng)));
    p = p + m;
  }
  return p;
}

}  // namespace gradinf::testing
