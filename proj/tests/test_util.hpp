#pragma once

#include <random>
#include <string>
#include <vector>

#include "plsf/parse.hpp"
#include "plsf/polynomial.hpp"

namespace plsf::test {

inline std::vector<std::string> var_names(int n) {
  static const std::vector<std::string> pool = {"x", "y", "z", "t4", "t5"};
  return {pool.begin(), pool.begin() + n};
}

inline Rational random_rational(std::mt19937_64& rng, int max_abs_num = 5, int max_den = 4) {
  std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
  std::uniform_int_distribution<int> den(1, max_den);
  return {num(rng), den(rng)};
}

inline Rational random_nonzero_rational(std::mt19937_64& rng, int max_abs_num = 5, int max_den = 4) {
  for (;;) {
    Rational r = random_rational(rng, max_abs_num, max_den);
    if (!r.is_zero()) return r;
  }
}

/// Random polynomial with spatial total degree <= max_deg and eps degree
/// <= eps_deg, roughly `terms` monomials.
inline Polynomial random_polynomial(std::mt19937_64& rng, int n, int max_deg, int terms,
                                    int eps_deg = 0) {
  Polynomial p(n);
  std::uniform_int_distribution<int> tcount(1, terms);
  std::uniform_int_distribution<int> edist(0, max_deg);
  std::uniform_int_distribution<int> epsdist(0, eps_deg);
  int k = tcount(rng);
  for (int t = 0; t < k; ++t) {
    Monomial m;
    m.spatial.resize(static_cast<size_t>(n));
    int budget = max_deg;
    for (int i = 0; i < n; ++i) {
      std::uniform_int_distribution<int> d(0, budget);
      m.spatial[static_cast<size_t>(i)] = d(rng);
      budget -= m.spatial[static_cast<size_t>(i)];
    }
    m.eps = epsdist(rng);
    p.add_term(m, random_rational(rng));
  }
  return p;
}

inline Polynomial parse_with(const std::string& src, const std::vector<std::string>& vars) {
  return parse_polynomial(src, vars);
}

}  // namespace plsf::test
