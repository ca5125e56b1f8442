#pragma once

#include <map>
#include <string>
#include <vector>

#include "plsf/polynomial.hpp"

namespace plsf {

/// Polynomial slow-fast system in the fast time scale:
///   x' = P(x, y, eps),  y_j' = eps * Q^j(x, y, eps),  j = 2..n.
/// The fast variable is always stored first.
struct SlowFastSystem {
  std::vector<std::string> vars;  // n names, fast first
  Polynomial P;                   // fast equation right-hand side
  std::vector<Polynomial> Q;      // n-1 slow right-hand sides, for vars[1..]

  SlowFastSystem() : P(1) {}
  SlowFastSystem(std::vector<std::string> names, Polynomial p, std::vector<Polynomial> q)
      : vars(std::move(names)), P(std::move(p)), Q(std::move(q)) {
    if (vars.size() < 2) throw std::invalid_argument("SlowFastSystem: need n >= 2");
    if (Q.size() + 1 != vars.size())
      throw std::invalid_argument("SlowFastSystem: need exactly n-1 slow equations");
  }

  int n() const { return static_cast<int>(vars.size()); }
};

struct IntegrationOptions {
  double t_max = 10.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_steps = 2000000;
};

/// Parsed system-specification file: the system itself plus weights and the
/// numeric run configuration.
struct SystemSpec {
  SlowFastSystem sys;
  WeightVector weights;
  std::vector<double> eps_values;
  std::vector<std::vector<double>> initial_conditions;  // fast-first ordering
  IntegrationOptions integration;
  std::map<std::string, bool> analysis_options;
};

}  // namespace plsf
