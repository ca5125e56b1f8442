#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plsf/system.hpp"

namespace plsf {

/// Internal inconsistency while deriving a compactified field (e.g. a cleared
/// equation that still carries a negative exponent).
class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChartId {
  enum class Family { U, V };
  Family family = Family::U;
  int index = 1;  // 1..n+1

  std::string label() const {
    return (family == Family::U ? "U" : "V") + std::to_string(index);
  }
  static ChartId U(int i) { return ChartId{Family::U, i}; }
  static ChartId V(int i) { return ChartId{Family::V, i}; }
  friend bool operator==(const ChartId& a, const ChartId& b) {
    return a.family == b.family && a.index == b.index;
  }
};

enum class ChartDirection { Fast, Slow, Identity };

/// Compactified vector field in one directional chart. Equations are genuine
/// polynomials in the chart coordinates (u, v_2, ..., v_n) and eps; the last
/// coordinate v_n cuts out the infinity {v_n = 0}. The recorded rescale power
/// is the exponent of the v_n time rescale applied after substitution.
struct ChartField {
  ChartId chart;
  std::vector<Polynomial> equations;
  long long rescale_power = 0;
  ChartDirection direction = ChartDirection::Identity;
  int slow_index = 0;  // l for slow-direction charts, 0 otherwise
};

/// Structural dichotomies of the compactified system read off the weighted
/// degrees of P and Q (Proposition-level classification of the dynamics at
/// infinity).
struct StructureReport {
  long long delta = 0;
  long long delta_1 = 0;
  std::vector<std::optional<long long>> delta_j;  // entry j-2 for Q^j, null if Q^j == 0
  bool u1_is_slow_fast = false;  // the fast-direction chart never is
  bool infinity_filled_with_equilibria = false;
  bool q_irrelevant_at_infinity = false;
  bool infinity_dynamics_is_slow_fast = false;
};

/// Chart coordinate names used for printing: (u, v) in the plane,
/// (u, v, w) in space, (u, v2, ..., vn) in general.
std::vector<std::string> chart_variable_names(int n);

/// Derives the compactified field in a single directional chart: substitute
/// the chart change of coordinates, multiply by v_n^delta, and verify that
/// every equation cleared to a polynomial. Chart index n+1 returns the
/// original field (times -1 for V_{n+1}).
ChartField compactify_chart(const SlowFastSystem& sys, const WeightVector& w, ChartId chart);

/// All 2(n+1) directional charts, U_1..U_{n+1} then V_1..V_{n+1}.
std::vector<ChartField> all_charts(const SlowFastSystem& sys, const WeightVector& w);

StructureReport structure_report(const SlowFastSystem& sys, const WeightVector& w);

}  // namespace plsf
