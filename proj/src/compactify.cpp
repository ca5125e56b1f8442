#include "plsf/compactify.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plsf {

namespace {

/// delta_1 and the delta_j, plus their maximum delta = deg_w X.
struct Degrees {
  long long delta_1;
  std::vector<std::optional<long long>> delta_j;
  long long delta;
};

Degrees weighted_degrees(const SlowFastSystem& sys, const WeightVector& w) {
  if (w.dim() != sys.n())
    throw std::invalid_argument("weight vector dimension does not match the system");
  auto dp = quasi_degree_max(sys.P, w);
  if (!dp) throw DerivationError("fast equation P is identically zero");
  Degrees d;
  d.delta_1 = *dp - w[0];
  d.delta = d.delta_1;
  for (size_t j = 0; j < sys.Q.size(); ++j) {
    auto dq = quasi_degree_max(sys.Q[j], w);
    if (dq) {
      long long dj = *dq - w[static_cast<int>(j) + 1];
      d.delta_j.push_back(dj);
      d.delta = std::max(d.delta, dj);
    } else {
      d.delta_j.push_back(std::nullopt);
    }
  }
  return d;
}

}  // namespace

std::vector<std::string> chart_variable_names(int n) {
  if (n == 2) return {"u", "v"};
  if (n == 3) return {"u", "v", "w"};
  std::vector<std::string> names = {"u"};
  for (int i = 2; i < n; ++i) names.push_back("v" + std::to_string(i));
  names.push_back("vn");
  return names;
}

ChartField compactify_chart(const SlowFastSystem& sys, const WeightVector& w, ChartId chart) {
  const int n = sys.n();
  if (chart.index < 1 || chart.index > n + 1)
    throw std::invalid_argument("chart index out of range");
  const Degrees deg = weighted_degrees(sys, w);

  // Vector field components in the fast time scale: (P, eps*Q^2, ..., eps*Q^n).
  std::vector<Polynomial> F;
  F.push_back(sys.P);
  for (const auto& q : sys.Q) F.push_back(Polynomial::eps(n) * q);

  ChartField out;
  out.chart = chart;

  if (chart.index == n + 1) {
    out.direction = ChartDirection::Identity;
    out.rescale_power = 0;
    out.equations = F;
    if (chart.family == ChartId::Family::V)
      for (auto& e : out.equations) e = -e;
    return out;
  }

  const int l = chart.index;          // 1-based chart axis
  const int lv = l - 1;               // original variable hitting 1/v^w
  const int radial = n - 1;           // chart slot of v_n
  const Rational s(chart.family == ChartId::Family::U ? 1 : -1);

  out.direction = l == 1 ? ChartDirection::Fast : ChartDirection::Slow;
  out.slow_index = l == 1 ? 0 : l;
  out.rescale_power = deg.delta;

  // Chart slot of each original variable m != lv: earlier variables keep
  // their position, later ones shift down by one.
  auto slot = [&](int m) { return m < lv ? m : m - 1; };

  // Simultaneous change of coordinates: x_lv = s / v^{w_lv} and
  // x_m = c_{slot(m)} / v^{w_m} for the remaining variables.
  std::vector<std::pair<Rational, Monomial>> images;
  for (int m = 0; m < n; ++m) {
    Monomial image;
    image.spatial.assign(static_cast<size_t>(n), 0);
    if (m == lv) {
      image.spatial[static_cast<size_t>(radial)] = -w[m];
      images.emplace_back(s, image);
    } else {
      image.spatial[static_cast<size_t>(slot(m))] = 1;
      image.spatial[static_cast<size_t>(radial)] += -w[m];
      images.emplace_back(Rational(1), image);
    }
  }
  auto substituted = [&](const Polynomial& p) { return p.substitute_simultaneous(images); };

  // v' before rescaling: -(s / w_l) * v^{w_l + 1} * F_l(chart coords).
  Polynomial v_eq = substituted(F[static_cast<size_t>(lv)])
                        .shifted(radial, w[lv] + 1)
                        .scaled(-s / Rational(w[lv]));

  std::vector<Polynomial> eqs(static_cast<size_t>(n), Polynomial::zero(n));
  for (int m = 0; m < n; ++m) {
    if (m == lv) continue;
    // c' = v^{w_m} F_m(chart coords) + w_m * c * v^{-1} * v'.
    Polynomial eq = substituted(F[static_cast<size_t>(m)]).shifted(radial, w[m]);
    Polynomial cross = Polynomial::variable(n, slot(m)) * v_eq.shifted(radial, -1);
    eq += cross.scaled(Rational(w[m]));
    eqs[static_cast<size_t>(slot(m))] = std::move(eq);
  }
  eqs[static_cast<size_t>(radial)] = std::move(v_eq);

  const int delta_shift = static_cast<int>(deg.delta);
  for (auto& e : eqs) e = e.shifted(radial, delta_shift);

  for (const auto& e : eqs)
    if (e.is_laurent())
      throw DerivationError("chart " + chart.label() +
                            ": cleared equation retains a negative exponent");
  if (!eqs[static_cast<size_t>(radial)].is_zero() &&
      !eqs[static_cast<size_t>(radial)].divisible_by_var(radial))
    throw DerivationError("chart " + chart.label() +
                          ": the v_n equation is not divisible by v_n");

  out.equations = std::move(eqs);
  return out;
}

std::vector<ChartField> all_charts(const SlowFastSystem& sys, const WeightVector& w) {
  const int n = sys.n();
  std::vector<ChartId> ids;
  for (int i = 1; i <= n + 1; ++i) ids.push_back(ChartId::U(i));
  for (int i = 1; i <= n + 1; ++i) ids.push_back(ChartId::V(i));

  std::vector<ChartField> charts(ids.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < static_cast<int>(ids.size()); ++k) {
    try {
      charts[static_cast<size_t>(k)] = compactify_chart(sys, w, ids[static_cast<size_t>(k)]);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return charts;
}

StructureReport structure_report(const SlowFastSystem& sys, const WeightVector& w) {
  const Degrees deg = weighted_degrees(sys, w);
  StructureReport r;
  r.delta = deg.delta;
  r.delta_1 = deg.delta_1;
  r.delta_j = deg.delta_j;
  r.u1_is_slow_fast = false;

  bool some_dj_above = false;
  bool all_dj_below = true;
  bool some_dj_equal_delta = false;
  for (const auto& dj : deg.delta_j) {
    if (dj && *dj > deg.delta_1) some_dj_above = true;
    if (dj && *dj >= deg.delta_1) all_dj_below = false;
    if (dj && *dj == deg.delta) some_dj_equal_delta = true;
  }
  r.infinity_filled_with_equilibria = some_dj_above;
  r.q_irrelevant_at_infinity = all_dj_below;
  r.infinity_dynamics_is_slow_fast =
      sys.n() >= 3 && deg.delta == deg.delta_1 && some_dj_equal_delta;
  return r;
}

}  // namespace plsf
