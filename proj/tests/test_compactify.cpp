#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "plsf/compactify.hpp"
#include "plsf/parse.hpp"
#include "test_util.hpp"

using namespace plsf;
using plsf::test::random_polynomial;

namespace {

SlowFastSystem make_sys(const std::vector<std::string>& vars, const std::string& P,
                        const std::vector<std::string>& Q) {
  std::vector<Polynomial> q;
  for (const auto& s : Q) q.push_back(parse_polynomial(s, vars));
  return SlowFastSystem(vars, parse_polynomial(P, vars), std::move(q));
}

// Fixture systems used across the suite.
SlowFastSystem planar_deg() {  // infinity filled with equilibria under w=(2,3)
  return make_sys({"x", "y"}, "-x", {"y^2 - x^3"});
}
SlowFastSystem cone_field() {  // only P matters at infinity under w=(1,1,1)
  return make_sys({"x", "y", "z"}, "x*(y^2 - z^2)", {"1", "1"});
}
SlowFastSystem cone_field_sf() {  // slow-fast at infinity under w=(1,1,1)
  return make_sys({"x", "y", "z"}, "x*(y^2 - z^2)", {"z^3", "y^3"});
}
SlowFastSystem plane_nontransversal() {
  return make_sys({"x", "y", "z"}, "y + z", {"x + z", "x + y"});
}
SlowFastSystem vdp_seed() {  // relaxation-oscillation seed, parameter a = -1/2
  return make_sys({"x", "y", "z"}, "y^2*z - 1/2*x^2*y - 1/3*x^3", {"0", "-1/2*y^3 - x*y^2"});
}

Polynomial chart_expect(int n, const std::string& src) {
  return parse_polynomial(src, chart_variable_names(n));
}

/// Independent oracle: rebuilds the chart field from the quasi-homogeneous
/// decomposition, term by term, following the displayed sum structure
/// (v_n powers delta - d, cross terms with weight ratios). compactify_chart
/// instead substitutes and clears denominators, so agreement is meaningful.
std::vector<Polynomial> structured_chart_oracle(const SlowFastSystem& sys, const WeightVector& w,
                                                int l) {
  const int n = sys.n();
  const int radial = n - 1;
  auto dp = quasi_degree_max(sys.P, w);
  REQUIRE(dp.has_value());
  long long delta = *dp - w[0];
  std::vector<Decomposition> decQ;
  for (size_t j = 0; j < sys.Q.size(); ++j) {
    decQ.push_back(decompose(sys.Q[j], w, w[static_cast<int>(j) + 1]));
    if (!decQ.back().components.empty()) delta = std::max(delta, decQ.back().delta);
  }
  Decomposition decP = decompose(sys.P, w, w[0]);

  const int lv = l - 1;
  auto slot = [&](int m) { return m < lv ? m : m - 1; };
  // Renames original variables into chart slots and puts 1 in slot lv.
  auto chart_arg = [&](const Polynomial& comp) {
    std::vector<std::pair<Rational, Monomial>> images;
    for (int m = 0; m < n; ++m) {
      Monomial img;
      img.spatial.assign(static_cast<size_t>(n), 0);
      if (m == lv) {
        images.emplace_back(Rational(1), img);  // x_l := 1
      } else {
        img.spatial[static_cast<size_t>(slot(m))] = 1;
        images.emplace_back(Rational(1), img);
      }
    }
    return comp.substitute_simultaneous(images);
  };
  auto vpow = [&](long long k) {
    Polynomial p = Polynomial::constant(n, Rational(1));
    return p.shifted(radial, static_cast<int>(k));
  };

  std::vector<Polynomial> eqs(static_cast<size_t>(n), Polynomial::zero(n));
  Polynomial eps = Polynomial::eps(n);

  if (l == 1) {
    for (int m = 1; m < n; ++m) {
      Polynomial eq(n);
      Polynomial coord = Polynomial::variable(n, slot(m));
      for (const auto& [d, comp] : decP.components)
        eq -= vpow(delta - d) * coord.scaled(Rational(w[m], w[0])) * chart_arg(comp);
      for (const auto& [d, comp] : decQ[static_cast<size_t>(m - 1)].components)
        eq += vpow(delta - d) * eps * chart_arg(comp);
      eqs[static_cast<size_t>(slot(m))] = eq;
    }
    Polynomial veq(n);
    for (const auto& [d, comp] : decP.components)
      veq -= vpow(delta + 1 - d).scaled(Rational(1, w[0])) * chart_arg(comp);
    eqs[static_cast<size_t>(radial)] = veq;
    return eqs;
  }

  const auto& decL = decQ[static_cast<size_t>(lv - 1)];
  // u' row (the fast coordinate).
  {
    Polynomial eq(n);
    for (const auto& [d, comp] : decP.components) eq += vpow(delta - d) * chart_arg(comp);
    Polynomial u = Polynomial::variable(n, 0);
    for (const auto& [d, comp] : decL.components)
      eq -= vpow(delta - d) * eps * u.scaled(Rational(w[0], w[lv])) * chart_arg(comp);
    eqs[0] = eq;
  }
  for (int m = 1; m < n; ++m) {
    if (m == lv) continue;
    Polynomial eq(n);
    Polynomial coord = Polynomial::variable(n, slot(m));
    for (const auto& [d, comp] : decQ[static_cast<size_t>(m - 1)].components)
      eq += vpow(delta - d) * eps * chart_arg(comp);
    for (const auto& [d, comp] : decL.components)
      eq -= vpow(delta - d) * eps * coord.scaled(Rational(w[m], w[lv])) * chart_arg(comp);
    eqs[static_cast<size_t>(slot(m))] = eq;
  }
  Polynomial veq(n);
  for (const auto& [d, comp] : decL.components)
    veq -= vpow(delta + 1 - d).scaled(Rational(1, w[lv])) * eps * chart_arg(comp);
  eqs[static_cast<size_t>(radial)] = veq;
  return eqs;
}

}  // namespace

TEST_SUITE("compactify") {

TEST_CASE("planar degenerate example: fast and slow charts") {
  auto sys = planar_deg();
  WeightVector w({2, 3});

  ChartField u1 = compactify_chart(sys, w, ChartId::U(1));
  CHECK(u1.direction == ChartDirection::Fast);
  CHECK(u1.rescale_power == 3);
  CHECK(u1.equations[0] == chart_expect(2, "eps*(u^2 - 1) + 3/2*u*v^3"));
  CHECK(u1.equations[1] == chart_expect(2, "1/2*v^4"));

  ChartField u2 = compactify_chart(sys, w, ChartId::U(2));
  CHECK(u2.direction == ChartDirection::Slow);
  CHECK(u2.equations[0] == chart_expect(2, "2/3*eps*u*(u^3 - 1) - u*v^3"));
  CHECK(u2.equations[1] == chart_expect(2, "1/3*eps*v*(u^3 - 1)"));
}

TEST_CASE("three-dimensional cone field: U1, U2, U3") {
  auto sys = cone_field();
  WeightVector w({1, 1, 1});

  ChartField u1 = compactify_chart(sys, w, ChartId::U(1));
  CHECK(u1.equations[0] == chart_expect(3, "u*(v^2 - u^2) + eps*w^3"));
  CHECK(u1.equations[1] == chart_expect(3, "v*(v^2 - u^2) + eps*w^3"));
  CHECK(u1.equations[2] == chart_expect(3, "w*(v^2 - u^2)"));

  ChartField u2 = compactify_chart(sys, w, ChartId::U(2));
  CHECK(u2.equations[0] == chart_expect(3, "u*(1 - v^2 - eps*w^3)"));
  CHECK(u2.equations[1] == chart_expect(3, "eps*w^3*(1 - v)"));
  CHECK(u2.equations[2] == chart_expect(3, "-eps*w^4"));

  // The y/z swap flips the sign of the x-equation, so U3 is the mirrored
  // field, not a verbatim copy of U2.
  ChartField u3 = compactify_chart(sys, w, ChartId::U(3));
  CHECK(u3.equations[0] == chart_expect(3, "u*(v^2 - 1 - eps*w^3)"));
  CHECK(u3.equations[1] == chart_expect(3, "eps*w^3*(1 - v)"));
  CHECK(u3.equations[2] == chart_expect(3, "-eps*w^4"));
}

TEST_CASE("cone field with cubic drift: slow-fast structure at infinity") {
  auto sys = cone_field_sf();
  WeightVector w({1, 1, 1});

  ChartField u1 = compactify_chart(sys, w, ChartId::U(1));
  CHECK(u1.equations[0] == chart_expect(3, "-u^3 + u*v^2 + eps*v^3"));
  CHECK(u1.equations[1] == chart_expect(3, "eps*u^3 - u^2*v + v^3"));
  CHECK(u1.equations[2] == chart_expect(3, "w*(v^2 - u^2)"));

  ChartField u2 = compactify_chart(sys, w, ChartId::U(2));
  CHECK(u2.equations[0] == chart_expect(3, "u*(1 - v^2 - eps*v^3)"));
  CHECK(u2.equations[1] == chart_expect(3, "eps*(1 - v^4)"));
  CHECK(u2.equations[2] == chart_expect(3, "-eps*v^3*w"));

  ChartField u3 = compactify_chart(sys, w, ChartId::U(3));
  CHECK(u3.equations[0] == chart_expect(3, "u*(v^2 - 1 - eps*v^3)"));
  CHECK(u3.equations[1] == chart_expect(3, "eps*(1 - v^4)"));
  CHECK(u3.equations[2] == chart_expect(3, "-eps*v^3*w"));
}

TEST_CASE("non-transversal plane example: U2, U3 and hand-derived V3") {
  auto sys = plane_nontransversal();
  WeightVector w({1, 1, 1});

  ChartField u2 = compactify_chart(sys, w, ChartId::U(2));
  CHECK(u2.rescale_power == 0);
  CHECK(u2.equations[0] == chart_expect(3, "1 + v - eps*u*(u + v)"));
  CHECK(u2.equations[1] == chart_expect(3, "eps*(1 + u - u*v - v^2)"));
  CHECK(u2.equations[2] == chart_expect(3, "-eps*w*(u + v)"));

  ChartField u3 = compactify_chart(sys, w, ChartId::U(3));
  CHECK(u3.equations[0] == chart_expect(3, "1 + v - eps*u*(u + v)"));
  CHECK(u3.equations[1] == chart_expect(3, "eps*(1 + u - u*v - v^2)"));
  CHECK(u3.equations[2] == chart_expect(3, "-eps*w*(u + v)"));

  // V3 recomputed by hand substitution z = -1/w, x = u/w, y = v/w.
  ChartField v3 = compactify_chart(sys, w, ChartId::V(3));
  CHECK(v3.equations[0] == chart_expect(3, "v - 1 + eps*u*(u + v)"));
  CHECK(v3.equations[1] == chart_expect(3, "eps*(u - 1 + u*v + v^2)"));
  CHECK(v3.equations[2] == chart_expect(3, "eps*w*(u + v)"));
}

TEST_CASE("generated seed restricted to the infinity plane is the van der Pol field") {
  auto sys = vdp_seed();
  WeightVector w({1, 1, 1});
  ChartField u2 = compactify_chart(sys, w, ChartId::U(2));

  // Q^2 == 0 makes w' vanish identically; the field has no w-dependence.
  CHECK(u2.equations[2].is_zero());
  CHECK(u2.equations[0] == chart_expect(3, "v - 1/2*u^2 - 1/3*u^3"));
  CHECK(u2.equations[1] == chart_expect(3, "eps*(-1/2 - u)"));
}

TEST_CASE("identity charts") {
  auto sys = plane_nontransversal();
  WeightVector w({1, 1, 1});
  ChartField u4 = compactify_chart(sys, w, ChartId::U(4));
  CHECK(u4.direction == ChartDirection::Identity);
  CHECK(u4.rescale_power == 0);
  CHECK(u4.equations[0] == sys.P);
  CHECK(u4.equations[1] == Polynomial::eps(3) * sys.Q[0]);

  ChartField v4 = compactify_chart(sys, w, ChartId::V(4));
  CHECK(v4.equations[0] == -sys.P);
  CHECK(v4.equations[2] == -(Polynomial::eps(3) * sys.Q[1]));
}

TEST_CASE("chart counts and bad indices") {
  CHECK(all_charts(planar_deg(), WeightVector({2, 3})).size() == 6);
  CHECK(all_charts(cone_field(), WeightVector({1, 1, 1})).size() == 8);
  CHECK_THROWS_AS(compactify_chart(planar_deg(), WeightVector({2, 3}), ChartId::U(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(compactify_chart(planar_deg(), WeightVector({2, 3}), ChartId::U(0)),
                  std::invalid_argument);
}

TEST_CASE("P identically zero is a derivation error") {
  auto sys = make_sys({"x", "y"}, "0", {"y"});
  CHECK_THROWS_AS(compactify_chart(sys, WeightVector({1, 1}), ChartId::U(1)), DerivationError);
}

TEST_CASE("infinity invariance in every directional chart") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    Polynomial P = random_polynomial(rng, n, 4, 4, 1);
    if (P.is_zero()) continue;
    std::vector<Polynomial> Q;
    for (int j = 1; j < n; ++j) Q.push_back(random_polynomial(rng, n, 4, 4, 1));
    std::vector<std::string> vars = plsf::test::var_names(n);
    SlowFastSystem sys(vars, P, Q);
    std::vector<int> wv(static_cast<size_t>(n));
    for (auto& wi : wv) wi = 1 + static_cast<int>(rng() % 3);
    WeightVector w(wv);
    for (const auto& cf : all_charts(sys, w)) {
      if (cf.chart.index == n + 1) continue;
      const Polynomial& veq = cf.equations[static_cast<size_t>(n - 1)];
      CHECK((veq.is_zero() || veq.divisible_by_var(n - 1)));
    }
  }
}

TEST_CASE("structured recomposition oracle agrees with substitution-and-clear") {
  std::mt19937_64 rng(5150);
  std::vector<std::pair<SlowFastSystem, WeightVector>> cases = {
      {planar_deg(), WeightVector({2, 3})},
      {cone_field(), WeightVector({1, 1, 1})},
      {cone_field_sf(), WeightVector({1, 1, 1})},
      {plane_nontransversal(), WeightVector({1, 1, 1})},
      {vdp_seed(), WeightVector({1, 1, 1})},
  };
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 2);
    Polynomial P = random_polynomial(rng, n, 4, 4, 1);
    if (P.is_zero()) continue;
    std::vector<Polynomial> Q;
    for (int j = 1; j < n; ++j) Q.push_back(random_polynomial(rng, n, 4, 4, 1));
    std::vector<int> wv(static_cast<size_t>(n));
    for (auto& wi : wv) wi = 1 + static_cast<int>(rng() % 3);
    cases.emplace_back(SlowFastSystem(plsf::test::var_names(n), P, Q), WeightVector(wv));
  }
  for (const auto& [sys, w] : cases) {
    for (int l = 1; l <= sys.n(); ++l) {
      ChartField cf = compactify_chart(sys, w, ChartId::U(l));
      auto oracle = structured_chart_oracle(sys, w, l);
      for (int i = 0; i < sys.n(); ++i)
        CHECK(cf.equations[static_cast<size_t>(i)] == oracle[static_cast<size_t>(i)]);
    }
  }
}

TEST_CASE("overlap consistency between U1 and U2 (numeric conjugation)") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 12; ++trial) {
    Polynomial P = random_polynomial(rng, 2, 4, 4, 1);
    if (P.is_zero()) continue;
    std::vector<Polynomial> Q = {random_polynomial(rng, 2, 4, 4, 1)};
    SlowFastSystem sys({"x", "y"}, P, Q);
    int w1 = 1 + static_cast<int>(rng() % 3), w2 = 1 + static_cast<int>(rng() % 3);
    WeightVector w({w1, w2});
    ChartField c1 = compactify_chart(sys, w, ChartId::U(1));
    ChartField c2 = compactify_chart(sys, w, ChartId::U(2));
    long long delta = c1.rescale_power;

    std::uniform_real_distribution<double> du(0.3, 2.5), dv(0.05, 1.5), de(0.0, 0.2);
    for (int k = 0; k < 8; ++k) {
      double u1 = du(rng), v1 = dv(rng), eps = de(rng);
      // Transition U1 -> U2 (valid on u1 > 0): u2 = u1^(-w1/w2), v2 = u1^(-1/w2) v1.
      double u2 = std::pow(u1, -double(w1) / w2);
      double v2 = std::pow(u1, -1.0 / w2) * v1;
      std::array<double, 3> p1 = {u1, v1, eps};
      std::array<double, 3> p2 = {u2, v2, eps};
      double f1u = c1.equations[0].evaluate_double(p1);
      double f1v = c1.equations[1].evaluate_double(p1);
      double f2u = c2.equations[0].evaluate_double(p2);
      double f2v = c2.equations[1].evaluate_double(p2);
      // Jacobian of the transition.
      double j00 = -double(w1) / w2 * std::pow(u1, -double(w1) / w2 - 1.0);
      double j10 = -1.0 / w2 * std::pow(u1, -1.0 / w2 - 1.0) * v1;
      double j11 = std::pow(u1, -1.0 / w2);
      double lhs_u = j00 * f1u;
      double lhs_v = j10 * f1u + j11 * f1v;
      double scale = std::pow(u1, double(delta) / w2);
      double mag = std::max({1.0, std::abs(lhs_u), std::abs(lhs_v)});
      CHECK(std::abs(lhs_u - scale * f2u) <= 1e-9 * mag);
      CHECK(std::abs(lhs_v - scale * f2v) <= 1e-9 * mag);
    }
  }
}

TEST_CASE("structure report dichotomies") {
  StructureReport r1 = structure_report(planar_deg(), WeightVector({2, 3}));
  CHECK(r1.delta_1 == 0);
  REQUIRE(r1.delta_j.size() == 1);
  CHECK(r1.delta_j[0].value() == 3);
  CHECK(r1.infinity_filled_with_equilibria);
  CHECK_FALSE(r1.q_irrelevant_at_infinity);
  CHECK_FALSE(r1.infinity_dynamics_is_slow_fast);
  CHECK_FALSE(r1.u1_is_slow_fast);

  StructureReport r2 = structure_report(cone_field(), WeightVector({1, 1, 1}));
  CHECK(r2.delta_1 == 2);
  CHECK(r2.delta_j[0].value() == -1);
  CHECK(r2.delta_j[1].value() == -1);
  CHECK(r2.q_irrelevant_at_infinity);
  CHECK_FALSE(r2.infinity_filled_with_equilibria);
  CHECK_FALSE(r2.infinity_dynamics_is_slow_fast);

  StructureReport r3 = structure_report(cone_field_sf(), WeightVector({1, 1, 1}));
  CHECK(r3.delta == 2);
  CHECK(r3.delta_1 == 2);
  CHECK(r3.infinity_dynamics_is_slow_fast);
  CHECK_FALSE(r3.q_irrelevant_at_infinity);
  CHECK_FALSE(r3.infinity_filled_with_equilibria);

  // Q == 0 entries are reported as absent degrees.
  StructureReport r4 = structure_report(vdp_seed(), WeightVector({1, 1, 1}));
  CHECK_FALSE(r4.delta_j[0].has_value());
  CHECK(r4.delta_j[1].value() == 2);
  CHECK(r4.infinity_dynamics_is_slow_fast);
}

}  // TEST_SUITE
