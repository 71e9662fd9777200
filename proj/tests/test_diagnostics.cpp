#include <cmath>
#include <limits>

#include "doctest.h"
#include "ibs/diagnostics.hpp"
#include "ibs/dynamics.hpp"
#include "ibs/error.hpp"
#include "support.hpp"

using namespace ibs;
using test::kPi;

namespace {

CurveState theta_mode(int n, double eps, int k = 2) {
  return normalize_initial_data(test::sample(n, [=](double a) { return eps * std::sin(k * a); }), Field(n, 0.0), kPi);
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("energy at equilibrium") {
    const CurveState eq = CurveState::equilibrium(64);
    CHECK(energy(eq, ForceParams{}) == doctest::Approx(2 * kPi).epsilon(1e-14));
    ForceParams p;
    p.lambda = 1.0;
    CHECK(energy(eq, p) == doctest::Approx(4 * kPi).epsilon(1e-14));
    const CurveState s = theta_mode(64, 0.05);
    CurveState r = s;
    r.mean_angle += 2.0;
    CHECK(energy(r, ForceParams{}) == doctest::Approx(energy(s, ForceParams{})).epsilon(1e-15));
  }

  TEST_CASE("energy against quadrature of its density") {
    const int n = 128;
    CurveState s = theta_mode(n, 0.05, 3);
    s.ys = test::sample(n, [](double a) { return 0.02 * std::cos(2 * a); });
    ForceParams p;
    p.c1 = 1.4;
    p.c3 = 0.8;
    p.lambda = 0.3;
    p.s_op = 0.2;
    // theta_a = 1 + d/da(0.05 sin 3a) = 1 + 0.15 cos 3a (normalization leaves k >= 2 unchanged)
    const double sp = s.perimeter;
    const double bend =
        test::simpson([](double a) { return std::pow(1 + 0.15 * std::cos(3 * a), 2); }, -kPi, kPi, 1e-13);
    const double str = test::simpson(
        [&](double a) { return std::pow(sp * (1 + 0.02 * std::cos(2 * a)) - 0.2, 2); }, -kPi, kPi, 1e-13);
    const double expect = p.c1 / (2 * sp) * bend + 0.5 * p.c3 * str + 2 * kPi * p.lambda * sp;
    CHECK(energy(s, p) == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("dissipation sign") {
    const CurveSamples eq = reconstruct_curve(CurveState::equilibrium(128));
    CHECK(std::abs(dissipation_rate(eq, curve_velocity(eq, ForceParams{}), ForceParams{})) < 1e-12);
    const CurveSamples c = reconstruct_curve(theta_mode(128, 0.01));
    CHECK(dissipation_rate(c, curve_velocity(c, ForceParams{}), ForceParams{}) > 0.0);
  }

  TEST_CASE("energy identity converges at first order") {
    // |dE + int D_rate| over a short run shrinks with dt.
    double res[2];
    for (int i = 0; i < 2; ++i) {
      SimConfig c;
      c.n = 128;
      c.dt = i == 0 ? 2e-3 : 1e-3;
      c.t_final = 0.1;
      c.output_every = 1;
      const RunResult r = run_simulation(theta_mode(128, 0.02), c);
      double integral = 0.0;
      for (std::size_t k = 1; k < r.records.size(); ++k)
        integral += 0.5 * (r.records[k].dissipation + r.records[k - 1].dissipation) * c.dt;
      res[i] = std::abs(r.records.back().energy - r.records.front().energy + integral);
    }
    CHECK(res[0] / res[1] > 1.8);
  }

  TEST_CASE("linearized velocity") {
    const int n = 128;
    const VecField zero = linearized_velocity(Field(n, 0.0), Field(n, 0.0), 1.0, 0.0);
    for (const Vec2& v : zero) CHECK(norm(v) == 0.0);
    const Field d = test::random_field(n, 4, 6, 0.01);
    const Field y = test::random_field(n, 5, 6, 0.01);
    double imag = 1.0;
    const VecField a = linearized_velocity(d, y, 1.05, 0.4);
    const VecField b = linearized_velocity_modes(d, y, 1.05, 0.4, &imag);
    CHECK(test::max_abs_diff(a, b) < 1e-12);
    CHECK(imag < 1e-12);
    Vec2 mean{};
    for (const Vec2& v : a) mean += v;
    CHECK(norm(mean) / n < 1e-15);
  }

  TEST_CASE("linearization error is quadratic") {
    CHECK(linearization_error(CurveState::equilibrium(128), ForceParams{}) < 1e-12);
    std::vector<double> r;
    for (double eps : {1e-1, 1e-2, 1e-3}) r.push_back(linearization_error(theta_mode(128, eps), ForceParams{}) / (eps * eps));
    const double hi = *std::max_element(r.begin(), r.end());
    const double lo = *std::min_element(r.begin(), r.end());
    CHECK(hi / lo < 3.0);
  }

  TEST_CASE("isoperimetric quantities") {
    const IsoperimetricChecks circle = isoperimetric_checks(CurveState::equilibrium(128));
    CHECK(circle.gage_value == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(circle.gage_applicable);
    CHECK(std::isinf(circle.fuglede_ratio));
    CHECK(circle.first_mode_ratio == 0.0);

    const CurveState s = theta_mode(256, 0.01);
    const IsoperimetricChecks iso = isoperimetric_checks(s);
    // Oracle: int (0.01 sin 2a)^2 da = pi * 1e-4 exactly.
    const double l2 = kPi * 1e-4;
    CHECK(iso.fuglede_ratio == doctest::Approx(l2 / (s.perimeter - 1)).epsilon(1e-8));
    CHECK(iso.fuglede_ratio >= 1.0);
    CHECK(iso.fuglede_ratio <= 10.0);
    CHECK(iso.perimeter_gap <= iso.perimeter_gap_bound);
    CHECK(iso.gage_value >= kPi);
  }

  TEST_CASE("perimeter gap on random states") {
    for (unsigned seed = 1; seed <= 100; ++seed) {
      const double eps = 0.01 + 0.0004 * seed;
      const CurveState s =
          normalize_initial_data(test::random_field(128, seed, 6, eps), test::random_field(128, seed + 7, 6, eps), kPi);
      const IsoperimetricChecks iso = isoperimetric_checks(s);
      CHECK(iso.perimeter_gap <= iso.perimeter_gap_bound);
    }
  }

  TEST_CASE("decay fit") {
    std::vector<double> t, v, w, c;
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.02 * i;
      t.push_back(x);
      v.push_back(std::exp(-2 * x));
      w.push_back(std::exp(-2 * x) * (1 + 0.01 * std::sin(10 * x)));
      c.push_back(3.0);
    }
    const DecayFit f = decay_fit(t, v, 0, t.size());
    CHECK(f.gamma == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(decay_fit(t, w, 0, t.size()).gamma - 2.0) <= 0.02);
    CHECK(std::abs(decay_fit(t, c, 0, t.size()).gamma) < 1e-15);
    v[5] = -1.0;
    CHECK_THROWS_AS(decay_fit(t, v, 0, t.size()), Error);
    CHECK_THROWS_AS(decay_fit(t, c, 0, t.size() + 1), Error);
  }

  TEST_CASE("limit circle") {
    const int n = 128;
    CurveState s = CurveState::equilibrium(n);
    s.base_point = {3.0, 5.0};  // circle through (3, 5) centered at (3, 4)
    const LimitCircleFit fit = limit_circle(s);
    CHECK(norm(fit.center - Vec2{3, 4}) < 1e-13);
    CHECK(fit.radius == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.residual <= 1e-10);

    double prev = 0.0;
    for (double eps : {0.02, 0.01}) {
      const LimitCircleFit f = limit_circle(theta_mode(n, eps));
      if (prev > 0) CHECK(prev / f.residual == doctest::Approx(2.0).epsilon(0.05));
      prev = f.residual;
    }
  }

  TEST_CASE("limit circle phase is the L2 minimizer") {
    const int n = 128;
    const CurveSamples c = reconstruct_curve(theta_mode(n, 0.03, 3));
    const LimitCircleFit fit = limit_circle(c);
    auto dist = [&](double phase) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        const Vec2 p = fit.center + fit.radius * Vec2{std::sin(c.s[j] + phase), -std::cos(c.s[j] + phase)};
        acc += norm2(c.X[j] - p);
      }
      return acc;
    };
    const double best = dist(fit.phase);
    for (double d : {-1e-3, 1e-3, -0.1, 0.1}) CHECK(dist(fit.phase + d) > best);
  }

  TEST_CASE("diagnostics record") {
    const DiagnosticsRecord r = diagnose_state(CurveState::equilibrium(64), ForceParams{});
    CHECK(r.area == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(r.energy == doctest::Approx(2 * kPi));
    CHECK(r.closure_defect < 1e-15);
    CHECK(r.gage == doctest::Approx(kPi));
    CHECK(r.beta2 == doctest::Approx(1.0));
    const CurveState s = theta_mode(64, 0.02);
    const DiagnosticsRecord q = diagnose_state(s, ForceParams{});
    CHECK(q.b[2] == doctest::Approx(0.02 * kPi).epsilon(1e-12));
    CHECK(std::abs(q.a[2]) < 1e-14);
  }

  TEST_CASE("gage is not applicable for non-convex curves") {
    const int n = 128;
    const CurveState s =
        normalize_initial_data(test::sample(n, [](double a) { return 0.2 * std::sin(6 * a); }), Field(n, 0.0), kPi);
    const IsoperimetricChecks iso = isoperimetric_checks(s);
    CHECK_FALSE(iso.gage_applicable);
    CHECK(std::isnan(diagnose_state(s, ForceParams{}).gage));
  }
}
