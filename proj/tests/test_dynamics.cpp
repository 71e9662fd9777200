#include <cmath>

#include "doctest.h"
#include "ibs/dynamics.hpp"
#include "ibs/error.hpp"
#include "support.hpp"

using namespace ibs;
using test::kPi;

namespace {

CurveState perturbed(int n, double eps, unsigned seed = 1) {
  return normalize_initial_data(test::random_field(n, seed, 4, eps), test::random_field(n, seed + 50, 4, eps), kPi);
}

SimConfig small_config(int n, double dt, double t_final, Scheme scheme = Scheme::ImexEuler) {
  SimConfig c;
  c.n = n;
  c.dt = dt;
  c.t_final = t_final;
  c.scheme = scheme;
  c.output_every = 1;
  return c;
}

double state_distance(const CurveState& a, const CurveState& b) {
  return std::max({test::max_abs_diff(a.D, b.D), test::max_abs_diff(a.ys, b.ys), std::abs(a.perimeter - b.perimeter),
                   std::abs(a.mean_angle - b.mean_angle), norm(a.base_point - b.base_point)});
}

CurveState integrate(CurveState s, const SimConfig& c) {
  StepHistory h;
  const long steps = std::lround(c.t_final / c.dt);
  for (long i = 0; i < steps; ++i) s = time_step(s, c, &h);
  return s;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("equilibrium right-hand sides vanish") {
    const Evaluation ev = evaluate(CurveState::equilibrium(128), ForceParams{});
    CHECK(test::max_abs_diff(ev.rhs.g_theta, Field(128, 0.0)) < 1e-11);
    CHECK(test::max_abs_diff(ev.rhs.g_y, Field(128, 0.0)) < 1e-11);
    CHECK(std::abs(ev.rhs.s_dot) < 1e-12);
    CHECK(std::abs(ev.rhs.mean_angle_dot) < 1e-12);
    CHECK(norm(ev.rhs.base_velocity) < 1e-12);
  }

  TEST_CASE("decomposed and direct right-hand sides agree") {
    const int n = 256;
    ForceParams p;
    p.lambda = 0.25;
    for (unsigned seed : {1u, 2u}) {
      const CurveState s = perturbed(n, 0.05, seed);
      const Evaluation ev = evaluate(s, p);
      CHECK(test::max_abs_diff(ev.rhs.g_theta, g_theta_direct(ev.curve, ev.velocity, p)) < 1e-7);
      CHECK(test::max_abs_diff(ev.rhs.g_y, g_y_direct(ev.curve, ev.velocity, p)) < 1e-7);
    }
  }

  TEST_CASE("g_theta is linear in small perturbations") {
    const int n = 128;
    std::vector<double> r;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      CurveState s = CurveState::equilibrium(n);
      s.D = test::sample(n, [eps](double a) { return eps * std::sin(3 * a); });
      const Evaluation ev = evaluate(s, ForceParams{});
      r.push_back(spectral::sobolev_seminorm(ev.rhs.g_theta, 0.0) / eps);
    }
    CHECK(r[1] == doctest::Approx(r[2]).epsilon(0.05));
    CHECK(r[0] == doctest::Approx(r[2]).epsilon(0.2));
  }

  TEST_CASE("stretch drift term with y_s = 0") {
    const int n = 128;
    CurveState s = CurveState::equilibrium(n);
    s.D = test::sample(n, [](double a) { return 0.03 * std::sin(2 * a); });
    const Evaluation ev = evaluate(s, ForceParams{});
    const Field with = g_y(ev.curve, ev.velocity, ForceParams{}, ev.rhs.s_dot);
    const Field without = g_y(ev.curve, ev.velocity, ForceParams{}, 0.0);
    // -(1 + y_s) s_t / s is the constant -s_t / s, removed by the projection.
    CHECK(test::max_abs_diff(with, without) < 1e-15);
    double m0 = 0, m1 = 0;
    g_y(ev.curve, ev.velocity, ForceParams{}, ev.rhs.s_dot, true, &m1);
    g_y(ev.curve, ev.velocity, ForceParams{}, 0.0, true, &m0);
    CHECK(m1 - m0 == doctest::Approx(-ev.rhs.s_dot / s.perimeter).epsilon(1e-12));
  }

  TEST_CASE("scalar rates are rotation invariant") {
    const CurveState s = perturbed(128, 0.05, 3);
    CurveState r = s;
    r.mean_angle += 0.9;
    const Evaluation a = evaluate(s, ForceParams{});
    const Evaluation b = evaluate(r, ForceParams{});
    CHECK(a.rhs.s_dot == doctest::Approx(b.rhs.s_dot).epsilon(1e-10));
    CHECK(a.rhs.mean_angle_dot == doctest::Approx(b.rhs.mean_angle_dot).epsilon(1e-8));
  }

  TEST_CASE("perimeter decreases toward one") {
    const SimConfig c = small_config(128, 1e-3, 0.3);
    const RunResult r = run_simulation(perturbed(128, 0.05, 5), c);
    REQUIRE(r.termination == Termination::Completed);
    CHECK(r.records.front().perimeter > 1.0);
    for (std::size_t i = 1; i < r.records.size(); ++i) {
      CHECK(r.records[i].perimeter <= r.records[i - 1].perimeter + 1e-14);
      CHECK(r.records[i].perimeter > 1.0);
    }
  }

  TEST_CASE("zero forcing reproduces the implicit linear step") {
    const int n = 64;
    CurveState s = CurveState::equilibrium(n);
    s.perimeter = 1.2;
    s.D = test::sample(n, [](double a) { return 1e-3 * std::cos(3 * a); });
    s.ys = test::sample(n, [](double a) { return 1e-3 * std::sin(5 * a); });
    RhsBundle zero;
    zero.g_theta.assign(n, 0.0);
    zero.g_y.assign(n, 0.0);
    SimConfig c = small_config(n, 0.01, 0.0);
    const CurveState next = advance(s, zero, c);
    const Field d = spectral::inverse(
        spectral::implicit_linear_step(spectral::forward(s.D), 0.01, spectral::LinearOperator::Bending, 1.2), n);
    const Field y = spectral::inverse(
        spectral::implicit_linear_step(spectral::forward(s.ys), 0.01, spectral::LinearOperator::Stretching, 1.2), n);
    CHECK(test::max_abs_diff(next.D, d) < 1e-17);
    CHECK(test::max_abs_diff(next.ys, y) < 1e-17);
    CHECK(next.perimeter == 1.2);
  }

  TEST_CASE("equilibrium is a fixed point of the stepper") {
    const SimConfig c = small_config(128, 1e-3, 1.0);
    const CurveState s0 = CurveState::equilibrium(128);
    CHECK(state_distance(integrate(s0, c), s0) < 1e-8);
  }

  TEST_CASE("self-convergence order of both schemes") {
    const int n = 64;
    const CurveState s0 = perturbed(n, 0.05, 7);
    for (Scheme scheme : {Scheme::ImexEuler, Scheme::ImexBdf2}) {
      const CurveState ref = integrate(s0, small_config(n, 1e-5, 0.1, scheme));
      const double e1 = state_distance(integrate(s0, small_config(n, 4e-3, 0.1, scheme)), ref);
      const double e2 = state_distance(integrate(s0, small_config(n, 2e-3, 0.1, scheme)), ref);
      const double order = std::log2(e1 / e2);
      if (scheme == Scheme::ImexEuler)
        CHECK(order == doctest::Approx(1.0).epsilon(0.15));
      else
        CHECK(order == doctest::Approx(2.0).epsilon(0.15));
    }
  }

  TEST_CASE("projection order does not change the update") {
    const int n = 128;
    SimConfig a = small_config(n, 1e-3, 0.05);
    SimConfig b = a;
    b.project_rhs = false;
    const CurveState s0 = perturbed(n, 0.05, 11);
    CHECK(state_distance(integrate(s0, a), integrate(s0, b)) < 1e-13);
  }

  TEST_CASE("run records and determinism") {
    SimConfig c = small_config(64, 1e-3, 0.05);
    c.output_every = 10;
    const CurveState s0 = perturbed(64, 0.02, 12);
    const RunResult r1 = run_simulation(s0, c);
    const RunResult r2 = run_simulation(s0, c);
    CHECK(r1.records.size() == 6);
    CHECK(r1.steps == 50);
    CHECK(r1.records.back().t == doctest::Approx(0.05));
    CHECK(r1.records.back().H2_5 < r1.records.front().H2_5);
    CHECK(state_distance(r1.final_state, r2.final_state) == 0.0);
    CHECK(r1.projected_means.size() == 51);
  }

  TEST_CASE("margin violation aborts the run") {
    SimConfig c = small_config(64, 1e-3, 0.01);
    c.margins.beta2_min = 0.99;
    const CurveState s0 = perturbed(64, 0.05, 13);
    const RunResult r = run_simulation(s0, c);
    CHECK(r.termination == Termination::MarginAbort);
    CHECK(r.steps == 0);
    CHECK_THROWS_AS(check_state(s0, c.margins), MarginError);

    CurveState bad = s0;
    bad.D[2] = std::nan("");
    CHECK(run_simulation(bad, small_config(64, 1e-3, 0.01)).termination == Termination::NanAbort);
  }

  TEST_CASE("invalid configuration") {
    SimConfig c;
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = SimConfig{};
    c.n = 127;
    CHECK_THROWS_AS(c.validate(), Error);
  }
}
