#include "ibs/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>

#include "ibs/diagnostics.hpp"
#include "ibs/dynamics.hpp"
#include "ibs/error.hpp"
#include "ibs/io.hpp"
#include "ibs/kernels.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
    if (!cond) {
      ok = false;
      detail += " [FAIL]";
    }
  }
};

SimConfig base_config(const std::string& preset, double eps, double dt, double t_final, int n = 256,
                      Scheme scheme = Scheme::ImexEuler) {
  SimConfig c;
  c.n = n;
  c.dt = dt;
  c.t_final = t_final;
  c.scheme = scheme;
  c.preset = preset;
  c.epsilon = eps;
  c.output_every = 1;
  return c;
}

RunResult run_preset(const SimConfig& c) { return run_simulation(preset_state(c.preset, c), c); }

double max_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

double max_diff(const VecField& a, const VecField& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, norm(a[j] - b[j]));
  return m;
}

double energy_residual(const RunResult& r) {
  double integral = 0.0;
  for (std::size_t i = 1; i < r.records.size(); ++i)
    integral += 0.5 * (r.records[i].dissipation + r.records[i - 1].dissipation) * (r.records[i].t - r.records[i - 1].t);
  const double T = r.records.back().t - r.records.front().t;
  return std::abs(r.records.back().energy - r.records.front().energy + integral) / T;
}

double max_energy_increase(const RunResult& r) {
  double m = -1e300;
  for (std::size_t i = 1; i < r.records.size(); ++i) m = std::max(m, r.records[i].energy - r.records[i - 1].energy);
  return m;
}

// Perturbed states used where a generic (non-symmetric) shape is needed.
CurveState two_mode_state(int n, double eps) {
  const PeriodicGrid grid(n);
  Field d(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double a = grid.point(j);
    d[j] = eps * (std::sin(2 * a) + std::cos(3 * a));
    ys[j] = 0.5 * eps * std::cos(2 * a + 0.3);
  }
  return normalize_initial_data(d, ys, kPi);
}

std::vector<CurveState> test_states(int n) {
  std::vector<CurveState> out;
  SimConfig c = base_config("mixed", 0.05, 1e-3, 0.0, n);
  for (const char* p : {"theta-mode", "y-mode", "mixed"}) out.push_back(preset_state(p, c));
  c.mode_k = 3;
  out.push_back(preset_state("mixed", c));
  for (unsigned seed = 1; seed <= 4; ++seed) {
    c.seed = seed;
    out.push_back(preset_state("random", c));
  }
  out.push_back(two_mode_state(n, 0.05));
  return out;
}

// 1. Equilibrium is a fixed point.
CriterionResult equilibrium_fixed_point() {
  Check ck;
  SimConfig c = base_config("equilibrium", 0.0, 1e-3, 1.0);
  c.output_every = 100;
  const CurveState s0 = preset_state("equilibrium", c);
  const VelocityFields v = curve_velocity(s0, c.params);
  double umax = 0.0;
  for (const Vec2& u : v.u_alpha) umax = std::max(umax, norm(u));
  for (const Vec2& u : v.u_s) umax = std::max(umax, norm(u));
  ck.require(umax <= 1e-10, format("|u|_inf = %.2e <= 1e-10", umax));
  const RunResult r = run_simulation(s0, c);
  const CurveState& s1 = r.final_state;
  const double moved = std::max({max_diff(s0.D, s1.D), max_diff(s0.ys, s1.ys), std::abs(s0.perimeter - s1.perimeter),
                                 std::abs(s0.mean_angle - s1.mean_angle), norm(s0.base_point - s1.base_point)});
  ck.require(r.termination == Termination::Completed && r.steps == 1000,
             format("%ld steps, %s", r.steps, termination_name(r.termination)));
  ck.require(moved < 1e-8, format("max field change = %.2e < 1e-8", moved));
  return {1, criterion_name(1), ck.ok, ck.detail, 0};
}

// 2. Energy identity and monotone energy.
CriterionResult energy_identity() {
  Check ck;
  for (Scheme scheme : {Scheme::ImexEuler, Scheme::ImexBdf2}) {
    double res[2];
    double worst_increase = -1e300;
    for (int i = 0; i < 2; ++i) {
      const SimConfig c = base_config("theta-mode", 0.01, i == 0 ? 1e-3 : 5e-4, 0.5, 256, scheme);
      const RunResult r = run_preset(c);
      if (r.termination != Termination::Completed) ck.require(false, std::string("run aborted: ") + r.message);
      res[i] = energy_residual(r);
      worst_increase = std::max(worst_increase, max_energy_increase(r));
    }
    const double need = scheme == Scheme::ImexEuler ? 1.8 : 3.5;
    ck.require(res[0] / res[1] >= need, format("%s residual %.3e -> %.3e, ratio %.2f >= %.1f", scheme_name(scheme),
                                               res[0], res[1], res[0] / res[1], need));
    ck.require(worst_increase <= 1e-10, format("%s max dE/step = %.2e <= 1e-10", scheme_name(scheme), worst_increase));
  }
  return {2, criterion_name(2), ck.ok, ck.detail, 0};
}

// 3. Area conservation at the integrator's order.
CriterionResult area_conservation() {
  Check ck;
  for (Scheme scheme : {Scheme::ImexEuler, Scheme::ImexBdf2}) {
    double drift[2];
    for (int i = 0; i < 2; ++i) {
      SimConfig c = base_config("theta-mode", 0.01, i == 0 ? 1e-3 : 5e-4, 1.0, 256, scheme);
      c.output_every = 1 << 20;
      const RunResult r = run_preset(c);
      const double a0 = r.records.front().area;
      drift[i] = std::abs(r.records.back().area - a0);
      if (i == 0) ck.require(drift[0] <= 1e-5, format("%s |dA| = %.3e <= 1e-5", scheme_name(scheme), drift[0]));
      drift[i] /= a0;
    }
    const double need = scheme == Scheme::ImexEuler ? 1.8 : 3.5;
    ck.require(drift[0] / drift[1] >= need, format("%s rel drift %.3e -> %.3e, ratio %.2f >= %.1f", scheme_name(scheme),
                                                   drift[0], drift[1], drift[0] / drift[1], need));
  }
  return {3, criterion_name(3), ck.ok, ck.detail, 0};
}

// 4. Closure defect stays small in every small-data run.
CriterionResult closure_preservation() {
  Check ck;
  double worst = 0.0;
  int runs = 0;
  auto track = [&](const SimConfig& c) {
    const RunResult r = run_preset(c);
    ++runs;
    if (r.termination != Termination::Completed) ck.require(false, c.preset + " aborted: " + r.message);
    for (const DiagnosticsRecord& rec : r.records) worst = std::max(worst, rec.closure_defect);
  };
  for (const char* p : {"theta-mode", "y-mode", "mixed"}) track(base_config(p, 0.05, 1e-3, 0.5));
  track(base_config("mixed", 0.01, 1e-3, 0.5, 256, Scheme::ImexBdf2));
  for (unsigned seed = 1; seed <= 3; ++seed) {
    SimConfig c = base_config("random", 0.05, 1e-3, 0.5);
    c.seed = seed;
    track(c);
  }
  ck.require(worst <= 1e-8, format("max closure defect over %d runs = %.2e <= 1e-8", runs, worst));
  return {4, criterion_name(4), ck.ok, ck.detail, 0};
}

// Principal value (1/2pi) PV int f(a') cot((a - a')/2) da' on the odd-offset points of an m-point grid.
double hilbert_quadrature(const std::function<double(double)>& f, double a, int m) {
  const double h = 2.0 * kPi / m;
  double acc = 0.0;
  for (int j = 1; j < m; j += 2) {
    const double ap = a + j * h;
    acc += f(ap) / std::tan(-0.5 * j * h);
  }
  return 2.0 * h * acc / (2.0 * kPi);
}

// 5. Hilbert transform and the implicit linear solve.
CriterionResult hilbert_and_linear_solver() {
  Check ck;
  const int n = 256;
  const PeriodicGrid grid(n);
  double err_fft = 0.0;
  double err_quad = 0.0;
  for (int k = 1; k < n / 2; ++k) {
    Field f(n);
    for (int j = 0; j < n; ++j) f[j] = std::sin(k * grid.point(j));
    const Field hf = spectral::hilbert(f);
    for (int j = 0; j < n; j += 7) {
      const double a = grid.point(j);
      const double q = hilbert_quadrature([k](double x) { return std::sin(k * x); }, a, 4 * n);
      err_quad = std::max(err_quad, std::abs(hf[j] - q));
    }
    for (int j = 0; j < n; ++j) err_fft = std::max(err_fft, std::abs(hf[j] + std::cos(k * grid.point(j))));
  }
  ck.require(err_fft <= 1e-12, format("|H sin - (-cos)| = %.2e", err_fft));
  ck.require(err_quad <= 1e-12, format("|H sin - PV quadrature| = %.2e", err_quad));

  // g = 0: only the implicit principal part acts.
  const double sp = 1.1;
  const double T = 1.0;
  double err[2][2] = {};
  for (int i = 0; i < 2; ++i) {
    SimConfig c;
    c.n = n;
    c.dt = i == 0 ? 1e-3 : 5e-4;
    CurveState s = CurveState::equilibrium(n);
    s.perimeter = sp;
    for (int j = 0; j < n; ++j) {
      const double a = grid.point(j);
      s.D[j] = 1e-3 * (std::cos(a) + std::sin(2 * a) + std::cos(3 * a));
      s.ys[j] = 1e-3 * (std::sin(a) + std::cos(2 * a) + std::sin(4 * a));
    }
    RhsBundle zero;
    zero.g_theta.assign(n, 0.0);
    zero.g_y.assign(n, 0.0);
    const long steps = std::lround(T / c.dt);
    for (long st = 0; st < steps; ++st) s = advance(s, zero, c);
    const Modes dm = spectral::forward(s.D);
    const Modes ym = spectral::forward(s.ys);
    for (int k : {1, 2, 3}) {
      const double exact = 1e-3 * std::exp(-T * k * k * k / (4.0 * sp * sp * sp));
      const double got = (k == 2 ? spectral::sine_coefficient(dm, k) : spectral::cosine_coefficient(dm, k)) / kPi;
      err[i][0] = std::max(err[i][0], std::abs(got - exact));
    }
    for (int k : {1, 2, 4}) {
      const double exact = 1e-3 * std::exp(-T * k / 4.0);
      const double got = (k == 2 ? spectral::cosine_coefficient(ym, k) : spectral::sine_coefficient(ym, k)) / kPi;
      err[i][1] = std::max(err[i][1], std::abs(got - exact));
    }
  }
  for (int p = 0; p < 2; ++p) {
    const char* which = p == 0 ? "bending" : "stretching";
    const double ratio = err[0][p] / err[1][p];
    ck.require(err[0][p] <= 1e-3 * 1e-3 && ratio >= 1.8 && ratio <= 2.2,
               format("%s decay error %.2e -> %.2e under dt halving (ratio %.2f)", which, err[0][p], err[1][p], ratio));
  }
  return {5, criterion_name(5), ck.ok, ck.detail, 0};
}

// 6. Rotation and translation invariance of u.n and u.t.
CriterionResult invariance() {
  Check ck;
  double worst = 0.0;
  for (unsigned seed = 1; seed <= 20; ++seed) {
    SimConfig c = base_config("random", 0.02 + 0.002 * seed, 1e-3, 0.0);
    c.seed = seed;
    const CurveState s = preset_state("random", c);
    CurveState moved = s;
    moved.mean_angle += 0.37 * seed;
    moved.base_point += Vec2{1.5 - 0.2 * seed, 0.1 * seed};
    const CurveSamples ca = reconstruct_curve(s);
    const CurveSamples cb = reconstruct_curve(moved);
    const VelocityFields va = curve_velocity(ca, c.params);
    const VelocityFields vb = curve_velocity(cb, c.params);
    for (int j = 0; j < s.n; ++j) {
      worst = std::max(worst, std::abs(dot(va.u_alpha[j], ca.nrm[j]) - dot(vb.u_alpha[j], cb.nrm[j])));
      worst = std::max(worst, std::abs(dot(va.u_alpha[j], ca.t[j]) - dot(vb.u_alpha[j], cb.t[j])));
    }
  }
  ck.require(worst <= 1e-10, format("max change of u.n, u.t over 20 states = %.2e <= 1e-10", worst));
  return {6, criterion_name(6), ck.ok, ck.detail, 0};
}

// 7. Linearization about the circle.
CriterionResult linearization() {
  Check ck;
  const ForceParams params;
  double mode_gap = 0.0;
  for (const char* family : {"theta-mode", "y-mode"}) {
    std::vector<double> scaled;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      const SimConfig c = base_config(family, eps, 1e-3, 0.0);
      const CurveState s = preset_state(family, c);
      scaled.push_back(linearization_error(s, params) / (eps * eps));
      Field d = s.D;
      for (double& x : d) x += s.mean_angle;
      double imag = 0.0;
      const VecField a = linearized_velocity(d, s.ys, s.perimeter, params.lambda);
      const VecField b = linearized_velocity_modes(d, s.ys, s.perimeter, params.lambda, &imag);
      mode_gap = std::max({mode_gap, max_diff(a, b), imag});
    }
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    ck.require(lo > 0.0 && hi / lo <= 3.0, format("%s err/eps^2 = %.4g, %.4g, %.4g (spread %.3f <= 3)", family,
                                                  scaled[0], scaled[1], scaled[2], hi / lo));
  }
  for (const CurveState& s : test_states(256)) {
    Field d = s.D;
    for (double& x : d) x += s.mean_angle;
    double imag = 0.0;
    const VecField a = linearized_velocity(d, s.ys, s.perimeter, 0.3);
    const VecField b = linearized_velocity_modes(d, s.ys, s.perimeter, 0.3, &imag);
    mode_gap = std::max({mode_gap, max_diff(a, b), imag});
  }
  ck.require(mode_gap <= 1e-12, format("mode sum vs closed form = %.2e <= 1e-12", mode_gap));
  return {7, criterion_name(7), ck.ok, ck.detail, 0};
}

struct ConvergenceRun {
  DecayFit fit;
  double residual_mid = 0;
  double residual_end = 0;
  bool completed = false;
};

ConvergenceRun convergence_run(int n, double dt) {
  SimConfig c = base_config("mixed", 0.01, dt, 5.0, n);
  c.output_every = static_cast<int>(std::lround(0.05 / dt));
  ConvergenceRun out;
  RunCallbacks cb;
  const long mid = std::lround(2.5 / dt);
  cb.on_record = [&](long step, const CurveState& s, const DiagnosticsRecord&) {
    if (step == mid) out.residual_mid = limit_circle(s).residual;
  };
  const RunResult r = run_simulation(preset_state("mixed", c), c, cb);
  out.completed = r.termination == Termination::Completed;
  std::vector<double> t, v;
  for (const DiagnosticsRecord& rec : r.records) {
    t.push_back(rec.t);
    v.push_back(rec.H2_5 + rec.h1_5);
  }
  out.fit = decay_fit(t, v, t.size() / 2, t.size());
  out.residual_end = limit_circle(r.final_state).residual;
  return out;
}

// 8. Exponential convergence to the limit circle.
CriterionResult exponential_convergence() {
  Check ck;
  const ConvergenceRun base = convergence_run(256, 1e-3);
  const ConvergenceRun fine_t = convergence_run(256, 5e-4);
  const ConvergenceRun fine_x = convergence_run(512, 1e-3);
  ck.require(base.completed && fine_t.completed && fine_x.completed, "runs completed");
  ck.require(base.fit.r2 >= 0.99, format("tail fit r2 = %.5f >= 0.99, gamma = %.7f", base.fit.r2, base.fit.gamma));
  const double dg_t = std::abs(fine_t.fit.gamma - base.fit.gamma) / base.fit.gamma;
  const double dg_x = std::abs(fine_x.fit.gamma - base.fit.gamma) / base.fit.gamma;
  ck.require(dg_t <= 0.05, format("gamma(dt/2) = %.7f (%.3f%%)", fine_t.fit.gamma, 100 * dg_t));
  ck.require(dg_x <= 0.05, format("gamma(2n) = %.7f (%.3f%%)", fine_x.fit.gamma, 100 * dg_x));
  ck.require(base.residual_end < base.residual_mid,
             format("limit-circle residual decaying: %.3e at t=2.5 -> %.3e at t=5", base.residual_mid, base.residual_end));
  ck.require(base.residual_end <= 1e-4, format("final limit-circle residual %.3e <= 1e-4", base.residual_end));
  return {8, criterion_name(8), ck.ok, ck.detail, 0};
}

// 9. Isoperimetric suite.
CriterionResult isoperimetric() {
  Check ck;
  const int n = 256;
  SimConfig c = base_config("equilibrium", 0.0, 1e-3, 0.0, n);
  const IsoperimetricChecks circle = isoperimetric_checks(preset_state("equilibrium", c));
  ck.require(std::abs(circle.gage_value - kPi) <= 1e-12, format("circle gage - pi = %.1e", circle.gage_value - kPi));

  double gage_margin = 1e300;
  int convex = 0;
  for (const CurveState& s : test_states(n)) {
    const IsoperimetricChecks iso = isoperimetric_checks(s);
    if (!iso.gage_applicable) continue;
    ++convex;
    gage_margin = std::min(gage_margin, iso.gage_value - kPi);
  }
  ck.require(convex > 0 && gage_margin >= -1e-8, format("min gage - pi over %d convex states = %.3e", convex, gage_margin));

  std::vector<double> fug;
  for (double eps : {0.05, 0.01}) {
    c = base_config("theta-mode", eps, 1e-3, 0.0, n);
    fug.push_back(isoperimetric_checks(preset_state("theta-mode", c)).fuglede_ratio);
    fug.push_back(isoperimetric_checks(two_mode_state(n, eps)).fuglede_ratio);
  }
  double C = 1.0;
  bool finite = true;
  for (double r : fug) {
    finite = finite && std::isfinite(r) && r > 0.0;
    C = std::max(C, std::max(r, 1.0 / r));
  }
  const double drift = std::max(std::abs(fug[0] / fug[2] - 1.0), std::abs(fug[1] / fug[3] - 1.0));
  ck.require(finite && drift <= 0.1,
             format("fuglede ratios %.4g, %.4g (eps .05) %.4g, %.4g (eps .01) in [1/C, C], C = %.4g, eps drift %.2f%%",
                    fug[0], fug[1], fug[2], fug[3], C, 100 * drift));

  int violations = 0;
  double tightest = 1e300;
  for (unsigned seed = 1; seed <= 100; ++seed) {
    c = base_config("random", 0.05 * (1 + seed % 5) / 5.0, 1e-3, 0.0, n);
    c.seed = seed;
    const IsoperimetricChecks iso = isoperimetric_checks(preset_state("random", c));
    if (!(iso.perimeter_gap <= iso.perimeter_gap_bound)) ++violations;
    tightest = std::min(tightest, iso.perimeter_gap_bound - iso.perimeter_gap);
  }
  ck.require(violations == 0, format("perimeter gap bound violated on %d/100 states (min slack %.2e)", violations, tightest));

  std::vector<double> first;
  for (double eps : {0.1, 0.05, 0.01, 0.005}) first.push_back(isoperimetric_checks(two_mode_state(n, eps)).first_mode_ratio);
  const double hi = *std::max_element(first.begin(), first.end());
  const double lo = *std::min_element(first.begin(), first.end());
  ck.require(lo > 0.0 && hi / lo <= 2.0, format("first-mode constant %.4g..%.4g across eps (spread %.3f <= 2)", lo, hi, hi / lo));
  return {9, criterion_name(9), ck.ok, ck.detail, 0};
}

// Centered second differences of the Stokes system at x.
void stokes_residuals(Vec2 x, double h, double* momentum, double* divergence) {
  auto G = [](Vec2 p) { return fundamental_solution(p).G; };
  auto Q = [](Vec2 p) { return fundamental_solution(p).Q; };
  const Vec2 ex{h, 0.0}, ey{0.0, h};
  const Mat2 lap = (1.0 / (h * h)) * (G(x + ex) + G(x - ex) + G(x + ey) + G(x - ey) - 4.0 * G(x));
  const Vec2 dQx = (1.0 / (2.0 * h)) * (Q(x + ex) - Q(x - ex));
  const Vec2 dQy = (1.0 / (2.0 * h)) * (Q(x + ey) - Q(x - ey));
  // row i, column j: -lap G_ij + d_i Q_j
  const Mat2 r{-lap.xx + dQx.x, -lap.xy + dQx.y, -lap.yx + dQy.x, -lap.yy + dQy.y};
  *momentum = max_abs(r);
  const Mat2 gx = (1.0 / (2.0 * h)) * (G(x + ex) - G(x - ex));
  const Mat2 gy = (1.0 / (2.0 * h)) * (G(x + ey) - G(x - ey));
  *divergence = std::max(std::abs(gx.xx + gy.yx), std::abs(gx.xy + gy.yy));
}

// 10. Kernel correctness.
CriterionResult kernel_correctness() {
  Check ck;
  double mom[2] = {}, div[2] = {};
  for (int i = 0; i < 2; ++i) {
    const double h = i == 0 ? 2e-2 : 1e-2;
    for (Vec2 x : {Vec2{0.7, 0.3}, Vec2{-1.1, 0.5}, Vec2{0.2, -0.9}, Vec2{1.3, 1.7}}) {
      double m = 0, d = 0;
      stokes_residuals(x, h, &m, &d);
      mom[i] = std::max(mom[i], m);
      div[i] = std::max(div[i], d);
    }
  }
  ck.require(mom[0] / mom[1] >= 3.5 && mom[0] / mom[1] <= 4.5,
             format("-lap G + grad Q residual %.2e -> %.2e (ratio %.2f)", mom[0], mom[1], mom[0] / mom[1]));
  ck.require(div[0] / div[1] >= 3.5 && div[0] / div[1] <= 4.5,
             format("div G residual %.2e -> %.2e (ratio %.2f)", div[0], div[1], div[0] / div[1]));

  double dd_err = 0.0;
  double diag_err = 0.0;
  for (const CurveState& s : test_states(256)) {
    const CurveSamples curve = reconstruct_curve(s);
    for (Coordinate coord : {Coordinate::ArcLength, Coordinate::Material}) {
      const VecField& za = coord == Coordinate::ArcLength ? curve.z_a : curve.X_s;
      const DividedDifferences dd = divided_differences(curve, coord);
      for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
          const std::size_t k = dd.index(i, j);
          dd_err = std::max(dd_err, norm(dd.L[k] + dd.tau[k] * (dd.M[k] - dd.N[k]) - za[j]));
        }
      for (KernelKind kind : {KernelKind::TargetDerivative, KernelKind::SourceDerivative}) {
        const KernelTable table = remainder_kernel(curve, coord, kind);
        const int n = s.n;
        for (int i = 0; i < n; ++i) {
          const auto at = [&](int off) { return table.at(i, ((i + off) % n + n) % n); };
          const Mat2 extrap = (1.0 / 6.0) * (4.0 * (at(1) + at(-1)) - (at(2) + at(-2)));
          diag_err = std::max(diag_err, max_abs(extrap - table.at(i, i)));
        }
      }
    }
  }
  ck.require(dd_err <= 1e-10, format("z'(a') = L + tau(M - N) error %.2e <= 1e-10", dd_err));
  ck.require(diag_err <= 1e-6, format("remainder diagonal vs quartic extrapolation %.2e <= 1e-6", diag_err));
  return {10, criterion_name(10), ck.ok, ck.detail, 0};
}

// 11. Force sanity.
CriterionResult force_sanity() {
  Check ck;
  const int n = 256;
  const CurveSamples eq = reconstruct_curve(CurveState::equilibrium(n));
  const ForceDensity f0 = force_density(eq, ForceParams{});
  double pointwise = 0.0;
  for (int j = 0; j < n; ++j) pointwise = std::max(pointwise, norm(f0.F[j] - 0.5 * eq.nrm_s[j]));
  ck.require(pointwise <= 1e-12, format("|F - n/2|_inf at equilibrium = %.2e", pointwise));

  ForceParams other;
  other.c1 = 2.0;
  other.c3 = 0.5;
  other.lambda = 0.3;
  other.B = 0.2;
  other.s_op = 0.5;
  std::vector<CurveState> states = test_states(n);
  states.push_back(CurveState::equilibrium(n));
  double total = 0.0;
  for (const CurveState& s : states) {
    const CurveSamples curve = reconstruct_curve(s);
    for (const ForceParams& p : {ForceParams{}, other}) {
      const ForceDensity f = force_density(curve, p);
      Vec2 sum{};
      for (const Vec2& v : f.F) sum += v;
      total = std::max(total, norm((s.perimeter * 2.0 * kPi / n) * sum));
    }
  }
  ck.require(total <= 1e-10, format("max |int F ds| over %zu states x 2 parameter sets = %.2e", states.size(), total));
  return {11, criterion_name(11), ck.ok, ck.detail, 0};
}

// 12. Decomposed and direct right-hand sides agree.
CriterionResult two_path() {
  Check ck;
  double et = 0.0, ey = 0.0;
  ForceParams other;
  other.c1 = 1.5;
  other.c3 = 0.7;
  other.lambda = 0.2;
  for (double eps : {0.01, 0.05}) {
    SimConfig c = base_config("mixed", eps, 1e-3, 0.0);
    std::vector<CurveState> states = {preset_state("theta-mode", c), preset_state("y-mode", c),
                                      preset_state("mixed", c), two_mode_state(256, eps)};
    c.seed = 7;
    states.push_back(preset_state("random", c));
    for (const CurveState& s : states)
      for (const ForceParams& p : {ForceParams{}, other}) {
        const Evaluation ev = evaluate(s, p, true, true);
        const Field lt = bending_principal(s, p);
        const Field ly = stretching_principal(s, p);
        const Field dt = g_theta_direct(ev.curve, ev.velocity, p);
        const Field dy = g_y_direct(ev.curve, ev.velocity, p);
        for (int j = 0; j < s.n; ++j) {
          et = std::max(et, std::abs((lt[j] + ev.rhs.g_theta[j]) - (lt[j] + dt[j])));
          ey = std::max(ey, std::abs((ly[j] + ev.rhs.g_y[j]) - (ly[j] + dy[j])));
        }
      }
  }
  ck.require(et <= 1e-7, format("theta path gap %.2e <= 1e-7", et));
  ck.require(ey <= 1e-7, format("y_s path gap %.2e <= 1e-7", ey));
  return {12, criterion_name(12), ck.ok, ck.detail, 0};
}

}  // namespace

const char* criterion_name(int id) {
  static const char* const names[] = {"equilibrium fixed point",
                                      "energy dissipation identity",
                                      "area conservation",
                                      "closed-string preservation",
                                      "Hilbert transform and linear solver",
                                      "rotation/translation invariance",
                                      "linearization",
                                      "exponential convergence",
                                      "isoperimetric suite",
                                      "kernel correctness",
                                      "force sanity",
                                      "two-path consistency"};
  if (id < 1 || id > kCriterionCount) return "unknown";
  return names[id - 1];
}

CriterionResult run_criterion(int id) {
  using Fn = CriterionResult (*)();
  static const Fn table[] = {equilibrium_fixed_point, energy_identity,       area_conservation,
                             closure_preservation,    hilbert_and_linear_solver, invariance,
                             linearization,           exponential_convergence, isoperimetric,
                             kernel_correctness,      force_sanity,          two_path};
  if (id < 1 || id > kCriterionCount) throw Error(ErrorKind::InvalidArgument, "no criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1]();
  } catch (const std::exception& e) {
    r = {id, criterion_name(id), false, std::string("exception: ") + e.what(), 0};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> ids = only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace ibs
