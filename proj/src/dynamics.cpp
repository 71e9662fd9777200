#include "ibs/dynamics.hpp"

#include <cmath>
#include <string>

#include "ibs/error.hpp"

namespace ibs {

namespace {

double mean_of_product(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s / static_cast<double>(a.size());
}

Field subtract_mean(Field f, double* removed) {
  const double m = spectral::mean(f);
  for (double& v : f) v -= m;
  if (removed) *removed = m;
  return f;
}

Modes advance_modes(const Modes& now, const Modes& g_now, const Modes* before, const Modes* g_before, double dt,
                    spectral::LinearOperator op, double perimeter, double coefficient) {
  Modes out(now.size());
  for (std::size_t k = 0; k < now.size(); ++k) {
    const double rate = spectral::principal_rate(static_cast<int>(k), op, perimeter, coefficient);
    if (before) {
      out[k] = (4.0 * now[k] - (*before)[k] + 2.0 * dt * (2.0 * g_now[k] - (*g_before)[k])) / (3.0 + 2.0 * dt * rate);
    } else {
      out[k] = (now[k] + dt * g_now[k]) / (1.0 + dt * rate);
    }
  }
  return out;
}

double advance_scalar(double now, double rate_now, const double* before, const double* rate_before, double dt) {
  if (before) return (4.0 * now - *before + 2.0 * dt * (2.0 * rate_now - *rate_before)) / 3.0;
  return now + dt * rate_now;
}

}  // namespace

void SimConfig::validate() const {
  if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::Config, "n must be even and positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::Config, "dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw Error(ErrorKind::Config, "t_final must be nonnegative");
  if (output_every <= 0) throw Error(ErrorKind::Config, "output_every must be positive");
  if (snapshot_every < 0) throw Error(ErrorKind::Config, "snapshot_every must be nonnegative");
  if (!(margins.beta1_min > 0.0) || !(margins.beta2_min > 0.0) || !(margins.defect_max > 0.0))
    throw Error(ErrorKind::Config, "abort margins must be positive");
  try {
    params.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
}

ScalarRates scalar_rates(const CurveSamples& curve, const VelocityFields& v) {
  ScalarRates r;
  r.s_dot = -mean_of_product(curve.theta_a, v.U);
  r.mean_angle_dot = mean_of_product(v.T, curve.theta_a) / curve.state.perimeter;
  r.base_velocity = v.u_alpha[0];
  return r;
}

Field bending_principal(const CurveState& state, const ForceParams& params) {
  const double sp = state.perimeter;
  const double c = params.c1 / (4.0 * sp * sp * sp);
  return spectral::apply_symbol(state.D, [&](int k) { return -c * static_cast<double>(k) * k * k; });
}

Field stretching_principal(const CurveState& state, const ForceParams& params) {
  const double c = params.c3 / 4.0;
  return spectral::apply_symbol(state.ys, [&](int k) { return -c * static_cast<double>(k); });
}

Field g_theta(const CurveSamples& curve, const VelocityFields& v, const ForceParams& params, bool dealias,
              double* projected_mean) {
  const int n = curve.size();
  const double sp = curve.state.perimeter;
  const NormalDerivative nd = normal_derivative_term(curve, params, dealias);
  Field g(n);
  for (int j = 0; j < n; ++j) {
    const double transport = (v.T[j] - dot(v.u_alpha[j], curve.t[j])) * curve.theta_a[j];
    g[j] = (nd.total[j] - nd.leading[j] + transport) / sp;
  }
  const double drift = scalar_rates(curve, v).mean_angle_dot;
  for (double& x : g) x -= drift;
  return subtract_mean(std::move(g), projected_mean);
}

Field g_y(const CurveSamples& curve, const VelocityFields&, const ForceParams& params, double s_dot, bool dealias,
          double* projected_mean) {
  const int n = curve.size();
  const double sp = curve.state.perimeter;
  const NormalDerivative td = tangential_derivative_term(curve, params, dealias);
  Field g(n);
  for (int j = 0; j < n; ++j) g[j] = (td.total[j] - td.leading[j]) / sp - (1.0 + curve.ys[j]) * s_dot / sp;
  return subtract_mean(std::move(g), projected_mean);
}

Field g_theta_direct(const CurveSamples& curve, const VelocityFields& v, const ForceParams& params) {
  const int n = curve.size();
  const double sp = curve.state.perimeter;
  const Field dux = spectral::derivative(spectral::components_x(v.u_alpha), 1);
  const Field duy = spectral::derivative(spectral::components_y(v.u_alpha), 1);
  const Field lead = bending_principal(curve.state, params);
  Field g(n);
  for (int j = 0; j < n; ++j) {
    const double un = dot(Vec2{dux[j], duy[j]}, curve.nrm[j]);
    const double transport = (v.T[j] - dot(v.u_alpha[j], curve.t[j])) * curve.theta_a[j];
    g[j] = (un + transport) / sp - lead[j];
  }
  return subtract_mean(std::move(g), nullptr);
}

Field g_y_direct(const CurveSamples& curve, const VelocityFields& v, const ForceParams& params) {
  const int n = curve.size();
  const double sp = curve.state.perimeter;
  const Field T_at_s = curve.to_material->evaluate_samples(v.T);
  Field w(n);
  for (int j = 0; j < n; ++j) w[j] = dot(v.u_s[j], curve.t_s[j]) - T_at_s[j];
  const Field dw = spectral::derivative(w, 1);
  const Field lead = stretching_principal(curve.state, params);
  Field g(n);
  for (int j = 0; j < n; ++j) g[j] = dw[j] / sp - lead[j];
  return subtract_mean(std::move(g), nullptr);
}

Evaluation evaluate(const CurveState& state, const ForceParams& params, bool dealias, bool project_rhs) {
  Evaluation ev{reconstruct_curve(state), {}, {}};
  ev.velocity = curve_velocity(ev.curve, params);
  const ScalarRates rates = scalar_rates(ev.curve, ev.velocity);
  RhsBundle& r = ev.rhs;
  r.s_dot = rates.s_dot;
  r.mean_angle_dot = rates.mean_angle_dot;
  r.base_velocity = rates.base_velocity;
  r.g_theta = g_theta(ev.curve, ev.velocity, params, dealias, &r.projected_means[0]);
  r.g_y = g_y(ev.curve, ev.velocity, params, r.s_dot, dealias, &r.projected_means[1]);
  if (!project_rhs) {
    const double m0 = r.projected_means[0] + r.mean_angle_dot;
    for (double& x : r.g_theta) x += m0;
    for (double& x : r.g_y) x += r.projected_means[1];
  }
  return ev;
}

CurveState advance(const CurveState& state, const RhsBundle& rhs, const SimConfig& config, StepHistory* history) {
  const double dt = config.dt;
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "time step must be positive");
  const bool two_step = config.scheme == Scheme::ImexBdf2 && history && history->valid;
  const ForceParams& p = config.params;
  const int n = state.n;
  const double sp = state.perimeter;

  const Modes dm = spectral::forward(state.D);
  const Modes gm = spectral::forward(rhs.g_theta);
  const Modes ym = spectral::forward(state.ys);
  const Modes gym = spectral::forward(rhs.g_y);
  Modes dm_prev, gm_prev, ym_prev, gym_prev;
  if (two_step) {
    dm_prev = spectral::forward(history->state.D);
    gm_prev = spectral::forward(history->rhs.g_theta);
    ym_prev = spectral::forward(history->state.ys);
    gym_prev = spectral::forward(history->rhs.g_y);
  }

  CurveState next = state;
  next.D = spectral::inverse(advance_modes(dm, gm, two_step ? &dm_prev : nullptr, two_step ? &gm_prev : nullptr, dt,
                                           spectral::LinearOperator::Bending, sp, p.c1),
                             n);
  next.ys = spectral::inverse(advance_modes(ym, gym, two_step ? &ym_prev : nullptr, two_step ? &gym_prev : nullptr, dt,
                                            spectral::LinearOperator::Stretching, sp, p.c3),
                              n);
  spectral::remove_mean(next.D);
  spectral::remove_mean(next.ys);

  const CurveState* prev = two_step ? &history->state : nullptr;
  const RhsBundle* prev_rhs = two_step ? &history->rhs : nullptr;
  next.perimeter = advance_scalar(state.perimeter, rhs.s_dot, prev ? &prev->perimeter : nullptr,
                                  prev_rhs ? &prev_rhs->s_dot : nullptr, dt);
  next.mean_angle = advance_scalar(state.mean_angle, rhs.mean_angle_dot, prev ? &prev->mean_angle : nullptr,
                                   prev_rhs ? &prev_rhs->mean_angle_dot : nullptr, dt);
  next.base_point.x = advance_scalar(state.base_point.x, rhs.base_velocity.x, prev ? &prev->base_point.x : nullptr,
                                     prev_rhs ? &prev_rhs->base_velocity.x : nullptr, dt);
  next.base_point.y = advance_scalar(state.base_point.y, rhs.base_velocity.y, prev ? &prev->base_point.y : nullptr,
                                     prev_rhs ? &prev_rhs->base_velocity.y : nullptr, dt);
  next.time = state.time + dt;

  if (history) {
    history->state = state;
    history->rhs = rhs;
    history->valid = true;
  }
  return next;
}

CurveState time_step(const CurveState& state, const SimConfig& config, StepHistory* history) {
  check_state(state, config.margins);
  const Evaluation ev = evaluate(state, config.params, config.dealias, config.project_rhs);
  CurveState next = advance(state, ev.rhs, config, history);
  check_state(next, config.margins);
  return next;
}

Margins check_state(const CurveState& state, const AbortMargins& limits) {
  state.validate();
  const Margins m = wellposedness_margins(state);
  if (!(m.beta2 >= limits.beta2_min))
    throw MarginError(ErrorKind::WellStretchedViolation, "well-stretched margin beta2 = " + std::to_string(m.beta2),
                      m.beta2);
  if (!(m.beta1 >= limits.beta1_min))
    throw MarginError(ErrorKind::SelfIntersection, "non-self-intersecting margin beta1 = " + std::to_string(m.beta1),
                      m.beta1);
  const double defect = closure_defect(state);
  if (!(defect <= limits.defect_max))
    throw MarginError(ErrorKind::NonClosable, "closure defect = " + std::to_string(defect), defect);
  return m;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::MarginAbort: return "margin-abort";
    case Termination::NanAbort: return "nan-abort";
  }
  return "unknown";
}

RunResult run_simulation(const CurveState& initial, const SimConfig& config, const RunCallbacks& callbacks) {
  config.validate();
  if (initial.n != config.n) throw Error(ErrorKind::Config, "initial state grid does not match n");
  const long nsteps = std::lround(config.t_final / config.dt);
  RunResult result;
  CurveState state = initial;
  const double t0 = initial.time;
  StepHistory history;
  long step = 0;
  for (;; ++step) {
    try {
      const Margins margins = check_state(state, config.margins);
      const Evaluation ev = evaluate(state, config.params, config.dealias, config.project_rhs);
      result.projected_means.push_back(ev.rhs.projected_means);
      if (step % config.output_every == 0 || step == nsteps) {
        DiagnosticsRecord rec = diagnostics_record(ev.curve, ev.velocity, config.params, margins);
        result.records.push_back(rec);
        if (callbacks.on_record) callbacks.on_record(step, state, rec);
      }
      if (callbacks.on_snapshot &&
          (step == 0 || step == nsteps || (config.snapshot_every > 0 && step % config.snapshot_every == 0)))
        callbacks.on_snapshot(step, state);
      if (step == nsteps) break;
      state = advance(state, ev.rhs, config, &history);
      state.time = t0 + (step + 1) * config.dt;
    } catch (const MarginError& e) {
      result.termination = Termination::MarginAbort;
      result.message = e.what();
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NumericalBreakdown) throw;
      result.termination = Termination::NanAbort;
      result.message = e.what();
      break;
    }
  }
  result.final_state = state;
  result.steps = step;
  return result;
}

}  // namespace ibs
