#include "ibs/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ibs/error.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

struct FourierPair {
  Modes c;
  // a_j, b_j for any integer j.
  double a(int j) const { return spectral::cosine_coefficient(c, std::abs(j)); }
  double b(int j) const { return j < 0 ? -spectral::sine_coefficient(c, -j) : spectral::sine_coefficient(c, j); }
};

double l2_norm(const VecField& v) {
  double s = 0.0;
  for (const Vec2& x : v) s += norm2(x);
  return std::sqrt(2.0 * kPi * s / static_cast<double>(v.size()));
}

}  // namespace

double energy(const CurveState& state, const ForceParams& p) {
  const double sp = state.perimeter;
  const Field d1 = spectral::derivative(state.D, 1);
  double bend = 0.0;
  double stretch = 0.0;
  for (int j = 0; j < state.n; ++j) {
    const double k = 1.0 + d1[j] - p.B * sp;
    bend += k * k;
    const double e = sp * (1.0 + state.ys[j]) - p.s_op;
    stretch += e * e;
  }
  const double w = 2.0 * kPi / state.n;
  return p.c1 / (2.0 * sp) * bend * w + 0.5 * p.c3 * stretch * w + 2.0 * kPi * p.lambda * sp;
}

double dissipation_rate(const CurveSamples& curve, const VelocityFields& v, const ForceParams& params) {
  const ForceDensity f = force_density(curve, params);
  double acc = 0.0;
  for (int j = 0; j < curve.size(); ++j) acc += dot(v.u_alpha[j], f.F_alpha[j]) + dot(v.u_s[j], f.F_s[j]);
  return acc * 2.0 * kPi / curve.size();
}

VecField linearized_velocity(const Field& D, const Field& y_alpha, double sp, double lambda) {
  const int n = static_cast<int>(D.size());
  const PeriodicGrid grid(n);
  const Field d1 = spectral::derivative(D, 1);
  const Field d2 = spectral::derivative(D, 2);
  Field gx(n), gy(n);
  for (int j = 0; j < n; ++j) {
    const double a = grid.point(j);
    gx[j] = -D[j] * std::cos(a);
    gy[j] = -D[j] * std::sin(a);
  }
  // int_{-pi}^{alpha} g - (alpha/2pi) int g
  const double mx = spectral::mean(gx);
  const double my = spectral::mean(gy);
  const Field ux = spectral::antiderivative(gx);
  const Field uy = spectral::antiderivative(gy);
  const double coef = lambda + sp - 1.0 / (2.0 * sp * sp);
  Field wx(n), wy(n);
  for (int j = 0; j < n; ++j) {
    const double a = grid.point(j);
    const Vec2 ns{-std::sin(a), std::cos(a)};
    const Vec2 ts{std::cos(a), std::sin(a)};
    const Vec2 under{ux[j] + kPi * mx, uy[j] + kPi * my};
    const Vec2 w = coef * (D[j] * ns - under) - (1.0 / (sp * sp)) * (d2[j] * ns + d1[j] * ts) + (sp * y_alpha[j]) * ts;
    wx[j] = w.x;
    wy[j] = w.y;
  }
  const Field hx = spectral::hilbert(wx);
  const Field hy = spectral::hilbert(wy);
  VecField out(n);
  for (int j = 0; j < n; ++j) out[j] = {-0.25 * hx[j], -0.25 * hy[j]};
  return out;
}

VecField linearized_velocity_modes(const Field& D, const Field& y_alpha, double sp, double lambda,
                                   double* max_imaginary) {
  const int n = static_cast<int>(D.size());
  const PeriodicGrid grid(n);
  const FourierPair d{spectral::forward(D)};
  const FourierPair y{spectral::forward(y_alpha)};
  const double L = lambda + sp - 1.0 / (2.0 * sp * sp);
  const double s2 = 1.0 / (sp * sp);
  const Complex I(0.0, 1.0);
  const int kmax = n / 2 + 1;
  std::vector<Complex> Nk(2 * kmax + 1), Mk(2 * kmax + 1);
  for (int k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    const double ak = std::abs(static_cast<double>(k));
    const double sg = k > 0 ? 1.0 : -1.0;
    const double km = k - 1.0;
    const double kp = k + 1.0;
    const double pm = L * km / ak + s2 * k * km * km / ak - s2 * k * km / ak;
    const double pp = L * kp / ak + s2 * k * kp * kp / ak + s2 * k * kp / ak;
    const Complex N = (-pm) * d.a(k - 1) + sp * sg * y.b(k - 1) + pp * d.a(k + 1) + sp * sg * y.b(k + 1) +
                      I * (pm * d.b(k - 1)) + I * (sp * sg * y.a(k - 1)) + I * (-pp * d.b(k + 1)) +
                      I * (sp * sg * y.a(k + 1));
    const Complex M = pm * d.b(k - 1) + sp * sg * y.a(k - 1) + pp * d.b(k + 1) - sp * sg * y.a(k + 1) +
                      I * (pm * d.a(k - 1)) - I * (sp * sg * y.b(k - 1)) + I * (pp * d.a(k + 1)) +
                      I * (sp * sg * y.b(k + 1));
    Nk[k + kmax] = N;
    Mk[k + kmax] = M;
  }
  VecField out(n);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double a = grid.point(j);
    Complex sx(0.0, 0.0), sy(0.0, 0.0);
    for (int k = -kmax; k <= kmax; ++k) {
      if (k == 0) continue;
      const Complex e = std::polar(1.0, k * a);
      sx += Nk[k + kmax] * e;
      sy += Mk[k + kmax] * e;
    }
    sx /= 16.0 * kPi;
    sy /= 16.0 * kPi;
    worst = std::max(worst, std::max(std::abs(sx.imag()), std::abs(sy.imag())));
    out[j] = {sx.real(), sy.real()};
  }
  if (max_imaginary) *max_imaginary = worst;
  return out;
}

double linearization_error(const CurveState& state, const ForceParams& params) {
  const VelocityFields v = curve_velocity(state, params);
  Field D = state.D;
  for (double& x : D) x += state.mean_angle;
  const VecField lin = linearized_velocity(D, state.ys, state.perimeter, params.lambda);
  VecField diff(state.n);
  for (int j = 0; j < state.n; ++j) diff[j] = v.u_alpha[j] - lin[j];
  return l2_norm(diff);
}

IsoperimetricChecks isoperimetric_checks(const CurveState& state) {
  const Field d1 = spectral::derivative(state.D, 1);
  IsoperimetricChecks c;
  double sq = 0.0;
  double min_ta = 1e300;
  for (int j = 0; j < state.n; ++j) {
    const double ta = 1.0 + d1[j];
    sq += ta * ta;
    min_ta = std::min(min_ta, ta);
  }
  c.gage_value = sq * (2.0 * kPi / state.n) / (2.0 * state.perimeter);
  c.gage_applicable = min_ta > 0.0;
  const double l2 = spectral::sobolev_seminorm(state.D, 0.0);
  const double h1 = spectral::sobolev_seminorm(state.D, 1.0);
  const double gap = state.perimeter - 1.0;
  c.fuglede_ratio = gap < 1e-14 ? std::numeric_limits<double>::infinity() : l2 * l2 / gap;
  const Modes m = spectral::forward(state.D);
  const double first = std::hypot(spectral::cosine_coefficient(m, 1), spectral::sine_coefficient(m, 1));
  const double denom = l2 * h1;
  c.first_mode_ratio = denom > 0.0 ? first / denom : 0.0;
  c.perimeter_gap = gap;
  c.perimeter_gap_bound = h1 * h1 / (4.0 * kPi);
  return c;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& value, std::size_t begin,
                   std::size_t end) {
  if (end > t.size() || end > value.size() || begin >= end || end - begin < 2)
    throw Error(ErrorKind::InvalidArgument, "fit window outside the series");
  const double m = static_cast<double>(end - begin);
  double st = 0, sl = 0;
  for (std::size_t i = begin; i < end; ++i) {
    if (!(value[i] > 0.0)) throw Error(ErrorKind::Domain, "decay fit requires positive values");
    st += t[i];
    sl += std::log(value[i]);
  }
  const double tm = st / m;
  const double lm = sl / m;
  double stt = 0, stl = 0, sll = 0;
  for (std::size_t i = begin; i < end; ++i) {
    const double dt = t[i] - tm;
    const double dl = std::log(value[i]) - lm;
    stt += dt * dt;
    stl += dt * dl;
    sll += dl * dl;
  }
  if (!(stt > 0.0)) throw Error(ErrorKind::InvalidArgument, "fit window has no time spread");
  DecayFit f;
  const double slope = stl / stt;
  f.gamma = -slope;
  const double res = sll - slope * stl;
  f.r2 = sll > 0.0 ? 1.0 - std::max(res, 0.0) / sll : 1.0;
  return f;
}

LimitCircleFit limit_circle(const CurveSamples& c) {
  const int n = c.size();
  LimitCircleFit fit;
  fit.radius = std::sqrt(enclosed_area(c.z, c.z_a) / kPi);
  Vec2 center{};
  for (const Vec2& x : c.X) center += x;
  fit.center = center / static_cast<double>(n);
  double A = 0.0;
  double B = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec2 r = c.X[j] - fit.center;
    A += r.x * std::sin(c.s[j]) - r.y * std::cos(c.s[j]);
    B += r.x * std::cos(c.s[j]) + r.y * std::sin(c.s[j]);
  }
  fit.phase = std::atan2(B, A);
  Field ex(n), ey(n);
  for (int j = 0; j < n; ++j) {
    const double arg = c.s[j] + fit.phase;
    ex[j] = c.X[j].x - fit.center.x - fit.radius * std::sin(arg);
    ey[j] = c.X[j].y - fit.center.y + fit.radius * std::cos(arg);
  }
  fit.residual = std::hypot(spectral::sobolev_seminorm(ex, 2.5), spectral::sobolev_seminorm(ey, 2.5));
  return fit;
}

LimitCircleFit limit_circle(const CurveState& state) { return limit_circle(reconstruct_curve(state)); }

DiagnosticsRecord diagnostics_record(const CurveSamples& curve, const VelocityFields& velocity,
                                     const ForceParams& params, const Margins& margins) {
  const CurveState& s = curve.state;
  DiagnosticsRecord r;
  r.t = s.time;
  r.energy = energy(s, params);
  r.dissipation = dissipation_rate(curve, velocity, params);
  r.area = enclosed_area(curve.z, curve.z_a);
  r.perimeter = s.perimeter;
  r.closure_defect = norm(curve.closure);
  r.beta1 = margins.beta1;
  r.beta2 = margins.beta2;
  r.H1 = spectral::sobolev_seminorm(s.D, 1.0);
  r.H2 = spectral::sobolev_seminorm(s.D, 2.0);
  r.H2_5 = spectral::sobolev_seminorm(s.D, 2.5);
  r.h0 = spectral::sobolev_seminorm(s.ys, 0.0);
  r.h1_5 = spectral::sobolev_seminorm(s.ys, 1.5);
  const Modes m = spectral::forward(s.D);
  for (int k = 1; k <= 4; ++k) {
    r.a[k] = spectral::cosine_coefficient(m, k);
    r.b[k] = spectral::sine_coefficient(m, k);
  }
  const IsoperimetricChecks iso = isoperimetric_checks(s);
  r.fuglede = iso.fuglede_ratio;
  r.gage = iso.gage_applicable ? iso.gage_value : std::numeric_limits<double>::quiet_NaN();
  return r;
}

DiagnosticsRecord diagnose_state(const CurveState& state, const ForceParams& params) {
  const CurveSamples curve = reconstruct_curve(state);
  const VelocityFields v = curve_velocity(curve, params);
  return diagnostics_record(curve, v, params, wellposedness_margins(state));
}

}  // namespace ibs
