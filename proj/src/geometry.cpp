#include "ibs/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ibs/error.hpp"

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_finite(const Field& f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

Field unit_tangent_x(const Field& theta) {
  Field c(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) c[j] = std::cos(theta[j]);
  return c;
}

Field unit_tangent_y(const Field& theta) {
  Field s(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) s[j] = std::sin(theta[j]);
  return s;
}

Field theta_on_grid(const CurveState& state) {
  const PeriodicGrid grid(state.n);
  Field theta(state.n);
  for (int j = 0; j < state.n; ++j) theta[j] = grid.point(j) + state.mean_angle + state.D[j];
  return theta;
}

double min_stretch(const Field& ys) {
  double m = 1.0 + ys[0];
  for (double v : ys) m = std::min(m, 1.0 + v);
  return m;
}

}  // namespace

CurveState CurveState::equilibrium(int n) {
  PeriodicGrid grid(n);
  CurveState s;
  s.n = grid.size();
  s.D.assign(n, 0.0);
  s.ys.assign(n, 0.0);
  return s;
}

void CurveState::validate() const {
  if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::InvalidArgument, "grid size must be even and positive");
  if (static_cast<int>(D.size()) != n || static_cast<int>(ys.size()) != n)
    throw Error(ErrorKind::InvalidArgument, "field sizes do not match grid size");
  if (!(perimeter > 0.0) || !std::isfinite(perimeter))
    throw Error(ErrorKind::InvalidArgument, "perimeter must be positive");
  if (!all_finite(D) || !all_finite(ys) || !std::isfinite(mean_angle) || !std::isfinite(base_point.x) ||
      !std::isfinite(base_point.y) || !std::isfinite(time))
    throw Error(ErrorKind::NumericalBreakdown, "state contains non-finite values");
}

void ForceParams::validate() const {
  if (c1 < 0.0 || c3 < 0.0) throw Error(ErrorKind::InvalidArgument, "elastic moduli must be nonnegative");
  if (lambda < 0.0) throw Error(ErrorKind::InvalidArgument, "surface tension must be nonnegative");
  if (s_op < 0.0) throw Error(ErrorKind::InvalidArgument, "optimal perimeter must be nonnegative");
  if (c1 == 0.0 && c3 == 0.0 && lambda == 0.0)
    throw Error(ErrorKind::InvalidArgument, "at least one of c1, c3, lambda must be positive");
}

TransferMap build_transfer_map(const Field& ys) {
  const PeriodicGrid grid(static_cast<int>(ys.size()), Coordinate::Material);
  TransferMap map;
  map.y = spectral::antiderivative(ys);
  map.alpha.resize(ys.size());
  for (int j = 0; j < grid.size(); ++j) map.alpha[j] = grid.point(j) + map.y[j];
  return map;
}

Field invert_transfer(const Field& ys, const Field& targets) {
  const double beta2 = min_stretch(ys);
  if (!(beta2 > 0.0))
    throw MarginError(ErrorKind::WellStretchedViolation, "well-stretched margin is nonpositive: " + std::to_string(beta2),
                      beta2);
  const Modes ymodes = spectral::antiderivative_modes(spectral::forward(ys));
  double y0 = 0.0;
  spectral::evaluate_point(ymodes, -kPi, &y0, nullptr);

  Field out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double a = targets[i];
    double lo = -kPi;
    double hi = kPi;
    double s = std::clamp(a, lo, hi);
    bool done = false;
    for (int it = 0; it < 100 && !done; ++it) {
      double y = 0.0;
      double slope = 0.0;
      spectral::evaluate_point(ymodes, s, &y, &slope);
      const double f = s + (y - y0) - a;
      if (f == 0.0) break;
      if (f > 0.0) hi = std::min(hi, s);
      else lo = std::max(lo, s);
      const double fp = 1.0 + slope;
      double next = s - f / fp;
      if (!(fp > 0.0) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
      if (std::abs(next - s) <= 1e-15 * (1.0 + std::abs(s))) done = true;
      s = next;
      if (hi - lo <= 1e-15) done = true;
    }
    out[i] = s;
  }
  return out;
}

VecField reconstruct_z(const CurveState& state) {
  const Field theta = theta_on_grid(state);
  const Field ax = spectral::antiderivative(unit_tangent_x(theta));
  const Field ay = spectral::antiderivative(unit_tangent_y(theta));
  VecField z(state.n);
  for (int j = 0; j < state.n; ++j) z[j] = state.base_point + state.perimeter * Vec2{ax[j], ay[j]};
  return z;
}

CurveSamples reconstruct_curve(const CurveState& state) {
  state.validate();
  const int n = state.n;
  const double sp = state.perimeter;
  CurveSamples c;
  c.state = state;

  const PeriodicGrid agrid(n, Coordinate::ArcLength);
  c.alpha = agrid.points();
  const Modes dm = spectral::forward(state.D);
  const Field d1 = spectral::inverse(spectral::derivative_modes(dm, 1), n);
  c.theta_aa = spectral::inverse(spectral::derivative_modes(dm, 2), n);
  c.theta_aaa = spectral::inverse(spectral::derivative_modes(dm, 3), n);
  c.theta.resize(n);
  c.theta_a.resize(n);
  c.kappa.resize(n);
  for (int j = 0; j < n; ++j) {
    c.theta[j] = c.alpha[j] + state.mean_angle + state.D[j];
    c.theta_a[j] = 1.0 + d1[j];
    c.kappa[j] = c.theta_a[j] / sp;
  }
  const Field tx = unit_tangent_x(c.theta);
  const Field ty = unit_tangent_y(c.theta);
  c.t = spectral::combine(tx, ty);
  c.nrm.resize(n);
  for (int j = 0; j < n; ++j) c.nrm[j] = perp(c.t[j]);

  const Modes txm = spectral::forward(tx);
  const Modes tym = spectral::forward(ty);
  const Vec2 tbar{txm[0].real(), tym[0].real()};
  c.closure = 2.0 * kPi * tbar;
  const Modes wx = spectral::antiderivative_modes(txm);
  const Modes wy = spectral::antiderivative_modes(tym);
  const Field wxs = spectral::inverse(wx, n);
  const Field wys = spectral::inverse(wy, n);
  c.z.resize(n);
  c.z_a.resize(n);
  c.z_aa.resize(n);
  for (int j = 0; j < n; ++j) {
    c.z[j] = state.base_point + sp * Vec2{wxs[j] - wxs[0], wys[j] - wys[0]};
    c.z_a[j] = sp * (c.t[j] - tbar);
    c.z_aa[j] = (sp * c.theta_a[j]) * c.nrm[j];
  }

  const PeriodicGrid sgrid(n, Coordinate::Material);
  c.s = sgrid.points();
  c.ys = state.ys;
  c.yss = spectral::derivative(state.ys, 1);
  TransferMap map = build_transfer_map(state.ys);
  c.y = std::move(map.y);
  c.alpha_of_s = std::move(map.alpha);

  c.to_material = std::make_shared<const spectral::OffGridBasis>(n, c.alpha_of_s);
  const spectral::OffGridBasis& at_s = *c.to_material;
  const Field dv = at_s.evaluate(dm);
  const Field d1v = at_s.evaluate(spectral::derivative_modes(dm, 1));
  c.theta_aa_s = at_s.evaluate(spectral::derivative_modes(dm, 2));
  c.theta_aaa_s = at_s.evaluate(spectral::derivative_modes(dm, 3));
  const Field wxv = at_s.evaluate(wx);
  const Field wyv = at_s.evaluate(wy);
  c.theta_s.resize(n);
  c.theta_a_s.resize(n);
  c.t_s.resize(n);
  c.nrm_s.resize(n);
  c.X.resize(n);
  c.X_s.resize(n);
  c.X_ss.resize(n);
  for (int j = 0; j < n; ++j) {
    c.theta_s[j] = c.alpha_of_s[j] + state.mean_angle + dv[j];
    c.theta_a_s[j] = 1.0 + d1v[j];
    c.t_s[j] = {std::cos(c.theta_s[j]), std::sin(c.theta_s[j])};
    c.nrm_s[j] = perp(c.t_s[j]);
    c.X[j] = state.base_point + sp * Vec2{wxv[j] - wxs[0], wyv[j] - wys[0]};
    const double stretch = 1.0 + c.ys[j];
    const Vec2 za = sp * (c.t_s[j] - tbar);
    c.X_s[j] = stretch * za;
    c.X_ss[j] = (stretch * stretch * sp * c.theta_a_s[j]) * c.nrm_s[j] + c.yss[j] * za;
  }

  c.s_of_alpha = invert_transfer(state.ys, c.alpha);
  c.to_arclength = std::make_shared<const spectral::OffGridBasis>(n, c.s_of_alpha);
  const spectral::OffGridBasis& at_alpha = *c.to_arclength;
  const Modes ym = spectral::forward(state.ys);
  c.ys_at_alpha = at_alpha.evaluate(ym);
  c.yss_at_alpha = at_alpha.evaluate(spectral::derivative_modes(ym, 1));
  return c;
}

Vec2 closure_vector(const CurveState& state) {
  const Field theta = theta_on_grid(state);
  return {spectral::integrate(unit_tangent_x(theta)), spectral::integrate(unit_tangent_y(theta))};
}

double closure_defect(const CurveState& state) { return norm(closure_vector(state)); }

Margins wellposedness_margins(const CurveState& state) {
  const int n = state.n;
  const double h = 2.0 * kPi / n;
  const Field theta = theta_on_grid(state);
  const Field tx = unit_tangent_x(theta);
  const Field ty = unit_tangent_y(theta);
  const Vec2 total{spectral::integrate(tx), spectral::integrate(ty)};
  const Vec2 tbar = total / (2.0 * kPi);
  const Field ax = spectral::antiderivative(tx);
  const Field ay = spectral::antiderivative(ty);
  VecField prefix(n);
  for (int j = 0; j < n; ++j) prefix[j] = Vec2{ax[j], ay[j]} + (j * h) * tbar;

  double ratio = 1e300;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double d = (i - j) * h;
      const Vec2 forward_arc = prefix[i] - prefix[j];
      const double r = (i - j) * 2 <= n ? norm(forward_arc) / d : norm(total - forward_arc) / (2.0 * kPi - d);
      ratio = std::min(ratio, r);
    }
  }
  Margins m;
  m.beta1 = ratio - norm(total) / (2.0 * kPi);
  m.beta2 = min_stretch(state.ys);
  return m;
}

double enclosed_area(const VecField& z, const VecField& z_a) {
  double acc = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) acc += dot(z[j], perp(z_a[j]));
  return -0.5 * acc * (2.0 * kPi / static_cast<double>(z.size()));
}

double enclosed_area(const CurveState& state) {
  const VecField z = reconstruct_z(state);
  const Field theta = theta_on_grid(state);
  const Field tx = unit_tangent_x(theta);
  const Field ty = unit_tangent_y(theta);
  const Vec2 tbar{spectral::mean(tx), spectral::mean(ty)};
  VecField za(state.n);
  for (int j = 0; j < state.n; ++j) za[j] = state.perimeter * (Vec2{tx[j], ty[j]} - tbar);
  return enclosed_area(z, za);
}

CurveState normalize_initial_data(const Field& theta_minus_alpha, const Field& ys, double target_area) {
  const int n = static_cast<int>(theta_minus_alpha.size());
  const PeriodicGrid grid(n);
  if (static_cast<int>(ys.size()) != n) throw Error(ErrorKind::InvalidArgument, "field sizes differ");
  if (!(target_area > 0.0)) throw Error(ErrorKind::InvalidArgument, "target area must be positive");
  if (!all_finite(theta_minus_alpha) || !all_finite(ys))
    throw Error(ErrorKind::InvalidArgument, "initial data contains non-finite values");

  const Field alpha = grid.points();
  Field p = theta_minus_alpha;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    Vec2 f{};
    double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
    for (int j = 0; j < n; ++j) {
      const double th = alpha[j] + p[j];
      const double c = std::cos(th);
      const double s = std::sin(th);
      const double ca = std::cos(alpha[j]);
      const double sa = std::sin(alpha[j]);
      f += Vec2{c, s};
      j11 -= s * ca;
      j12 -= s * sa;
      j21 += c * ca;
      j22 += c * sa;
    }
    const double w = 2.0 * kPi / n;
    f = w * f;
    if (norm(f) <= 1e-13) {
      converged = true;
      break;
    }
    j11 *= w;
    j12 *= w;
    j21 *= w;
    j22 *= w;
    const double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 1e-300)) break;
    const double da = -(j22 * f.x - j12 * f.y) / det;
    const double db = -(-j21 * f.x + j11 * f.y) / det;
    for (int j = 0; j < n; ++j) p[j] += da * std::cos(alpha[j]) + db * std::sin(alpha[j]);
  }
  if (!converged) throw Error(ErrorKind::NonClosable, "closure correction did not converge in 50 iterations");

  CurveState state;
  state.n = n;
  state.mean_angle = spectral::mean(p);
  state.D = p;
  for (double& v : state.D) v -= state.mean_angle;
  state.ys = ys;
  spectral::remove_mean(state.ys);
  state.perimeter = 1.0;
  const double unit_area = enclosed_area(state);
  if (!(unit_area > 0.0)) throw Error(ErrorKind::NonClosable, "initial curve does not enclose positive area");
  state.perimeter = std::sqrt(target_area / unit_area);
  return state;
}

}  // namespace ibs
