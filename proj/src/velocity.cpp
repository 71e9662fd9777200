#include "ibs/velocity.hpp"

#include <cmath>
#include <numbers>

namespace ibs {

namespace {

constexpr double kPi = std::numbers::pi;

VecField hilbert(const VecField& v) {
  return spectral::combine(spectral::hilbert(spectral::components_x(v)), spectral::hilbert(spectral::components_y(v)));
}

// f * v componentwise.
VecField scaled(const Field& f, const VecField& v, bool dealias) {
  return spectral::combine(spectral::product(f, spectral::components_x(v), dealias),
                           spectral::product(f, spectral::components_y(v), dealias));
}

Field dot(const VecField& a, const VecField& b) {
  Field out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out[j] = ibs::dot(a[j], b[j]);
  return out;
}

// psi . [H, psi] f
Field projected_commutator(const VecField& psi, const VecField& onto, const Field& f, bool dealias) {
  const Field cx = spectral::hilbert_commutator(spectral::components_x(psi), f, dealias);
  const Field cy = spectral::hilbert_commutator(spectral::components_y(psi), f, dealias);
  Field out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) out[j] = onto[j].x * cx[j] + onto[j].y * cy[j];
  return out;
}

Field cube(const Field& f, bool dealias) { return spectral::product(f, spectral::product(f, f, dealias), dealias); }

VecField interpolate(const spectral::OffGridBasis& basis, const VecField& v) {
  return spectral::combine(basis.evaluate_samples(spectral::components_x(v)),
                           basis.evaluate_samples(spectral::components_y(v)));
}

VelocityFields assemble(const CurveSamples& curve, const VecField& u_bend, const VecField& u_stretch) {
  const int n = curve.size();
  const VecField stretch_at_alpha = interpolate(*curve.to_arclength, u_stretch);
  const VecField bend_at_s = interpolate(*curve.to_material, u_bend);
  VecField ua(n);
  VecField us(n);
  for (int j = 0; j < n; ++j) {
    ua[j] = u_bend[j] + stretch_at_alpha[j];
    us[j] = u_stretch[j] + bend_at_s[j];
  }
  return complete_velocity(curve, std::move(ua), std::move(us));
}

double tension_coefficient(const ForceParams& p) { return p.lambda + p.c1 * (p.B - 0.5 * p.B * p.B); }

// Normal coefficient of the bending and tension force per d(alpha).
double bending_normal(const ForceParams& p, double sp, double ta, double taaa) {
  return tension_coefficient(p) * ta - p.c1 * (taaa + 0.5 * ta * ta * ta) / (sp * sp);
}

// Log-split single-layer quadrature on one grid.
VecField single_layer(const VecField& pos, const VecField& tangent, const VecField& density) {
  const int n = static_cast<int>(pos.size());
  const double h = 2.0 * kPi / n;
  const VecField smooth_log = spectral::combine(
      spectral::apply_symbol(spectral::components_x(density), [](int k) { return k == 0 ? 0.0 : kPi / k; }),
      spectral::apply_symbol(spectral::components_y(density), [](int k) { return k == 0 ? 0.0 : kPi / k; }));
  VecField out(n);
  for (int i = 0; i < n; ++i) {
    Vec2 acc{};
    for (int j = 0; j < n; ++j) {
      Mat2 S;
      if (i == j) {
        const Vec2 a = tangent[i];
        S = (-std::log(norm(a))) * identity2() + (1.0 / norm2(a)) * outer(a, a);
      } else {
        const Vec2 x = pos[i] - pos[j];
        const double d = (i - j) * h;
        const double r2 = norm2(x);
        S = (-0.5 * std::log(r2 / (4.0 * std::sin(0.5 * d) * std::sin(0.5 * d)))) * identity2() + (1.0 / r2) * outer(x, x);
      }
      acc += S * density[j];
    }
    out[i] = (1.0 / (4.0 * kPi)) * (smooth_log[i] + h * acc);
  }
  return out;
}

}  // namespace

ForceDensity force_density(const CurveSamples& c, const ForceParams& p) {
  const int n = c.size();
  const double sp = c.state.perimeter;
  ForceDensity f;
  f.F_alpha.resize(n);
  f.F_s.resize(n);
  f.F.resize(n);
  for (int j = 0; j < n; ++j) {
    f.F_alpha[j] = bending_normal(p, sp, c.theta_a[j], c.theta_aaa[j]) * c.nrm[j];
    const double st = 1.0 + c.ys[j];
    f.F_s[j] = p.c3 * ((sp * c.yss[j]) * c.t_s[j] + ((sp * st - p.s_op) * st * c.theta_a_s[j]) * c.nrm_s[j]);
    f.F[j] = (st * bending_normal(p, sp, c.theta_a_s[j], c.theta_aaa_s[j])) * c.nrm_s[j] + f.F_s[j];
  }
  return f;
}

ForcePotentials force_potentials(const CurveSamples& c, const ForceParams& p) {
  const int n = c.size();
  const double sp = c.state.perimeter;
  const double tc = tension_coefficient(p);
  ForcePotentials fp;
  fp.A.resize(n);
  fp.B.resize(n);
  for (int j = 0; j < n; ++j) {
    const double ta = c.theta_a[j];
    fp.A[j] = tc * c.t[j] - (p.c1 / (sp * sp)) * (c.theta_aa[j] * c.nrm[j] + (0.5 * ta * ta) * c.t[j]);
    fp.B[j] = (p.c3 * (sp * (1.0 + c.ys[j]) - p.s_op)) * c.t_s[j];
  }
  return fp;
}

VelocityFields complete_velocity(const CurveSamples& c, VecField u_alpha, VecField u_s) {
  const int n = c.size();
  VelocityFields v;
  v.U.resize(n);
  Field q(n);
  for (int j = 0; j < n; ++j) {
    v.U[j] = ibs::dot(u_alpha[j], c.nrm[j]);
    q[j] = c.theta_a[j] * v.U[j];
  }
  v.T_bar = ibs::dot(u_alpha[0], c.t[0]);
  v.T = spectral::antiderivative(q);
  for (double& x : v.T) x += v.T_bar;
  v.u_alpha = std::move(u_alpha);
  v.u_s = std::move(u_s);
  return v;
}

VelocityFields curve_velocity(const CurveSamples& c, const ForceParams& p) {
  const int n = c.size();
  const ForcePotentials fp = force_potentials(c, p);
  const KernelTable ka = remainder_kernel(c, Coordinate::ArcLength, KernelKind::SourceDerivative);
  const KernelTable ks = remainder_kernel(c, Coordinate::Material, KernelKind::SourceDerivative);
  const VecField ha = hilbert(fp.A);
  const VecField hs = hilbert(fp.B);
  const VecField ra = ka.apply(fp.A);
  const VecField rs = ks.apply(fp.B);
  VecField ub(n);
  VecField us(n);
  for (int j = 0; j < n; ++j) {
    ub[j] = -0.25 * ha[j] + ra[j];
    us[j] = -0.25 * hs[j] + rs[j];
  }
  return assemble(c, ub, us);
}

VelocityFields curve_velocity(const CurveState& state, const ForceParams& params) {
  return curve_velocity(reconstruct_curve(state), params);
}

VelocityFields single_layer_velocity(const CurveSamples& c, const ForceParams& p) {
  const ForceDensity f = force_density(c, p);
  const VecField ub = single_layer(c.z, c.z_a, f.F_alpha);
  const VecField us = single_layer(c.X, c.X_s, f.F_s);
  return assemble(c, ub, us);
}

NormalDerivative normal_derivative_term(const CurveSamples& c, const ForceParams& p, bool dealias) {
  const int n = c.size();
  const double sp = c.state.perimeter;
  const double tc = tension_coefficient(p);
  const double bend = p.c1 / (sp * sp);

  Field a_t(n), stretch_n(n), tension_n(n), a_n(n);
  const Field ta3 = cube(c.theta_a, dealias);
  for (int j = 0; j < n; ++j) {
    const double st = 1.0 + c.ys_at_alpha[j];
    a_t[j] = p.c3 * sp * c.yss_at_alpha[j] / st;
    stretch_n[j] = p.c3 * (sp * st - p.s_op) * c.theta_a[j];
    tension_n[j] = tc * c.theta_a[j];
    a_n[j] = tension_n[j] - bend * (c.theta_aaa[j] + 0.5 * ta3[j]) + stretch_n[j];
  }

  NormalDerivative out;
  out.leading = spectral::hilbert(c.theta_aaa);
  for (double& v : out.leading) v *= 0.25 * bend;

  const Field c1 = projected_commutator(c.nrm, c.nrm, c.theta_aaa, dealias);
  const Field c2 = projected_commutator(c.t, c.nrm, a_t, dealias);
  const Field h1 = dot(c.nrm, hilbert(scaled(stretch_n, c.nrm, dealias)));
  const Field h2 = dot(c.nrm, hilbert(scaled(tension_n, c.nrm, dealias)));
  const Field h3 = dot(c.nrm, hilbert(scaled(ta3, c.nrm, dealias)));

  VecField density(n);
  for (int j = 0; j < n; ++j) density[j] = a_t[j] * c.t[j] + a_n[j] * c.nrm[j];
  const KernelTable kt = remainder_kernel(c, Coordinate::ArcLength, KernelKind::TargetDerivative);
  out.remainder = dot(c.nrm, kt.apply(density));

  out.commutator.resize(n);
  out.hilbert.resize(n);
  out.total.resize(n);
  for (int j = 0; j < n; ++j) {
    out.commutator[j] = 0.25 * bend * c1[j] - 0.25 * c2[j];
    out.hilbert[j] = -0.25 * h1[j] - 0.25 * h2[j] + 0.125 * bend * h3[j];
    out.total[j] = out.leading[j] + out.commutator[j] + out.hilbert[j] + out.remainder[j];
  }
  return out;
}

NormalDerivative tangential_derivative_term(const CurveSamples& c, const ForceParams& p, bool dealias) {
  const int n = c.size();
  const double sp = c.state.perimeter;
  const double tc = tension_coefficient(p);
  const double bend = p.c1 / (sp * sp);

  Field st(n), stretch_n(n), tension_n(n), third(n), b_n(n);
  const Field ta3 = cube(c.theta_a_s, dealias);
  Field cubic(n);
  for (int j = 0; j < n; ++j) {
    st[j] = 1.0 + c.ys[j];
    stretch_n[j] = p.c3 * (sp * st[j] - p.s_op) * st[j] * c.theta_a_s[j];
    tension_n[j] = tc * st[j] * c.theta_a_s[j];
    third[j] = st[j] * c.theta_aaa_s[j];
    cubic[j] = st[j] * ta3[j];
    b_n[j] = tension_n[j] - bend * (third[j] + 0.5 * cubic[j]) + stretch_n[j];
  }

  NormalDerivative out;
  out.leading = spectral::hilbert(c.yss);
  for (double& v : out.leading) v *= -0.25 * p.c3 * sp;

  const Field c1 = projected_commutator(c.t_s, c.t_s, c.yss, dealias);
  const Field c2 = projected_commutator(c.nrm_s, c.t_s, third, dealias);
  const Field h1 = dot(c.t_s, hilbert(scaled(stretch_n, c.nrm_s, dealias)));
  const Field h2 = dot(c.t_s, hilbert(scaled(tension_n, c.nrm_s, dealias)));
  const Field h3 = dot(c.t_s, hilbert(scaled(cubic, c.nrm_s, dealias)));

  VecField density(n);
  for (int j = 0; j < n; ++j) density[j] = (p.c3 * sp * c.yss[j]) * c.t_s[j] + b_n[j] * c.nrm_s[j];
  const KernelTable kt = remainder_kernel(c, Coordinate::Material, KernelKind::TargetDerivative);
  out.remainder = dot(c.t_s, kt.apply(density));

  out.commutator.resize(n);
  out.hilbert.resize(n);
  out.total.resize(n);
  for (int j = 0; j < n; ++j) {
    out.commutator[j] = -0.25 * p.c3 * sp * c1[j] + 0.25 * bend * c2[j];
    out.hilbert[j] = -0.25 * h1[j] - 0.25 * h2[j] + 0.125 * bend * h3[j];
    out.total[j] = out.leading[j] + out.commutator[j] + out.hilbert[j] + out.remainder[j];
  }
  return out;
}

}  // namespace ibs
