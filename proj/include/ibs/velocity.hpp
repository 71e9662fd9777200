#pragma once

#include "ibs/geometry.hpp"
#include "ibs/kernels.hpp"

namespace ibs {

struct ForceDensity {
  VecField F_alpha;  // bending and tension, per d(alpha), alpha-grid
  VecField F_s;      // stretching, per ds, s-grid
  VecField F;        // combined, per ds, s-grid
};

ForceDensity force_density(const CurveSamples& curve, const ForceParams& params);

// Fields whose derivatives are the force parts: d/d(alpha) A = F_alpha, d/ds B = F_s.
struct ForcePotentials {
  VecField A;  // alpha-grid
  VecField B;  // s-grid
};

ForcePotentials force_potentials(const CurveSamples& curve, const ForceParams& params);

struct VelocityFields {
  VecField u_alpha;
  VecField u_s;
  Field U;  // u.n on the alpha-grid
  Field T;  // tangential reparametrization velocity on the alpha-grid
  double T_bar = 0;
};

// Hilbert extraction plus smooth remainder quadrature of the derivative form.
VelocityFields curve_velocity(const CurveSamples& curve, const ForceParams& params);
VelocityFields curve_velocity(const CurveState& state, const ForceParams& params);

// Log-split quadrature of the single-layer form; independent cross-check.
VelocityFields single_layer_velocity(const CurveSamples& curve, const ForceParams& params);

// Completes U, T and T_bar from u on both grids.
VelocityFields complete_velocity(const CurveSamples& curve, VecField u_alpha, VecField u_s);

// d(alpha) u . n split as leading + commutator + hilbert + remainder on the alpha-grid.
struct NormalDerivative {
  Field leading;     // (c1/(4 s^2)) H(theta_aaa)
  Field commutator;  // [H, n] and [H, t] terms
  Field hilbert;     // H(f n) terms with non-principal coefficients
  Field remainder;   // smooth kernel integral
  Field total;
};

NormalDerivative normal_derivative_term(const CurveSamples& curve, const ForceParams& params, bool dealias = true);

// d_s u . t on the s-grid, split the same way; leading is -(c3 s/4) h(y_ss).
NormalDerivative tangential_derivative_term(const CurveSamples& curve, const ForceParams& params,
                                            bool dealias = true);

}  // namespace ibs
