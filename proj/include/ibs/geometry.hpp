#pragma once

#include <memory>

#include "ibs/spectral.hpp"
#include "ibs/vec2.hpp"

namespace ibs {

struct CurveState {
  int n = 0;
  Field D;                // oscillation of theta - alpha on the alpha-grid
  double mean_angle = 0;  // theta bar
  Field ys;               // stretching on the s-grid
  double perimeter = 1;   // length / 2pi
  Vec2 base_point{};
  double time = 0;

  static CurveState equilibrium(int n);
  // Throws InvalidArgument on size mismatch, nonpositive perimeter or non-finite data.
  void validate() const;
};

struct ForceParams {
  double c1 = 1.0;
  double c3 = 1.0;
  double lambda = 0.0;
  double B = 0.0;
  double s_op = 0.0;

  void validate() const;
};

struct TransferMap {
  Field y;      // y(s_j), y(-pi) = 0
  Field alpha;  // alpha(s_j) = s_j + y(s_j)
};

TransferMap build_transfer_map(const Field& ys);
// s(alpha_i) for each target, with alpha(s(alpha_i)) = alpha_i.
Field invert_transfer(const Field& ys, const Field& targets);

struct CurveSamples {
  CurveState state;

  // alpha-grid
  Field alpha;
  Field theta, theta_a, theta_aa, theta_aaa;
  Field kappa;
  VecField t, nrm;
  VecField z, z_a, z_aa;
  Vec2 closure;  // int (cos theta, sin theta) d alpha

  // s-grid; theta quantities are evaluated at alpha(s)
  Field s;
  Field y, alpha_of_s;
  Field ys, yss;
  Field theta_s, theta_a_s, theta_aa_s, theta_aaa_s;
  VecField t_s, nrm_s;
  VecField X, X_s, X_ss;

  // s-grid quantities transferred to the alpha-grid at s(alpha_i)
  Field s_of_alpha;
  Field ys_at_alpha, yss_at_alpha;

  // Interpolation from the alpha-grid to alpha(s_j) and from the s-grid to s(alpha_i).
  std::shared_ptr<const spectral::OffGridBasis> to_material;
  std::shared_ptr<const spectral::OffGridBasis> to_arclength;

  int size() const { return state.n; }
};

CurveSamples reconstruct_curve(const CurveState& state);

// z on the alpha-grid only.
VecField reconstruct_z(const CurveState& state);

Vec2 closure_vector(const CurveState& state);
double closure_defect(const CurveState& state);

struct Margins {
  double beta1 = 0;
  double beta2 = 0;
};
Margins wellposedness_margins(const CurveState& state);

double enclosed_area(const CurveState& state);
double enclosed_area(const VecField& z, const VecField& z_a);

// Raw fields are sampled on an n-grid; theta_minus_alpha is periodic.
CurveState normalize_initial_data(const Field& theta_minus_alpha, const Field& ys, double target_area);

}  // namespace ibs
