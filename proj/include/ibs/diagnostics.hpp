#pragma once

#include <array>
#include <vector>

#include "ibs/geometry.hpp"
#include "ibs/velocity.hpp"

namespace ibs {

struct DiagnosticsRecord {
  double t = 0;
  double energy = 0;
  double dissipation = 0;
  double area = 0;
  double perimeter = 0;
  double closure_defect = 0;
  double beta1 = 0;
  double beta2 = 0;
  double H1 = 0, H2 = 0, H2_5 = 0;  // theta - alpha
  double h0 = 0, h1_5 = 0;          // y_s
  std::array<double, 5> a{};        // a_k(D), k = 1..4 at index k
  std::array<double, 5> b{};
  double fuglede = 0;
  double gage = 0;  // NaN when the curve is not convex
};

double energy(const CurveState& state, const ForceParams& params);

// Boundary pairing of u with the force.
double dissipation_rate(const CurveSamples& curve, const VelocityFields& velocity, const ForceParams& params);

// Hilbert closed form of the linearized velocity about the unit circle.
VecField linearized_velocity(const Field& D, const Field& y_alpha, double perimeter, double lambda);

// Mode-sum form; max_imaginary receives the largest imaginary residue of the sum.
VecField linearized_velocity_modes(const Field& D, const Field& y_alpha, double perimeter, double lambda,
                                   double* max_imaginary = nullptr);

double linearization_error(const CurveState& state, const ForceParams& params);

struct IsoperimetricChecks {
  double gage_value = 0;
  bool gage_applicable = false;
  double fuglede_ratio = 0;
  double first_mode_ratio = 0;
  double perimeter_gap = 0;
  double perimeter_gap_bound = 0;
};

IsoperimetricChecks isoperimetric_checks(const CurveState& state);

struct DecayFit {
  double gamma = 0;
  double r2 = 0;
};

// Least squares of log(value) against t over indices [begin, end).
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& value, std::size_t begin,
                   std::size_t end);

struct LimitCircleFit {
  Vec2 center{};
  double phase = 0;
  double radius = 0;
  double residual = 0;
};

LimitCircleFit limit_circle(const CurveSamples& curve);
LimitCircleFit limit_circle(const CurveState& state);

DiagnosticsRecord diagnostics_record(const CurveSamples& curve, const VelocityFields& velocity,
                                     const ForceParams& params, const Margins& margins);
DiagnosticsRecord diagnose_state(const CurveState& state, const ForceParams& params);

}  // namespace ibs
