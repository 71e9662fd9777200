#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ibs/diagnostics.hpp"
#include "ibs/geometry.hpp"
#include "ibs/velocity.hpp"

namespace ibs {

enum class Scheme { ImexEuler, ImexBdf2 };

struct AbortMargins {
  double beta1_min = 0.05;
  double beta2_min = 0.05;
  double defect_max = 1e-4;
};

struct SimConfig {
  int n = 256;
  double dt = 1e-3;
  double t_final = 1.0;
  Scheme scheme = Scheme::ImexEuler;
  bool dealias = true;
  int output_every = 10;
  int snapshot_every = 0;  // 0: first and last only
  std::string preset = "equilibrium";
  ForceParams params;
  double epsilon = 0.01;
  int mode_k = 2;
  unsigned seed = 0;
  std::string out_dir = "out";
  AbortMargins margins;
  // When false the right-hand sides keep their means and only the state is projected.
  bool project_rhs = true;

  void validate() const;
};

struct RhsBundle {
  Field g_theta;
  Field g_y;
  double s_dot = 0;
  double mean_angle_dot = 0;
  Vec2 base_velocity{};
  std::array<double, 2> projected_means{};
};

struct ScalarRates {
  double s_dot = 0;
  double mean_angle_dot = 0;
  Vec2 base_velocity{};
};

ScalarRates scalar_rates(const CurveSamples& curve, const VelocityFields& velocity);

// Mean-free; the subtracted residual mean (after removing mean_angle_dot) goes to projected_mean.
Field g_theta(const CurveSamples& curve, const VelocityFields& velocity, const ForceParams& params, bool dealias = true,
              double* projected_mean = nullptr);
Field g_y(const CurveSamples& curve, const VelocityFields& velocity, const ForceParams& params, double s_dot,
          bool dealias = true, double* projected_mean = nullptr);

// Right-hand sides from their defining formulas: spectral derivative of u, minus the principal part.
Field g_theta_direct(const CurveSamples& curve, const VelocityFields& velocity, const ForceParams& params);
Field g_y_direct(const CurveSamples& curve, const VelocityFields& velocity, const ForceParams& params);

// L theta = (c1/(4 s^3)) H(theta_aaa) and L y = -(c3/4) h(y_ss).
Field bending_principal(const CurveState& state, const ForceParams& params);
Field stretching_principal(const CurveState& state, const ForceParams& params);

struct Evaluation {
  CurveSamples curve;
  VelocityFields velocity;
  RhsBundle rhs;
};

Evaluation evaluate(const CurveState& state, const ForceParams& params, bool dealias = true, bool project_rhs = true);

// Previous level for the two-step scheme.
struct StepHistory {
  bool valid = false;
  CurveState state;
  RhsBundle rhs;
};

CurveState advance(const CurveState& state, const RhsBundle& rhs, const SimConfig& config,
                   StepHistory* history = nullptr);
CurveState time_step(const CurveState& state, const SimConfig& config, StepHistory* history = nullptr);

// Throws MarginError or NumericalBreakdown when the state leaves the admissible set.
Margins check_state(const CurveState& state, const AbortMargins& margins);

enum class Termination { Completed, MarginAbort, NanAbort };
const char* termination_name(Termination t);

struct RunCallbacks {
  std::function<void(long step, const CurveState&, const DiagnosticsRecord&)> on_record;
  std::function<void(long step, const CurveState&)> on_snapshot;
};

struct RunResult {
  CurveState final_state;
  std::vector<DiagnosticsRecord> records;
  std::vector<std::array<double, 2>> projected_means;  // one entry per evaluated step
  Termination termination = Termination::Completed;
  std::string message;
  long steps = 0;
};

RunResult run_simulation(const CurveState& initial, const SimConfig& config, const RunCallbacks& callbacks = {});

}  // namespace ibs
