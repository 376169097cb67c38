#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "learnsim/engine.hpp"

namespace learnsim {

struct ScenarioResult {
  std::string label;
  double value = 0.0;  // the swept value (Tp, parameter value, U)
  bool ok = true;
  std::string diagnostic;
  double Z_total = 0.0;
  double Pr = 0.0;
  double mean_lesson_r = 0.0;
  std::optional<Trajectory> trajectory;
};

struct StudyResult {
  std::string label;
  std::vector<ScenarioResult> scenarios;
};

/// Two-component school day of the original program: five 300-unit lessons,
/// 100-unit breaks, F = 3, S = 0, 0, 0.2, 0.3, 0.4, Euler with dt = 0.01,
/// recorded every 100 steps.
SimConfig pr1_config();
Trajectory replicate_pr1();

/// Terminal metrics of a finished run.
ScenarioResult summarize(const Trajectory& trajectory, std::string label, double value);

/// Reruns `base` with every break lasting each Tp in turn.
StudyResult break_length_study(const SimConfig& base, std::span<const double> tp_values,
                               bool keep_trajectories = false);

/// Scalar paths: b, k1, P0, k2, k3, k4, dt, alphaN, gammaN (1-based N).
bool is_parameter_path(std::string_view path, const SimConfig& base);
SimConfig with_parameter(const SimConfig& base, std::string_view path, double value);

/// One run per value. Unknown paths throw; values that break an invariant
/// produce a row with ok = false and the diagnostic.
StudyResult parameter_sweep(const SimConfig& base, std::string_view path,
                            std::span<const double> values, bool keep_trajectories = false);

enum class Objective { TerminalZ, TerminalPr };

struct GridPoint {
  double U = 0.0;
  double value = 0.0;
};

struct UOptimum {
  double U = 0.0;
  double value = 0.0;
  std::vector<GridPoint> evaluations;
};

/// Switches every lesson to Requirement(U) and grid-searches U over
/// [u_min, u_max] (grid points, endpoints included). Ties go to the
/// smallest U.
UOptimum optimize_constant_u(const SimConfig& base, double u_min, double u_max, int grid,
                             Objective objective);

}  // namespace learnsim
