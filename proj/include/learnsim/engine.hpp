#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "learnsim/model.hpp"
#include "learnsim/schedule.hpp"

namespace learnsim {

enum class Method { Euler, RK4 };

struct SimConfig {
  ModelParams params;
  Schedule schedule;
  SimState initial;
  double dt = 0.01;
  Method method = Method::Euler;
  std::size_t record_stride = 1;

  std::vector<std::string> validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Initial state at t = 0 with no accumulated work and r = r0.
SimState initial_state(std::vector<double> Z, double r0);

struct TrajectoryRow {
  double t = 0.0;
  std::vector<double> Z;
  double Z_total = 0.0;
  double r = 0.0;
  double P = 0.0;
  double F = 0.0;
  double Pr = 0.0;
  std::size_t segment = 0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  SimConfig config;

  std::size_t categories() const noexcept { return static_cast<std::size_t>(config.params.n); }
};

/// Advances one dt inside `segment`.
///
/// Euler follows the original program's statement order: during a lesson
/// P is advanced first, r is taken from the new P, then each category is
/// updated in turn from the already-updated category before it. During a
/// break the clock advances first and the recovery ceiling is evaluated at
/// the new time. RK4 integrates (Z, P) in lessons with r = workability(P)
/// and (Z, r) in breaks.
SimState step(const SimState& state, const Segment& segment, double dt, const ModelParams& params,
              Method method);

/// Side effects at a segment join: a break zeroes P; a lesson after a
/// break restarts fatigue from the recovered workability.
SimState apply_transition(const SimState& state, const Segment& from, const Segment& to);

/// Runs the whole schedule. Throws ValidationError for an invalid config.
Trajectory run(const SimConfig& config);

}  // namespace learnsim
