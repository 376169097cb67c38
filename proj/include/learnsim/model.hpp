#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace learnsim {

/// Rate constants of the n-category learning model.
///
/// alpha[0] feeds category 1 from effort; alpha[i] (i >= 1) transfers
/// category i into category i+1. gamma holds the forgetting rates, which
/// must strictly decrease towards the most durable category.
struct ModelParams {
  int n = 1;
  double b = 0.0;  // knowledge exponent in Z^b
  std::vector<double> alpha{0.06};
  std::vector<double> gamma{0.001};
  double k1 = 0.03;   // fatigue sigmoid steepness
  double P0 = 200.0;  // work at which workability halves
  double k2 = 0.2;    // work accumulation rate
  double k3 = 0.015;  // recovery rate during breaks
  double k4 = 2e-4;   // decay rate of the daily workability ceiling

  /// Empty when every invariant holds.
  std::vector<std::string> validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Instantaneous simulator state.
struct SimState {
  double t = 0.0;
  std::vector<double> Z;
  double r = 1.0;
  double r0_base = 1.0;  // workability on entry to the current lesson
  double P = 0.0;        // work done in the current lesson

  std::vector<std::string> validate(const ModelParams& params) const;

  bool operator==(const SimState&) const = default;
};

struct ConstantEffort {
  double F = 0.0;
  bool operator==(const ConstantEffort&) const = default;
};

struct RequirementEffort {
  double U = 0.0;
  bool operator==(const RequirementEffort&) const = default;
};

using EffortSpec = std::variant<ConstantEffort, RequirementEffort>;

struct Lesson {
  EffortSpec effort;
  double S = 0.0;  // subjective complexity, [0, 1)
  bool operator==(const Lesson&) const = default;
};

struct Break {
  bool operator==(const Break&) const = default;
};

struct Segment {
  std::variant<Lesson, Break> kind;
  double duration = 0.0;

  bool is_lesson() const noexcept { return std::holds_alternative<Lesson>(kind); }
  const Lesson& lesson() const { return std::get<Lesson>(kind); }

  bool operator==(const Segment&) const = default;
};

double effort(const EffortSpec& spec, double z_total);

/// r0_base / (1 + exp(k1 (P - P0))). Saturates to 0 for very large P.
double workability(double r0_base, double work, const ModelParams& params);

/// Work accumulation rate: k2 (1 + S) F while F > 0, k2 otherwise.
double work_rate(double F, double S, const ModelParams& params);

/// Knowledge rates of the lesson phase for given effort F and workability r.
/// Writes n values into `out`.
void knowledge_rates(std::span<const double> Z, double F, double S, double r,
                     const ModelParams& params, std::span<double> out);

struct LessonRates {
  std::vector<double> dZ;
  double dP = 0.0;
};

/// Right-hand side during a lesson. Throws ValidationError when S is
/// outside [0, 1).
LessonRates lesson_derivatives(const SimState& state, const EffortSpec& spec, double S,
                               const ModelParams& params);

struct BreakRates {
  std::vector<double> dZ;
  double dr = 0.0;
};

/// Right-hand side during a break; the ceiling exp(-k4 t) uses state.t.
BreakRates break_derivatives(const SimState& state, const ModelParams& params);

double total_knowledge(std::span<const double> Z);

/// Weighted share of durable knowledge, sum_{i>=2} Z_i / 2^(n-i) over Z.
/// 0 for an empty store, 1 for a single-category chain.
double strength_coefficient(std::span<const double> Z);

/// Forgetting rate from the e-folding time tau.
double gamma_from_tau(double tau);

}  // namespace learnsim
