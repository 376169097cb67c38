#include "learnsim/experiments.hpp"

#include <array>
#include <charconv>
#include <string>

#include "learnsim/errors.hpp"

namespace learnsim {
namespace {

std::string label_of(std::string_view name, double value) {
  return std::string(name) + "=" + std::to_string(value);
}

// 1-based category index from "alpha3" / "gamma12"; 0 when malformed.
std::size_t category_suffix(std::string_view path, std::string_view prefix) {
  if (path.size() <= prefix.size() || path.substr(0, prefix.size()) != prefix) return 0;
  const auto digits = path.substr(prefix.size());
  std::size_t index = 0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || end != digits.data() + digits.size()) return 0;
  return index;
}

double* scalar_field(SimConfig& config, std::string_view path) {
  ModelParams& p = config.params;
  if (path == "b") return &p.b;
  if (path == "k1") return &p.k1;
  if (path == "P0") return &p.P0;
  if (path == "k2") return &p.k2;
  if (path == "k3") return &p.k3;
  if (path == "k4") return &p.k4;
  if (path == "dt") return &config.dt;
  const auto n = static_cast<std::size_t>(p.n);
  if (auto i = category_suffix(path, "alpha"); i >= 1 && i <= n && i <= p.alpha.size()) {
    return &p.alpha[i - 1];
  }
  if (auto i = category_suffix(path, "gamma"); i >= 1 && i <= n && i <= p.gamma.size()) {
    return &p.gamma[i - 1];
  }
  return nullptr;
}

}  // namespace

SimConfig pr1_config() {
  SimConfig config;
  config.params.n = 2;
  config.params.b = 0.0;
  config.params.alpha = {0.06, 0.002};
  config.params.gamma = {0.001, 5e-5};
  config.params.k1 = 0.03;
  config.params.P0 = 200.0;
  config.params.k2 = 0.2;
  config.params.k3 = 0.015;
  config.params.k4 = 2e-4;

  const std::array<EffortSpec, 5> efforts{ConstantEffort{3.0}, ConstantEffort{3.0},
                                          ConstantEffort{3.0}, ConstantEffort{3.0},
                                          ConstantEffort{3.0}};
  const std::array<double, 5> complexities{0.0, 0.0, 0.2, 0.3, 0.4};
  config.schedule = uniform_day(5, 300.0, 100.0, efforts, complexities);
  config.initial = initial_state({0.0, 0.0}, 1.0);
  config.dt = 0.01;
  config.method = Method::Euler;
  config.record_stride = 100;
  return config;
}

Trajectory replicate_pr1() { return run(pr1_config()); }

ScenarioResult summarize(const Trajectory& trajectory, std::string label, double value) {
  ScenarioResult result;
  result.label = std::move(label);
  result.value = value;
  const TrajectoryRow& last = trajectory.rows.back();
  result.Z_total = last.Z_total;
  result.Pr = last.Pr;

  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : trajectory.rows) {
    if (trajectory.config.schedule[row.segment].is_lesson()) {
      sum += row.r;
      ++count;
    }
  }
  result.mean_lesson_r = count > 0 ? sum / static_cast<double>(count) : 0.0;
  return result;
}

StudyResult break_length_study(const SimConfig& base, std::span<const double> tp_values,
                               bool keep_trajectories) {
  std::vector<std::string> problems;
  for (double tp : tp_values) {
    if (!(tp > 0.0)) {
      problems.push_back("Tp=" + std::to_string(tp) + ": must be > 0");
      continue;
    }
    Schedule probe({Segment{Break{}, tp}});
    for (auto& d : validate(probe, base.dt)) problems.push_back("Tp=" + std::to_string(tp) + ": " + d);
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  StudyResult study{"break_length", {}};
  for (double tp : tp_values) {
    std::vector<Segment> segments = base.schedule.segments();
    for (auto& seg : segments) {
      if (!seg.is_lesson()) seg.duration = tp;
    }
    SimConfig config = base;
    config.schedule = Schedule(std::move(segments));
    Trajectory traj = run(config);
    ScenarioResult row = summarize(traj, label_of("Tp", tp), tp);
    if (keep_trajectories) row.trajectory = std::move(traj);
    study.scenarios.push_back(std::move(row));
  }
  return study;
}

bool is_parameter_path(std::string_view path, const SimConfig& base) {
  SimConfig copy = base;
  return scalar_field(copy, path) != nullptr;
}

SimConfig with_parameter(const SimConfig& base, std::string_view path, double value) {
  SimConfig config = base;
  double* field = scalar_field(config, path);
  if (field == nullptr) throw ValidationError("unknown parameter path '" + std::string(path) + "'");
  *field = value;
  return config;
}

StudyResult parameter_sweep(const SimConfig& base, std::string_view path,
                            std::span<const double> values, bool keep_trajectories) {
  if (!is_parameter_path(path, base)) {
    throw ValidationError("unknown parameter path '" + std::string(path) + "'");
  }
  StudyResult study{"sweep:" + std::string(path), {}};
  for (double value : values) {
    const SimConfig config = with_parameter(base, path, value);
    std::string label = label_of(path, value);
    if (auto problems = config.validate(); !problems.empty()) {
      ScenarioResult bad;
      bad.label = std::move(label);
      bad.value = value;
      bad.ok = false;
      bad.diagnostic = ValidationError(std::move(problems)).what();
      study.scenarios.push_back(std::move(bad));
      continue;
    }
    Trajectory traj = run(config);
    ScenarioResult row = summarize(traj, std::move(label), value);
    if (keep_trajectories) row.trajectory = std::move(traj);
    study.scenarios.push_back(std::move(row));
  }
  return study;
}

UOptimum optimize_constant_u(const SimConfig& base, double u_min, double u_max, int grid,
                             Objective objective) {
  if (!(u_min >= 0.0 && u_min < u_max)) {
    throw ValidationError("optimize-u: need 0 <= u_min < u_max");
  }
  if (grid < 2) throw ValidationError("optimize-u: grid must have at least 2 points");

  UOptimum best;
  best.evaluations.reserve(static_cast<std::size_t>(grid));
  const double span = u_max - u_min;
  for (int k = 0; k < grid; ++k) {
    const double U = k + 1 == grid ? u_max : u_min + span * k / (grid - 1);
    std::vector<Segment> segments = base.schedule.segments();
    for (auto& seg : segments) {
      if (seg.is_lesson()) std::get<Lesson>(seg.kind).effort = RequirementEffort{U};
    }
    SimConfig config = base;
    config.schedule = Schedule(std::move(segments));
    config.record_stride = static_cast<std::size_t>(1) << 40;  // only the endpoints are needed
    const Trajectory traj = run(config);
    const TrajectoryRow& last = traj.rows.back();
    const double value = objective == Objective::TerminalZ ? last.Z_total : last.Pr;
    best.evaluations.push_back({U, value});
    // Strict comparison keeps the smallest U among ties.
    if (k == 0 || value > best.value) {
      best.U = U;
      best.value = value;
    }
  }
  return best;
}

}  // namespace learnsim
