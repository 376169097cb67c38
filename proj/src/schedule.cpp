#include "learnsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "learnsim/errors.hpp"

namespace learnsim {

Schedule::Schedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
  starts_.reserve(segments_.size());
  for (const auto& seg : segments_) {
    starts_.push_back(total_);
    total_ += seg.duration;
  }
}

Schedule::Position Schedule::segment_at(double t) const {
  if (!(t >= 0.0 && t < total_)) {
    throw ValidationError("time " + std::to_string(t) + " outside schedule [0, " +
                          std::to_string(total_) + ")");
  }
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  const auto index = static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
  return {index, t - starts_[index]};
}

Schedule uniform_day(int n_lessons, double Tu, double Tp, std::span<const EffortSpec> efforts,
                     std::span<const double> complexities) {
  std::vector<std::string> problems;
  if (n_lessons < 1) problems.push_back("uniform_day: need at least one lesson");
  if (!(Tu > 0.0)) problems.push_back("uniform_day: lesson duration must be > 0");
  if (!(Tp > 0.0)) problems.push_back("uniform_day: break duration must be > 0");
  if (n_lessons >= 1 && efforts.size() != static_cast<std::size_t>(n_lessons)) {
    problems.push_back("uniform_day: expected " + std::to_string(n_lessons) + " efforts, got " +
                       std::to_string(efforts.size()));
  }
  if (n_lessons >= 1 && complexities.size() != static_cast<std::size_t>(n_lessons)) {
    problems.push_back("uniform_day: expected " + std::to_string(n_lessons) +
                       " complexities, got " + std::to_string(complexities.size()));
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  std::vector<Segment> segments;
  for (int i = 0; i < n_lessons; ++i) {
    if (i > 0) segments.push_back({Break{}, Tp});
    const auto k = static_cast<std::size_t>(i);
    segments.push_back({Lesson{efforts[k], complexities[k]}, Tu});
  }
  return Schedule(std::move(segments));
}

long long step_count(double duration, double dt) {
  return std::llround(duration / dt);
}

std::vector<std::string> validate(const Schedule& schedule, double dt) {
  std::vector<std::string> out;
  if (!(dt > 0.0)) {
    out.push_back("dt: must be > 0");
    return out;
  }
  if (schedule.empty()) {
    out.push_back("schedule: must contain at least one segment");
    return out;
  }
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const Segment& seg = schedule[i];
    const std::string where = "schedule[" + std::to_string(i) + "]";
    if (!(seg.duration > 0.0)) {
      out.push_back(where + ".duration: must be > 0");
      continue;
    }
    const double steps = seg.duration / dt;
    const double nearest = std::round(steps);
    if (nearest < 1.0 || std::abs(steps - nearest) > 1e-9 * steps) {
      out.push_back(where + ".duration: " + std::to_string(seg.duration) +
                    " is not a whole number of dt=" + std::to_string(dt) + " steps");
    }
    if (seg.is_lesson()) {
      const Lesson& lesson = seg.lesson();
      if (!(lesson.S >= 0.0 && lesson.S < 1.0)) out.push_back(where + ".S: must lie in [0, 1)");
      if (const auto* c = std::get_if<ConstantEffort>(&lesson.effort)) {
        if (!(c->F > 0.0)) out.push_back(where + ".effort.F: must be > 0");
      } else if (!(std::get<RequirementEffort>(lesson.effort).U >= 0.0)) {
        out.push_back(where + ".effort.U: must be >= 0");
      }
    }
  }
  return out;
}

}  // namespace learnsim
