#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "learnsim/model.hpp"

namespace learnsim {

/// Ordered lesson/break timeline. Holds whatever it is given; call
/// validate() before simulating.
class Schedule {
public:
  Schedule() = default;
  explicit Schedule(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }

  double total_duration() const noexcept { return total_; }
  /// Start time of segment i.
  double start_of(std::size_t i) const { return starts_.at(i); }

  struct Position {
    std::size_t index = 0;
    double local_t = 0.0;
  };

  /// Segment containing t; instants on a join belong to the later segment.
  Position segment_at(double t) const;

  bool operator==(const Schedule& other) const { return segments_ == other.segments_; }

private:
  std::vector<Segment> segments_;
  std::vector<double> starts_;
  double total_ = 0.0;
};

/// n_lessons equal lessons separated by equal breaks, no trailing break.
Schedule uniform_day(int n_lessons, double Tu, double Tp, std::span<const EffortSpec> efforts,
                     std::span<const double> complexities);

/// Diagnostics for an empty schedule, bad durations or S, and durations
/// that are not whole multiples of dt.
std::vector<std::string> validate(const Schedule& schedule, double dt);

/// Number of dt steps in `duration`, assuming validate() passed.
long long step_count(double duration, double dt);

}  // namespace learnsim
