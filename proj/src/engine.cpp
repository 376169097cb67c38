#include "learnsim/engine.hpp"

#include <cmath>

#include "learnsim/errors.hpp"

namespace learnsim {
namespace {

// In-place integrator with reusable stage buffers; run() performs
// hundreds of thousands of steps and should not allocate per step.
class Stepper {
public:
  Stepper(const ModelParams& params, std::size_t n) : params_(params) {
    for (auto* buf : {&y_, &k1_, &k2_, &k3_, &k4_, &tmp_}) buf->resize(n + 1);
  }

  void advance(SimState& s, const Segment& seg, double dt, Method method) {
    if (seg.is_lesson()) {
      const Lesson& lesson = seg.lesson();
      if (method == Method::Euler) {
        euler_lesson(s, lesson, dt);
      } else {
        rk4_lesson(s, lesson, dt);
      }
      s.r = workability(s.r0_base, s.P, params_);
    } else {
      if (method == Method::Euler) {
        euler_break(s, dt);
      } else {
        rk4_break(s, dt);
      }
      s.P = 0.0;
      s.r0_base = s.r;
    }
    s.t += dt;
  }

private:
  void euler_lesson(SimState& s, const Lesson& lesson, double dt) {
    const auto& a = params_.alpha;
    const auto& g = params_.gamma;
    const std::size_t n = s.Z.size();
    const double z_total = total_knowledge(s.Z);
    const double F = effort(lesson.effort, z_total);
    const double S = lesson.S;

    s.P += work_rate(F, S, params_) * dt;
    const double r = workability(s.r0_base, s.P, params_);
    const double gain = r * (1.0 - S);

    // Category i sees the freshly updated category i-1.
    double inflow = a[0] * F * std::pow(z_total, params_.b);
    for (std::size_t i = 0; i < n; ++i) {
      const double zi = s.Z[i];
      const double outflow = i + 1 < n ? a[i + 1] * zi : 0.0;
      s.Z[i] = zi + gain * (inflow - outflow) * dt - g[i] * zi * dt;
      if (i + 1 < n) inflow = a[i + 1] * s.Z[i];
    }
  }

  void euler_break(SimState& s, double dt) {
    const double t_end = s.t + dt;
    s.r = s.r + params_.k3 * (std::exp(-params_.k4 * t_end) - s.r) * dt;
    for (std::size_t i = 0; i < s.Z.size(); ++i) s.Z[i] -= params_.gamma[i] * s.Z[i] * dt;
  }

  // y = (Z_1..Z_n, P)
  void lesson_rhs(const std::vector<double>& y, const Lesson& lesson, double r0_base,
                  std::vector<double>& out) const {
    const std::size_t n = y.size() - 1;
    const std::span<const double> Z(y.data(), n);
    const double F = effort(lesson.effort, total_knowledge(Z));
    const double r = workability(r0_base, y[n], params_);
    knowledge_rates(Z, F, lesson.S, r, params_, std::span<double>(out.data(), n));
    out[n] = work_rate(F, lesson.S, params_);
  }

  // y = (Z_1..Z_n, r)
  void break_rhs(const std::vector<double>& y, double t, std::vector<double>& out) const {
    const std::size_t n = y.size() - 1;
    for (std::size_t i = 0; i < n; ++i) out[i] = -params_.gamma[i] * y[i];
    out[n] = params_.k3 * (std::exp(-params_.k4 * t) - y[n]);
  }

  template <typename Rhs>
  void rk4(double dt, Rhs&& rhs) {
    const std::size_t m = y_.size();
    rhs(y_, 0.0, k1_);
    for (std::size_t i = 0; i < m; ++i) tmp_[i] = y_[i] + 0.5 * dt * k1_[i];
    rhs(tmp_, 0.5 * dt, k2_);
    for (std::size_t i = 0; i < m; ++i) tmp_[i] = y_[i] + 0.5 * dt * k2_[i];
    rhs(tmp_, 0.5 * dt, k3_);
    for (std::size_t i = 0; i < m; ++i) tmp_[i] = y_[i] + dt * k3_[i];
    rhs(tmp_, dt, k4_);
    for (std::size_t i = 0; i < m; ++i) {
      y_[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

  void rk4_lesson(SimState& s, const Lesson& lesson, double dt) {
    const std::size_t n = s.Z.size();
    std::copy(s.Z.begin(), s.Z.end(), y_.begin());
    y_[n] = s.P;
    const double r0 = s.r0_base;
    rk4(dt, [&](const std::vector<double>& y, double, std::vector<double>& out) {
      lesson_rhs(y, lesson, r0, out);
    });
    std::copy(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(n), s.Z.begin());
    s.P = y_[n];
  }

  void rk4_break(SimState& s, double dt) {
    const std::size_t n = s.Z.size();
    std::copy(s.Z.begin(), s.Z.end(), y_.begin());
    y_[n] = s.r;
    const double t0 = s.t;
    rk4(dt, [&](const std::vector<double>& y, double offset, std::vector<double>& out) {
      break_rhs(y, t0 + offset, out);
    });
    std::copy(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(n), s.Z.begin());
    s.r = y_[n];
  }

  const ModelParams& params_;
  std::vector<double> y_, k1_, k2_, k3_, k4_, tmp_;
};

TrajectoryRow make_row(const SimState& s, const Segment& seg, std::size_t index) {
  TrajectoryRow row;
  row.t = s.t;
  row.Z = s.Z;
  row.Z_total = total_knowledge(s.Z);
  row.r = s.r;
  row.P = s.P;
  row.F = seg.is_lesson() ? effort(seg.lesson().effort, row.Z_total) : 0.0;
  row.Pr = strength_coefficient(s.Z);
  row.segment = index;
  return row;
}

}  // namespace

std::vector<std::string> SimConfig::validate() const {
  auto out = params.validate();
  if (out.empty()) {
    for (auto& d : initial.validate(params)) out.push_back(std::move(d));
  }
  for (auto& d : learnsim::validate(schedule, dt)) out.push_back(std::move(d));
  if (initial.t != 0.0) out.push_back("initial.t: runs start at t = 0");
  if (record_stride < 1) out.push_back("record_stride: must be >= 1");
  return out;
}

SimState initial_state(std::vector<double> Z, double r0) {
  SimState s;
  s.Z = std::move(Z);
  s.r = r0;
  s.r0_base = r0;
  return s;
}

SimState step(const SimState& state, const Segment& segment, double dt, const ModelParams& params,
              Method method) {
  if (!(dt > 0.0)) throw ValidationError("step: dt must be > 0");
  SimState next = state;
  Stepper(params, state.Z.size()).advance(next, segment, dt, method);
  return next;
}

SimState apply_transition(const SimState& state, const Segment& from, const Segment& to) {
  SimState next = state;
  if (!to.is_lesson()) {
    next.P = 0.0;
  } else if (!from.is_lesson()) {
    next.r0_base = state.r;
    next.P = 0.0;
  }
  return next;
}

Trajectory run(const SimConfig& config) {
  if (auto problems = config.validate(); !problems.empty()) {
    throw ValidationError(std::move(problems));
  }
  const Schedule& schedule = config.schedule;
  const double dt = config.dt;

  long long total_steps = 0;
  for (const auto& seg : schedule.segments()) total_steps += step_count(seg.duration, dt);

  Trajectory traj;
  traj.config = config;
  traj.rows.reserve(static_cast<std::size_t>(total_steps) / config.record_stride + 2);

  SimState state = config.initial;
  traj.rows.push_back(make_row(state, schedule[0], 0));

  Stepper stepper(config.params, state.Z.size());
  const auto stride = static_cast<long long>(config.record_stride);
  long long k = 0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const Segment& seg = schedule[i];
    if (i > 0) state = apply_transition(state, schedule[i - 1], seg);
    const long long steps = step_count(seg.duration, dt);
    for (long long j = 0; j < steps; ++j) {
      stepper.advance(state, seg, dt, config.method);
      ++k;
      state.t = static_cast<double>(k) * dt;  // no drift from repeated addition
      if (k % stride == 0 || k == total_steps) traj.rows.push_back(make_row(state, seg, i));
    }
  }
  return traj;
}

}  // namespace learnsim
