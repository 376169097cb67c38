#include "learnsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "learnsim/errors.hpp"

namespace learnsim {

std::vector<std::string> ModelParams::validate() const {
  std::vector<std::string> out;
  if (n < 1) {
    out.push_back("params.n: must be >= 1");
    return out;
  }
  const auto count = static_cast<std::size_t>(n);
  if (alpha.size() != count) out.push_back("params.alpha: expected " + std::to_string(n) + " values");
  if (gamma.size() != count) out.push_back("params.gamma: expected " + std::to_string(n) + " values");
  if (!(b >= 0.0 && b <= 1.0)) out.push_back("params.b: must lie in [0, 1]");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) out.push_back("params.alpha[" + std::to_string(i) + "]: must be > 0");
  }
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!(gamma[i] > 0.0)) out.push_back("params.gamma[" + std::to_string(i) + "]: must be > 0");
    if (i > 0 && !(gamma[i] < gamma[i - 1])) {
      out.push_back("params.gamma: forgetting rates must be strictly decreasing (gamma[" +
                    std::to_string(i - 1) + "] > gamma[" + std::to_string(i) + "])");
    }
  }
  if (!(k1 > 0.0)) out.push_back("params.k1: must be > 0");
  if (!(P0 > 0.0)) out.push_back("params.P0: must be > 0");
  if (!(k2 > 0.0)) out.push_back("params.k2: must be > 0");
  if (!(k3 > 0.0)) out.push_back("params.k3: must be > 0");
  if (!(k4 >= 0.0)) out.push_back("params.k4: must be >= 0");
  return out;
}

std::vector<std::string> SimState::validate(const ModelParams& params) const {
  std::vector<std::string> out;
  if (Z.size() != static_cast<std::size_t>(params.n)) {
    out.push_back("initial.Z: expected " + std::to_string(params.n) + " values");
  }
  for (std::size_t i = 0; i < Z.size(); ++i) {
    if (!(Z[i] >= 0.0)) out.push_back("initial.Z[" + std::to_string(i) + "]: must be >= 0");
  }
  if (!(r0_base > 0.0 && r0_base <= 1.0)) out.push_back("initial.r0: must lie in (0, 1]");
  if (!(r >= 0.0 && r <= r0_base)) out.push_back("initial.r: must lie in [0, r0]");
  if (!(P >= 0.0)) out.push_back("initial.P: must be >= 0");
  return out;
}

double effort(const EffortSpec& spec, double z_total) {
  if (const auto* c = std::get_if<ConstantEffort>(&spec)) return c->F;
  const double gap = std::get<RequirementEffort>(spec).U - z_total;
  return gap > 0.0 ? gap : 0.0;
}

double workability(double r0_base, double work, const ModelParams& params) {
  // exp overflows to +inf for huge arguments, giving r = 0 as required.
  return r0_base / (1.0 + std::exp(params.k1 * (work - params.P0)));
}

double work_rate(double F, double S, const ModelParams& params) {
  return F > 0.0 ? params.k2 * (1.0 + S) * F : params.k2;
}

void knowledge_rates(std::span<const double> Z, double F, double S, double r,
                     const ModelParams& params, std::span<double> out) {
  const std::size_t n = Z.size();
  const double gain = r * (1.0 - S);
  // pow(0, 0) is 1, so learning can start from an empty store when b = 0.
  const double zb = std::pow(total_knowledge(Z), params.b);
  const auto& a = params.alpha;
  const auto& g = params.gamma;

  double inflow = a[0] * F * zb;
  for (std::size_t i = 0; i < n; ++i) {
    const double outflow = i + 1 < n ? a[i + 1] * Z[i] : 0.0;
    out[i] = gain * (inflow - outflow) - g[i] * Z[i];
    inflow = outflow;
  }
}

LessonRates lesson_derivatives(const SimState& state, const EffortSpec& spec, double S,
                               const ModelParams& params) {
  if (!(S >= 0.0 && S < 1.0)) throw ValidationError("lesson complexity S must lie in [0, 1)");
  const double F = effort(spec, total_knowledge(state.Z));
  const double r = workability(state.r0_base, state.P, params);
  LessonRates rates;
  rates.dZ.resize(state.Z.size());
  knowledge_rates(state.Z, F, S, r, params, rates.dZ);
  rates.dP = work_rate(F, S, params);
  return rates;
}

BreakRates break_derivatives(const SimState& state, const ModelParams& params) {
  BreakRates rates;
  rates.dZ.resize(state.Z.size());
  for (std::size_t i = 0; i < state.Z.size(); ++i) rates.dZ[i] = -params.gamma[i] * state.Z[i];
  rates.dr = params.k3 * (std::exp(-params.k4 * state.t) - state.r);
  return rates;
}

double total_knowledge(std::span<const double> Z) {
  return std::accumulate(Z.begin(), Z.end(), 0.0);
}

double strength_coefficient(std::span<const double> Z) {
  const double total = total_knowledge(Z);
  if (!(total > 0.0)) return 0.0;
  const std::size_t n = Z.size();
  if (n == 1) return 1.0;
  // Horner-style: weight halves for each step away from the top category.
  double weighted = 0.0;
  for (std::size_t i = 1; i < n; ++i) weighted = 0.5 * weighted + Z[i];
  return std::min(1.0, weighted / total);
}

double gamma_from_tau(double tau) {
  if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
  return 1.0 / tau;
}

}  // namespace learnsim
