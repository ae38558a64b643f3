#include <algorithm>

#include "adhestring/diagnostics.hpp"

namespace adhestring {

EnergyBreakdown energy(const WaveState& state, const PotentialSpec& pot, double dx) {
  EnergyBreakdown e;
  e.t = state.t;
  const std::size_t n = state.u.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double wgt = (i == 0 || i + 1 == n) ? 0.5 * dx : dx;
    e.kinetic += 0.5 * wgt * state.v[i] * state.v[i];
    e.elastic += 0.5 * wgt * state.w[i] * state.w[i];
    e.adhesive += wgt * phi(pot, state.u[i]);
  }
  e.total = e.kinetic + e.elastic + e.adhesive;
  return e;
}

DissipationReport check_dissipation(const SolutionRecord& record, double tol) {
  DissipationReport rep;
  rep.tolerance = tol;
  const auto& series = record.energy_series;
  if (series.empty()) return rep;
  rep.initial_energy = series.front().total;
  rep.max_violation = 0.0;
  rep.max_violation_time = series.front().t;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double excess = series[k].total - rep.initial_energy;
    if (excess > rep.max_violation) {
      rep.max_violation = excess;
      rep.max_violation_time = series[k].t;
    }
    if (k > 0) {
      const double span = series[k].t - series[k - 1].t;
      if (span > 0.0) {
        const double rate = (series[k - 1].total - series[k].total) / span;
        if (rate > rep.max_dissipation_rate) {
          rep.max_dissipation_rate = rate;
          rep.max_dissipation_rate_time = 0.5 * (series[k].t + series[k - 1].t);
        }
      }
    }
  }
  rep.passed = rep.max_violation <= tol;
  return rep;
}

}  // namespace adhestring
