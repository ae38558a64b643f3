#include <algorithm>
#include <cmath>

#include "adhestring/diagnostics.hpp"
#include "adhestring/errors.hpp"

namespace adhestring {

ConeReport verify_cone_condition(const SolutionRecord& record, double t0, double x0,
                                 double epsilon) {
  if (!(epsilon > 0.0)) throw ParameterError("cone epsilon must be positive");
  ConeReport rep{t0, x0, epsilon};
  const double length = record.grid.length;
  const double slack = 1e-9 * record.grid.dt();
  const double t_low = std::max(t0 - epsilon, 0.0);
  const auto x = record.grid.nodes();
  for (const auto& s : record.snapshots) {
    if (s.t < t_low - slack || s.t > t0 + slack) continue;
    const double lo = std::max(0.0, x0 - epsilon + (s.t - t0));
    const double hi = std::min(x0 + epsilon - (s.t - t0), length);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] > lo && x[i] < hi)) continue;
      ++rep.samples;
      const double m = std::abs(s.u[i]);
      if (m < 1.0) rep.found_below = true;
      if (m > 1.0) rep.found_above = true;
    }
  }
  if (rep.samples == 0) throw ResolutionError("cone holds no grid nodes; increase epsilon");
  return rep;
}

}  // namespace adhestring
