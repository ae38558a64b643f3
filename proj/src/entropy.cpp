#include <algorithm>
#include <cmath>

#include "adhestring/diagnostics.hpp"
#include "adhestring/errors.hpp"

namespace adhestring {

EntropyResidual entropy_residual(const SolutionRecord& record, const PotentialSpec& pot,
                                 const CharacteristicMap* singular, std::size_t exclusion_cells) {
  if (record.stride != 1) throw ConfigError("entropy residual needs stride-1 snapshots");
  const auto& snaps = record.snapshots;
  EntropyResidual out;
  out.levels = snaps.size();
  out.nx = record.grid.nx;
  out.values.assign(out.levels * out.nx, 0.0);
  out.smoothed.assign(out.levels * out.nx, 0.0);
  if (out.levels < 3) return out;
  const std::size_t nx = out.nx;
  const double dx = record.grid.dx();

  auto eta = [](const WaveState& s, std::size_t i) {
    return 0.5 * (s.v[i] * s.v[i] + s.w[i] * s.w[i] + s.u[i] * s.u[i]);
  };
  auto flux = [](const WaveState& s, std::size_t i) { return -s.v[i] * s.w[i]; };

  for (std::size_t n = 1; n + 1 < out.levels; ++n) {
    const auto& a = snaps[n - 1];
    const auto& s = snaps[n];
    const auto& b = snaps[n + 1];
    const double span = b.t - a.t;
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const double dt_eta = (eta(b, i) - eta(a, i)) / span;
      const double dx_q = (flux(s, i + 1) - flux(s, i - 1)) / (2.0 * dx);
      // η′(Z)·B(Z) = z₁(−Φ′(z₃)) + z₃z₁.
      const double production = s.v[i] * (s.u[i] - phi_prime(pot, s.u[i]));
      out.values[n * nx + i] = dt_eta + dx_q - production;
    }
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const double left = i >= 2 ? out.values[n * nx + i - 1] : out.values[n * nx + i];
      const double right = i + 2 < nx ? out.values[n * nx + i + 1] : out.values[n * nx + i];
      out.smoothed[n * nx + i] = 0.25 * left + 0.5 * out.values[n * nx + i] + 0.25 * right;
    }
  }

  std::vector<char> excluded(out.levels * nx, 0);
  if (singular != nullptr) {
    const auto reach = static_cast<long>(exclusion_cells);
    for (const auto& p : singular->points) {
      const auto center = static_cast<long>(std::lround(p.x / dx));
      const auto level = static_cast<long>(p.level);
      for (long dn = -reach; dn <= reach; ++dn) {
        const long n = level + dn;
        if (n < 0 || n >= static_cast<long>(out.levels)) continue;
        for (long di = -reach - 1; di <= reach + 1; ++di) {
          const long i = center + di;
          if (i < 0 || i >= static_cast<long>(nx)) continue;
          excluded[static_cast<std::size_t>(n) * nx + static_cast<std::size_t>(i)] = 1;
        }
      }
    }
  }

  for (std::size_t n = 1; n + 1 < out.levels; ++n) {
    const double cell_t = 0.5 * (snaps[n + 1].t - snaps[n - 1].t);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      const std::size_t k = n * nx + i;
      const double r = out.smoothed[k];
      if (r > 0.0) out.positive_integral += r * dx * cell_t;
      if (r < 0.0) out.negative_integral += r * dx * cell_t;
      if (excluded[k]) {
        ++out.excluded_points;
        continue;
      }
      out.max_abs_smooth_region = std::max(out.max_abs_smooth_region, std::abs(out.values[k]));
    }
  }
  return out;
}

}  // namespace adhestring
