#include <cmath>
#include <vector>

#include "adhestring/diagnostics.hpp"
#include "adhestring/errors.hpp"
#include "adhestring/solvers.hpp"
#include "kernels_detail.hpp"

namespace adhestring {

namespace {

// Energy between levels `a` (older) and `b` (newer), conserved by the
// gradient-source scheme. `phi_a`, `phi_b` are Φ at the two levels.
EnergyBreakdown staggered_energy(std::span<const double> a, std::span<const double> b,
                                 std::span<const double> phi_a, std::span<const double> phi_b,
                                 double dx, double dt) {
  const std::size_t n = a.size();
  double kin = 0.0, adh = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wgt = (i == 0 || i + 1 == n) ? 0.5 * dx : dx;
    const double vel = (b[i] - a[i]) / dt;
    kin += 0.5 * wgt * vel * vel;
    adh += 0.5 * wgt * (phi_a[i] + phi_b[i]);
  }
  double diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = ((b[i + 1] - a[i + 1]) - (b[i] - a[i])) / dx;
    const double s = ((b[i + 1] + a[i + 1]) - (b[i] + a[i])) / dx;
    diff += d * d;
    sum += s * s;
  }
  EnergyBreakdown e;
  e.kinetic = kin - 0.125 * dx * diff;
  e.elastic = 0.125 * dx * sum;
  e.adhesive = adh;
  e.total = e.kinetic + e.elastic + e.adhesive;
  return e;
}

void require_finite(std::span<const double> u, std::size_t step) {
  for (double x : u) {
    if (!std::isfinite(x)) throw BlowupError(step);
  }
}

}  // namespace

SolutionRecord solve_leapfrog(const Grid1D& grid, const PotentialSpec& pot,
                              const InitialCondition& ic, const LeapfrogOptions& opts) {
  grid.validate();
  if (opts.stride == 0) throw ConfigError("snapshot stride must be positive");
  const std::size_t nx = grid.nx;
  const std::size_t nt = grid.nt();
  const double dx = grid.dx();
  const double dt = grid.dt();
  const kernels::LeapfrogCoefficients coef{grid.courant * grid.courant, dt * dt};

  SolutionRecord rec;
  rec.grid = grid;
  rec.potential = pot;
  rec.ic_descriptor = to_string(ic);
  rec.stride = opts.stride;
  rec.energy_series.reserve(nt + 1);

  const auto x = grid.nodes();
  const auto data = sample_ic(ic, x);

  WaveState s0{0.0, data.u0, data.u1, strain_from_displacement(data.u0, dx)};
  rec.energy_series.push_back(energy(s0, pot, dx));

  std::vector<double> older(nx), prev(nx), cur = data.u0, next(nx);
  // Taylor start.
  for (std::size_t i = 0; i < nx; ++i) {
    const double lap = kernels::detail::neumann_second_difference(cur, i);
    next[i] = cur[i] + dt * data.u1[i] + 0.5 * (coef.lambda2 * lap - coef.dt2 * phi_prime(pot, cur[i]));
  }
  require_finite(next, 1);

  std::vector<double> phi_cur(nx), phi_next(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    phi_cur[i] = phi(pot, cur[i]);
    phi_next[i] = phi(pot, next[i]);
  }

  auto push_energy = [&](std::size_t level) {
    auto e = staggered_energy(cur, next, phi_cur, phi_next, dx, dt);
    e.t = (static_cast<double>(level) - 0.5) * dt;
    rec.energy_series.push_back(e);
  };
  push_energy(1);
  rec.snapshots.push_back(std::move(s0));

  // Top of the loop: cur = u^{n-1}, next = u^n; prev holds u^{n-2} once n >= 2.
  for (std::size_t n = 1; n <= nt; ++n) {
    older.swap(prev);
    prev.swap(cur);
    cur.swap(next);
    phi_cur.swap(phi_next);
    const bool last = n == nt;
    if (!last) {
      if (opts.exec == Exec::serial) {
        kernels::leapfrog_step_serial(prev, cur, next, pot, coef, opts.source);
      } else {
        kernels::leapfrog_step_omp(prev, cur, next, pot, coef, opts.source);
      }
      require_finite(next, n + 1);
      for (std::size_t i = 0; i < nx; ++i) phi_next[i] = phi(pot, next[i]);
      push_energy(n + 1);
    }
    if (n % opts.stride == 0 || last) {
      WaveState s;
      s.t = static_cast<double>(n) * dt;
      s.u = cur;
      s.v.resize(nx);
      if (!last) {
        for (std::size_t i = 0; i < nx; ++i) s.v[i] = (next[i] - prev[i]) / (2.0 * dt);
      } else if (n >= 2) {
        for (std::size_t i = 0; i < nx; ++i) {
          s.v[i] = (3.0 * cur[i] - 4.0 * prev[i] + older[i]) / (2.0 * dt);
        }
      } else {
        for (std::size_t i = 0; i < nx; ++i) s.v[i] = (cur[i] - prev[i]) / dt;
      }
      s.w = strain_from_displacement(s.u, dx);
      rec.snapshots.push_back(std::move(s));
    }
  }
  return rec;
}

}  // namespace adhestring
