#include <algorithm>
#include <cmath>
#include <vector>

#include "adhestring/diagnostics.hpp"
#include "adhestring/errors.hpp"
#include "adhestring/solvers.hpp"
#include "kernels_detail.hpp"

namespace adhestring {

namespace {

double fold_position(double x, double length) {
  double y = std::fmod(std::abs(x), 2.0 * length);
  if (y > length) y = 2.0 * length - y;
  return std::clamp(y, 0.0, length);
}

// Running integral of the even extension of `row` over the extended grid
// [0, 2L], one value per extended node (2(nx−1)+1 values).
void fill_primitive(std::span<const double> row, std::span<double> prim, double dx) {
  const std::size_t nx = row.size();
  const std::size_t period = 2 * (nx - 1);
  prim[0] = 0.0;
  for (std::size_t e = 0; e < period; ++e) {
    const double f0 = row[kernels::detail::fold(e, nx)];
    const double f1 = row[kernels::detail::fold(e + 1 == period ? 0 : e + 1, nx)];
    prim[e + 1] = prim[e] + 0.5 * dx * (f0 + f1);
  }
}

struct PicardSetup {
  kernels::ConeGeometry geom;
  std::vector<double> free_part;
};

PicardSetup make_setup(const Grid1D& grid, const InitialCondition& ic, std::size_t levels) {
  const std::size_t nx = grid.nx;
  const double dx = grid.dx();
  const double dt = grid.dt();
  const double length = grid.length;
  PicardSetup s{{nx, levels, dx, dt}, std::vector<double>(levels * nx)};

  const auto x = grid.nodes();
  const auto data = sample_ic(ic, x);
  std::vector<double> prim1(2 * (nx - 1) + 1);
  fill_primitive(data.u1, prim1, dx);

  for (std::size_t n = 0; n < levels; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double reach = static_cast<double>(n) * grid.courant;
    for (std::size_t i = 0; i < nx; ++i) {
      const double plus = evaluate(ic, fold_position(x[i] + t, length)).u0;
      const double minus = evaluate(ic, fold_position(x[i] - t, length)).u0;
      const double xi = static_cast<double>(i);
      const double span_integral =
          kernels::detail::primitive_at(data.u1, prim1, nx, dx, xi + reach) -
          kernels::detail::primitive_at(data.u1, prim1, nx, dx, xi - reach);
      s.free_part[n * nx + i] = 0.5 * (plus + minus) + 0.5 * span_integral;
    }
  }
  return s;
}

SpaceTimeField apply_map(const PicardSetup& setup, const PotentialSpec& pot,
                         const SpaceTimeField& current, Exec exec) {
  const auto& g = setup.geom;
  const std::size_t prim_len = 2 * (g.nx - 1) + 1;
  std::vector<double> source(g.n_levels * g.nx);
  std::vector<double> primitive(g.n_levels * prim_len);
  for (std::size_t k = 0; k < source.size(); ++k) source[k] = -phi_prime(pot, current.values[k]);
  for (std::size_t n = 0; n < g.n_levels; ++n) {
    fill_primitive(std::span<const double>(source).subspan(n * g.nx, g.nx),
                   std::span<double>(primitive).subspan(n * prim_len, prim_len), g.dx);
  }
  SpaceTimeField out{g.n_levels, g.nx, std::vector<double>(source.size())};
  if (exec == Exec::serial) {
    kernels::picard_cone_serial(source, primitive, setup.free_part, out.values, g);
  } else {
    kernels::picard_cone_omp(source, primitive, setup.free_part, out.values, g);
  }
  return out;
}

std::size_t level_count(const Grid1D& grid, double t_max) {
  const double steps = t_max / grid.dt();
  return static_cast<std::size_t>(std::floor(steps + 1e-9)) + 1;
}

}  // namespace

SpaceTimeField picard_map(const Grid1D& grid, const PotentialSpec& pot,
                          const InitialCondition& ic, const SpaceTimeField& current, Exec exec) {
  grid.validate();
  if (current.nx != grid.nx || current.values.size() != current.levels * current.nx) {
    throw ParameterError("picard_map: field does not match the grid");
  }
  const auto setup = make_setup(grid, ic, current.levels);
  return apply_map(setup, pot, current, exec);
}

SolutionRecord solve_dalembert_picard(const Grid1D& grid, const PotentialSpec& pot,
                                      const InitialCondition& ic, double t_max,
                                      std::size_t k_iters, const PicardOptions& opts) {
  grid.validate();
  if (k_iters == 0) throw ConfigError("picard needs at least one iteration");
  if (!(t_max > 0.0) || t_max > grid.final_time * (1.0 + 1e-12)) {
    throw ConfigError("picard t_max must lie in (0, T]");
  }
  const std::size_t nx = grid.nx;
  const std::size_t levels = level_count(grid, t_max);
  const double dt = grid.dt();
  const double dx = grid.dx();
  const auto setup = make_setup(grid, ic, levels);

  SpaceTimeField u{levels, nx, std::vector<double>(levels * nx, 0.0)};
  double change = 0.0;
  bool converged = false;
  for (std::size_t it = 0; it < k_iters; ++it) {
    auto next = apply_map(setup, pot, u, opts.exec);
    change = 0.0;
    for (std::size_t k = 0; k < next.values.size(); ++k) {
      if (!std::isfinite(next.values[k])) throw BlowupError(k / nx);
      change = std::max(change, std::abs(next.values[k] - u.values[k]));
    }
    u = std::move(next);
    if (change < opts.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) throw IterationLimitError(k_iters, change);

  SolutionRecord rec;
  rec.grid = grid;
  rec.grid.final_time = static_cast<double>(levels - 1) * dt;
  rec.potential = pot;
  rec.ic_descriptor = to_string(ic);
  rec.stride = 1;
  const auto u1 = sample_ic(ic, grid.nodes()).u1;
  for (std::size_t n = 0; n < levels; ++n) {
    WaveState s;
    s.t = static_cast<double>(n) * dt;
    s.u.assign(u.values.begin() + static_cast<std::ptrdiff_t>(n * nx),
               u.values.begin() + static_cast<std::ptrdiff_t>((n + 1) * nx));
    s.v.resize(nx);
    for (std::size_t i = 0; i < nx; ++i) {
      if (n == 0) {
        s.v[i] = u1[i];
      } else if (n + 1 < levels) {
        s.v[i] = (u.at(n + 1, i) - u.at(n - 1, i)) / (2.0 * dt);
      } else if (n >= 2) {
        s.v[i] = (3.0 * u.at(n, i) - 4.0 * u.at(n - 1, i) + u.at(n - 2, i)) / (2.0 * dt);
      } else {
        s.v[i] = (u.at(n, i) - u.at(n - 1, i)) / dt;
      }
    }
    s.w = strain_from_displacement(s.u, dx);
    rec.energy_series.push_back(energy(s, pot, dx));
    rec.snapshots.push_back(std::move(s));
  }
  return rec;
}

}  // namespace adhestring
