#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "adhestring/potentials.hpp"

namespace adhestring {

/// Uniform discretization of [0, L] x [0, T] at unit wave speed.
struct Grid1D {
  double length = 10.0;
  std::size_t nx = 1001;
  double courant = 0.9;  // dt / dx
  double final_time = 3.0;

  double dx() const noexcept { return length / static_cast<double>(nx - 1); }
  double dt() const noexcept { return courant * dx(); }
  /// ceil(T / dt), guarded against T/dt landing a rounding error above an integer.
  std::size_t nt() const noexcept;
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * dx(); }
  std::vector<double> nodes() const;

  /// Throws ConfigError unless nx >= 8, 0 < courant <= 1 and L, T > 0.
  void validate() const;
};

/// Field snapshot: displacement u, velocity v = ∂t u, strain w = ∂x u.
struct WaveState {
  double t = 0.0;
  std::vector<double> u, v, w;
};

struct EnergyBreakdown {
  double t = 0.0;
  double kinetic = 0.0;
  double elastic = 0.0;
  double adhesive = 0.0;
  double total = 0.0;
};

struct SolutionRecord {
  Grid1D grid;
  PotentialSpec potential;
  std::string ic_descriptor;
  std::size_t stride = 1;  // snapshot stride in time steps
  std::vector<WaveState> snapshots;
  std::vector<EnergyBreakdown> energy_series;
};

/// Strain by second-order differences: centered inside, one-sided at the ends.
std::vector<double> strain_from_displacement(std::span<const double> u, double dx);

}  // namespace adhestring
