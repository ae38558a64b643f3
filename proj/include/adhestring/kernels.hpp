#pragma once

// Data-parallel inner loops of the solvers. Every kernel has a serial
// reference and an OpenMP version; both compute each output element with
// the same arithmetic, so their results are bit-identical.

#include <cstddef>
#include <span>

#include "adhestring/potentials.hpp"

namespace adhestring::kernels {

enum class Exec { serial, parallel };

/// How the leapfrog step evaluates the adhesion force.
enum class SourceMode {
  pointwise,  // −Φ′(uⁿ)
  gradient,   // −(Φ(uⁿ⁺¹) − Φ(uⁿ⁻¹)) / (uⁿ⁺¹ − uⁿ⁻¹), solved per node
};

struct LeapfrogCoefficients {
  double lambda2;  // (dt/dx)²
  double dt2;      // dt²
};

/// One three-level step on [0, L] with mirrored ghost nodes (homogeneous
/// Neumann). `u_next` must not alias the inputs.
void leapfrog_step_serial(std::span<const double> u_prev, std::span<const double> u,
                          std::span<double> u_next, const PotentialSpec& pot,
                          LeapfrogCoefficients c, SourceMode mode);
void leapfrog_step_omp(std::span<const double> u_prev, std::span<const double> u,
                       std::span<double> u_next, const PotentialSpec& pot,
                       LeapfrogCoefficients c, SourceMode mode);

/// Exact free transport by one node on the periodic extended grid:
/// w₁ = z₁ − z₂ moves right, w₃ = z₁ + z₂ moves left, z₃ stays.
void transport_shift_serial(std::span<double> z1, std::span<double> z2,
                            std::span<double> scratch1, std::span<double> scratch3);
void transport_shift_omp(std::span<double> z1, std::span<double> z2,
                         std::span<double> scratch1, std::span<double> scratch3);

/// Cone-integral part of one Picard map.
///
/// `source` holds −Φ′(u) on levels 0..n_levels−1 (row-major, nx per level);
/// `primitive` holds, per level, the running integral of the even 2L-periodic
/// extension of that row over the extended grid (2(nx−1)+1 values, starting
/// at x = 0). `free_part` is the d'Alembert term. Writes
/// out[n, i] = free[n, i] + ½ ∫₀^{tₙ} ∫_{xᵢ−(tₙ−s)}^{xᵢ+(tₙ−s)} source dy ds
/// with the trapezoid rule in s.
struct ConeGeometry {
  std::size_t nx;
  std::size_t n_levels;
  double dx;
  double dt;
};
void picard_cone_serial(std::span<const double> source, std::span<const double> primitive,
                        std::span<const double> free_part, std::span<double> out,
                        ConeGeometry g);
void picard_cone_omp(std::span<const double> source, std::span<const double> primitive,
                     std::span<const double> free_part, std::span<double> out, ConeGeometry g);

/// Per-node solve of x = r − dt²·(Φ(x) − Φ(p))/(x − p); exposed for tests.
double gradient_source_solve(const PotentialSpec& pot, double r, double p, double dt2);

}  // namespace adhestring::kernels
