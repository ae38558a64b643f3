#pragma once

// Per-element arithmetic shared by the serial and OpenMP kernels.

#include <cmath>
#include <cstddef>
#include <span>

#include "adhestring/kernels.hpp"

namespace adhestring::kernels::detail {

inline double neumann_second_difference(std::span<const double> u, std::size_t i) {
  const std::size_t n = u.size();
  if (i == 0) return 2.0 * (u[1] - u[0]);
  if (i == n - 1) return 2.0 * (u[n - 2] - u[n - 1]);
  return (u[i + 1] - 2.0 * u[i]) + u[i - 1];
}

inline double leapfrog_node(std::span<const double> u_prev, std::span<const double> u,
                            std::size_t i, const PotentialSpec& pot, LeapfrogCoefficients c,
                            SourceMode mode) {
  const double r = 2.0 * u[i] - u_prev[i] + c.lambda2 * neumann_second_difference(u, i);
  if (mode == SourceMode::pointwise) return r - c.dt2 * phi_prime(pot, u[i]);
  return gradient_source_solve(pot, r, u_prev[i], c.dt2);
}

/// Index of the extended (even 2L-periodic) grid mapped back onto [0, L].
inline std::size_t fold(std::size_t e, std::size_t nx) {
  const std::size_t period = 2 * (nx - 1);
  return e <= nx - 1 ? e : period - e;
}

/// Running integral of the extended row at position p (in node units from x = 0).
inline double primitive_at(std::span<const double> row, std::span<const double> prim,
                           std::size_t nx, double dx, double p) {
  const auto period = static_cast<long long>(2 * (nx - 1));
  const double qf = std::floor(p);
  const double theta = p - qf;
  const auto q = static_cast<long long>(qf);
  long long wraps = q / period;
  long long j = q - wraps * period;
  if (j < 0) {
    j += period;
    --wraps;
  }
  const auto ju = static_cast<std::size_t>(j);
  const double f0 = row[fold(ju, nx)];
  const double f1 = row[fold(ju + 1 == static_cast<std::size_t>(period) ? 0 : ju + 1, nx)];
  return static_cast<double>(wraps) * prim[static_cast<std::size_t>(period)] + prim[ju] +
         dx * (theta * f0 + 0.5 * theta * theta * (f1 - f0));
}

inline double cone_node(std::span<const double> source, std::span<const double> primitive,
                        std::span<const double> free_part, ConeGeometry g, std::size_t n,
                        std::size_t i) {
  const std::size_t prim_len = 2 * (g.nx - 1) + 1;
  const double lambda = g.dt / g.dx;
  double acc = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double reach = static_cast<double>(n - m) * lambda;
    const auto row = source.subspan(m * g.nx, g.nx);
    const auto prim = primitive.subspan(m * prim_len, prim_len);
    const double xi = static_cast<double>(i);
    const double integral = primitive_at(row, prim, g.nx, g.dx, xi + reach) -
                            primitive_at(row, prim, g.nx, g.dx, xi - reach);
    acc += (m == 0 ? 0.5 : 1.0) * integral;
  }
  return free_part[n * g.nx + i] + 0.5 * g.dt * acc;
}

inline void transport_node(std::span<double> z1, std::span<double> z2,
                           std::span<const double> s1, std::span<const double> s3,
                           std::size_t e) {
  const std::size_t n = z1.size();
  const double right = s1[e == 0 ? n - 1 : e - 1];
  const double left = s3[e + 1 == n ? 0 : e + 1];
  z1[e] = 0.5 * (right + left);
  z2[e] = 0.5 * (left - right);
}

}  // namespace adhestring::kernels::detail
