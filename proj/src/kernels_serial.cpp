#include <algorithm>
#include <cmath>
#include <limits>

#include "adhestring/kernels.hpp"
#include "kernels_detail.hpp"

namespace adhestring::kernels {

namespace {

double secant_slope(const PotentialSpec& pot, double x, double p) {
  const double scale = std::max({1.0, std::abs(x), std::abs(p)});
  if (std::abs(x - p) <= 1e-9 * scale) return phi_prime(pot, 0.5 * (x + p));
  return (phi(pot, x) - phi(pot, p)) / (x - p);
}

}  // namespace

double gradient_source_solve(const PotentialSpec& pot, double r, double p, double dt2) {
  auto residual = [&](double x) { return x - r + dt2 * secant_slope(pot, x, p); };

  double x = r - dt2 * phi_prime(pot, p);
  for (int k = 0; k < 12; ++k) {
    const double next = r - dt2 * secant_slope(pot, x, p);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return next;
    }
    x = next;
  }

  // No contraction near a threshold crossing: bisect. The secant slope is
  // bounded by sup|Φ′|, so the bracket always holds a sign change.
  const double reach = dt2 * phi_prime_bound(pot) * (1.0 + 1e-12) + 1e-300;
  double lo = r - reach;
  double hi = r + reach;
  for (int k = 0; k < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r)); ++k) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void leapfrog_step_serial(std::span<const double> u_prev, std::span<const double> u,
                          std::span<double> u_next, const PotentialSpec& pot,
                          LeapfrogCoefficients c, SourceMode mode) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    u_next[i] = detail::leapfrog_node(u_prev, u, i, pot, c, mode);
  }
}

void transport_shift_serial(std::span<double> z1, std::span<double> z2,
                            std::span<double> scratch1, std::span<double> scratch3) {
  for (std::size_t e = 0; e < z1.size(); ++e) {
    scratch1[e] = z1[e] - z2[e];
    scratch3[e] = z1[e] + z2[e];
  }
  for (std::size_t e = 0; e < z1.size(); ++e) {
    detail::transport_node(z1, z2, scratch1, scratch3, e);
  }
}

void picard_cone_serial(std::span<const double> source, std::span<const double> primitive,
                        std::span<const double> free_part, std::span<double> out,
                        ConeGeometry g) {
  for (std::size_t n = 0; n < g.n_levels; ++n) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      out[n * g.nx + i] = detail::cone_node(source, primitive, free_part, g, n, i);
    }
  }
}

}  // namespace adhestring::kernels
