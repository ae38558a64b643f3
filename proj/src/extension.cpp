#include <cmath>

#include "adhestring/errors.hpp"
#include "adhestring/solvers.hpp"
#include "adhestring/state.hpp"

namespace adhestring {

std::size_t Grid1D::nt() const noexcept {
  const double steps = final_time / dt();
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(steps));
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(nx);
  for (std::size_t i = 0; i < nx; ++i) out[i] = x(i);
  return out;
}

void Grid1D::validate() const {
  if (nx < 8) throw ConfigError("nx must be at least 8");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("L must be positive");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("T must be positive");
  if (!(courant > 0.0) || courant > 1.0) {
    throw ConfigError("courant must lie in (0, 1] (CFL)");
  }
}

std::vector<double> strain_from_displacement(std::span<const double> u, double dx) {
  const std::size_t n = u.size();
  std::vector<double> w(n, 0.0);
  if (n < 3) return w;
  const double inv = 1.0 / (2.0 * dx);
  for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (u[i + 1] - u[i - 1]) * inv;
  w[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv;
  w[n - 1] = (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) * inv;
  return w;
}

std::vector<double> extend_even_periodic(std::span<const double> u) {
  const std::size_t nx = u.size();
  if (nx < 2) return {u.begin(), u.end()};
  const std::size_t m = nx - 1;
  std::vector<double> ext(2 * m);
  for (std::size_t e = 0; e < 2 * m; ++e) ext[e] = u[e < m ? m - e : e - m];
  return ext;
}

std::vector<double> extend_odd_periodic(std::span<const double> w) {
  const std::size_t nx = w.size();
  if (nx < 2) return {w.begin(), w.end()};
  const std::size_t m = nx - 1;
  std::vector<double> ext(2 * m);
  for (std::size_t e = 0; e < 2 * m; ++e) ext[e] = e < m ? -w[m - e] : w[e - m];
  // x = −L coincides with x = L after wrapping; the odd reflection sends the
  // boundary value to its negative, so keep the (zero for Neumann data) mean.
  ext[0] = 0.0;
  return ext;
}

std::vector<double> restrict_to_domain(std::span<const double> ext, std::size_t nx) {
  const std::size_t m = nx - 1;
  if (ext.size() != 2 * m) throw ParameterError("restrict_to_domain: extension length mismatch");
  std::vector<double> out(nx);
  for (std::size_t i = 0; i < m; ++i) out[i] = ext[m + i];
  out[m] = ext[0];
  return out;
}

}  // namespace adhestring
