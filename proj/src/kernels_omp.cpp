#include <omp.h>

#include "adhestring/kernels.hpp"
#include "kernels_detail.hpp"

namespace adhestring::kernels {

void leapfrog_step_omp(std::span<const double> u_prev, std::span<const double> u,
                       std::span<double> u_next, const PotentialSpec& pot,
                       LeapfrogCoefficients c, SourceMode mode) {
  const auto n = static_cast<long long>(u.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    u_next[k] = detail::leapfrog_node(u_prev, u, k, pot, c, mode);
  }
}

void transport_shift_omp(std::span<double> z1, std::span<double> z2,
                         std::span<double> scratch1, std::span<double> scratch3) {
  const auto n = static_cast<long long>(z1.size());
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (long long e = 0; e < n; ++e) {
      const auto k = static_cast<std::size_t>(e);
      scratch1[k] = z1[k] - z2[k];
      scratch3[k] = z1[k] + z2[k];
    }
#pragma omp for schedule(static)
    for (long long e = 0; e < n; ++e) {
      detail::transport_node(z1, z2, scratch1, scratch3, static_cast<std::size_t>(e));
    }
  }
}

void picard_cone_omp(std::span<const double> source, std::span<const double> primitive,
                     std::span<const double> free_part, std::span<double> out,
                     ConeGeometry g) {
  const auto total = static_cast<long long>(g.n_levels * g.nx);
  // Cost grows with the level index; dynamic chunks keep threads balanced.
#pragma omp parallel for schedule(dynamic, 256)
  for (long long idx = 0; idx < total; ++idx) {
    const auto n = static_cast<std::size_t>(idx) / g.nx;
    const auto i = static_cast<std::size_t>(idx) % g.nx;
    out[static_cast<std::size_t>(idx)] = detail::cone_node(source, primitive, free_part, g, n, i);
  }
}

}  // namespace adhestring::kernels
