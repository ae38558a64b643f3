#include <cmath>
#include <random>

#include "adhestring/diagnostics.hpp"

namespace adhestring {

double bump(double r) {
  const double q = 1.0 - r * r;
  if (q <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double bump_prime(double r) {
  const double q = 1.0 - r * r;
  if (q <= 0.0) return 0.0;
  return bump(r) * (-2.0 * r / (q * q));
}

double bump_second(double r) {
  const double q = 1.0 - r * r;
  if (q <= 0.0) return 0.0;
  const double q2 = q * q;
  return bump(r) * (4.0 * r * r / (q2 * q2) - 2.0 / q2 - 8.0 * r * r / (q2 * q));
}

double TestFunction::value(double t, double x) const {
  return bump((t - t0) / rt) * bump((x - x0) / rx);
}
double TestFunction::d_t(double t, double x) const {
  return bump_prime((t - t0) / rt) / rt * bump((x - x0) / rx);
}
double TestFunction::d_tt(double t, double x) const {
  return bump_second((t - t0) / rt) / (rt * rt) * bump((x - x0) / rx);
}
double TestFunction::d_x(double t, double x) const {
  return bump((t - t0) / rt) * bump_prime((x - x0) / rx) / rx;
}

std::vector<TestFunction> make_test_bank(std::size_t count, std::uint64_t seed, double t_end,
                                         double length) {
  std::mt19937_64 rng(seed);
  // Uniform doubles straight from the engine bits, so banks agree across
  // standard library implementations.
  auto uniform = [&rng](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  std::vector<TestFunction> bank(count);
  for (auto& f : bank) {
    f.rt = uniform(0.1, 0.3) * t_end;
    f.t0 = uniform(-0.5 * f.rt, t_end - f.rt);
    f.rx = uniform(0.1, 0.3) * length;
    f.x0 = uniform(0.0, length);
  }
  return bank;
}

namespace {

// Φ′ just on the side of the threshold where `from` lies.
double one_sided_phi_prime(const PotentialSpec& pot, double at, double from) {
  const double nudge = std::abs(from) < std::abs(at) ? 1.0 - 1e-12 : 1.0 + 1e-12;
  return phi_prime(pot, at * nudge);
}

double source_piece(const PotentialSpec& pot, const TestFunction& f, double x, double ta,
                    double tb, double ua, double ub) {
  const double fa = phi_prime(pot, ua) * f.value(ta, x);
  const double fb = phi_prime(pot, ub) * f.value(tb, x);
  const bool inside_a = std::abs(ua) <= 1.0;
  const bool inside_b = std::abs(ub) <= 1.0;
  if (inside_a == inside_b || ua * ub <= 0.0 || ua == ub) return 0.5 * (tb - ta) * (fa + fb);
  const double target = ua > 0.0 ? 1.0 : -1.0;
  const double s = (target - ua) / (ub - ua);
  const double tc = ta + s * (tb - ta);
  const double phic = f.value(tc, x);
  const double left = 0.5 * (tc - ta) * (fa + one_sided_phi_prime(pot, target, ua) * phic);
  const double right = 0.5 * (tb - tc) * (one_sided_phi_prime(pot, target, ub) * phic + fb);
  return left + right;
}

}  // namespace

std::vector<WeakResidual> weak_residual(const SolutionRecord& record, const PotentialSpec& pot,
                                        std::span<const TestFunction> bank) {
  std::vector<WeakResidual> out(bank.size());
  const auto& snaps = record.snapshots;
  if (snaps.empty()) return out;
  const std::size_t nx = record.grid.nx;
  const double dx = record.grid.dx();
  const auto x = record.grid.nodes();
  auto wx = [&](std::size_t i) { return (i == 0 || i + 1 == nx) ? 0.5 * dx : dx; };

  for (std::size_t b = 0; b < bank.size(); ++b) {
    const auto& f = bank[b];
    double term_u = 0.0, term_x = 0.0, term_src = 0.0, mass = 0.0;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      const double t = snaps[k].t;
      double wt = 0.0;
      if (k > 0) wt += 0.5 * (t - snaps[k - 1].t);
      if (k + 1 < snaps.size()) wt += 0.5 * (snaps[k + 1].t - t);
      if (std::abs(t - f.t0) >= f.rt) continue;
      for (std::size_t i = 0; i < nx; ++i) {
        if (std::abs(x[i] - f.x0) >= f.rx) continue;
        const double a = wt * wx(i) * snaps[k].u[i] * f.d_tt(t, x[i]);
        const double b = wt * wx(i) * snaps[k].w[i] * f.d_x(t, x[i]);
        const double c = wt * wx(i) * phi_prime(pot, snaps[k].u[i]) * f.value(t, x[i]);
        term_u += a;
        term_x += b;
        mass += std::abs(a) + std::abs(b) + std::abs(c);
      }
    }
    for (std::size_t k = 0; k + 1 < snaps.size(); ++k) {
      const double ta = snaps[k].t;
      const double tb = snaps[k + 1].t;
      if (tb <= f.t0 - f.rt || ta >= f.t0 + f.rt) continue;
      for (std::size_t i = 0; i < nx; ++i) {
        if (std::abs(x[i] - f.x0) >= f.rx) continue;
        term_src += wx(i) * source_piece(pot, f, x[i], ta, tb, snaps[k].u[i], snaps[k + 1].u[i]);
      }
    }
    double term_v0 = 0.0, term_u0 = 0.0;
    const auto& first = snaps.front();
    for (std::size_t i = 0; i < nx; ++i) {
      const double a = wx(i) * first.v[i] * f.value(first.t, x[i]);
      const double b = wx(i) * first.u[i] * f.d_t(first.t, x[i]);
      term_v0 += a;
      term_u0 += b;
      mass += std::abs(a) + std::abs(b);
    }
    out[b].residual = term_u + term_x + term_src - term_v0 + term_u0;
    out[b].scale = mass;
  }
  return out;
}

}  // namespace adhestring
