#include "adhestring/potentials.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "adhestring/errors.hpp"

namespace adhestring {

namespace {

constexpr int kSimpsonPanels = 64;

double bump(double r) {
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

template <class F>
double simpson(F&& f, double a, double b) {
  const double h = (b - a) / kSimpsonPanels;
  double sum = f(a) + f(b);
  for (int k = 1; k < kSimpsonPanels; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + k * h);
  }
  return sum * h / 3.0;
}

struct BumpMoments {
  double mass;
  double second;  // ∫ r² β(r) dr / mass
};

const BumpMoments& bump_moments() {
  static const BumpMoments m = [] {
    const double mass = simpson(bump, -1.0, 1.0);
    const double second = simpson([](double r) { return r * r * bump(r); }, -1.0, 1.0) / mass;
    return BumpMoments{mass, second};
  }();
  return m;
}

double phi_exact(double u) { return std::abs(u) <= 1.0 ? u * u : 1.0; }
double phi_prime_exact(double u) { return std::abs(u) <= 1.0 ? 2.0 * u : 0.0; }

// (1/mass) ∫_{-1}^{1} g(u - δ r) β(r) dr, with Simpson applied separately on
// each piece between the kinks of g at u - δ r = ±1. The branch of g is fixed
// per piece from its midpoint: a node on a cut can round to the wrong side.
template <class Inner, class Outer>
double mollify(Inner&& inner, Outer&& outer, double u, double delta) {
  std::array<double, 4> cuts{-1.0, 1.0, 0.0, 0.0};
  std::size_t n = 2;
  for (double r : {(u - 1.0) / delta, (u + 1.0) / delta}) {
    if (r > -1.0 && r < 1.0) cuts[n++] = r;
  }
  std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n));
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (!(cuts[k + 1] > cuts[k])) continue;
    const double mid = u - delta * 0.5 * (cuts[k] + cuts[k + 1]);
    if (std::abs(mid) <= 1.0) {
      total += simpson([&](double r) { return inner(u - delta * r) * bump(r); }, cuts[k], cuts[k + 1]);
    } else {
      total += simpson([&](double r) { return outer(u - delta * r) * bump(r); }, cuts[k], cuts[k + 1]);
    }
  }
  return total / bump_moments().mass;
}

double phi_mollified(double u, double delta) {
  if (std::abs(u) + delta < 1.0) return u * u + delta * delta * bump_moments().second;
  if (std::abs(u) - delta > 1.0) return 1.0;
  return mollify([](double s) { return s * s; }, [](double) { return 1.0; }, u, delta);
}

double phi_prime_mollified(double u, double delta) {
  if (std::abs(u) + delta < 1.0) return 2.0 * u;
  if (std::abs(u) - delta > 1.0) return 0.0;
  return mollify([](double s) { return 2.0 * s; }, [](double) { return 0.0; }, u, delta);
}

double phi_tilde(double u, double e) {
  const double a = std::abs(u);
  if (a <= 1.0 - e) return u * u;
  if (a <= 1.0) return (2.0 * a - a * a) / e - (1.0 - e) * (e + 1.0 / e);
  return 1.0 + e * e - e;
}

double phi_prime_tilde(double u, double e) {
  const double a = std::abs(u);
  const double s = u < 0.0 ? -1.0 : 1.0;
  if (a <= 1.0 - e) return 2.0 * u;
  if (a <= 1.0) return s * 2.0 * (1.0 - a) / e;
  return 0.0;
}

double phi_bar(double u, double e) {
  const double a = std::abs(u);
  if (a <= 1.0) return u * u;
  if (a <= 1.0 + e) return (2.0 * (1.0 + e) * a - a * a) / e - (1.0 + 1.0 / e);
  return 1.0 + e;
}

double phi_prime_bar(double u, double e) {
  const double a = std::abs(u);
  const double s = u < 0.0 ? -1.0 : 1.0;
  if (a <= 1.0) return 2.0 * u;
  if (a <= 1.0 + e) return s * 2.0 * (1.0 + e - a) / e;
  return 0.0;
}

double phi_quad(double u, double e) {
  const double a = std::abs(u);
  if (a <= 1.0) return 0.5 * (2.0 - e) * u * u;
  if (a <= 1.0 + e) return (2.0 - e) / e * ((1.0 + e) * (a - 0.5) - 0.5 * a * a);
  return 0.5 * (2.0 - e) * (1.0 + e);
}

double phi_prime_quad(double u, double e) {
  const double a = std::abs(u);
  const double s = u < 0.0 ? -1.0 : 1.0;
  if (a <= 1.0) return (2.0 - e) * u;
  if (a <= 1.0 + e) return s * (2.0 - e) / e * (1.0 + e - a);
  return 0.0;
}

double parse_positive(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw ParameterError("malformed " + std::string(what) + " value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

PotentialSpec PotentialSpec::tilde(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ParameterError("tilde potential requires 0 < eps < 1");
  return {PotentialKind::Tilde, eps};
}

PotentialSpec PotentialSpec::bar(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("bar potential requires eps > 0");
  return {PotentialKind::Bar, eps};
}

PotentialSpec PotentialSpec::quad(double eps) {
  if (!(eps > 0.0) || !(eps < 2.0)) throw ParameterError("quad potential requires 0 < eps < 2");
  return {PotentialKind::Quad, eps};
}

PotentialSpec PotentialSpec::mollified(double delta) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw ParameterError("mollified potential requires 0 < delta < 1");
  }
  return {PotentialKind::Mollified, delta};
}

double PotentialSpec::outer_width() const noexcept {
  switch (kind_) {
    case PotentialKind::Bar:
    case PotentialKind::Quad:
    case PotentialKind::Mollified:
      return param_;
    default:
      return 0.0;
  }
}

double phi(const PotentialSpec& spec, double u) {
  const double e = spec.parameter();
  switch (spec.kind()) {
    case PotentialKind::Exact: return phi_exact(u);
    case PotentialKind::Tilde: return phi_tilde(u, e);
    case PotentialKind::Bar: return phi_bar(u, e);
    case PotentialKind::Quad: return phi_quad(u, e);
    case PotentialKind::Mollified: return phi_mollified(u, e);
  }
  return 0.0;
}

double phi_prime(const PotentialSpec& spec, double u) {
  const double e = spec.parameter();
  switch (spec.kind()) {
    case PotentialKind::Exact: return phi_prime_exact(u);
    case PotentialKind::Tilde: return phi_prime_tilde(u, e);
    case PotentialKind::Bar: return phi_prime_bar(u, e);
    case PotentialKind::Quad: return phi_prime_quad(u, e);
    case PotentialKind::Mollified: return phi_prime_mollified(u, e);
  }
  return 0.0;
}

double phi_prime_bound(const PotentialSpec& spec) {
  return spec.kind() == PotentialKind::Quad ? 2.0 - spec.parameter() : 2.0;
}

PotentialSpec parse_potential(std::string_view text) {
  if (text == "exact") return PotentialSpec::exact();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("unknown potential '" + std::string(text) + "'");
  }
  const auto name = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  if (name == "tilde") return PotentialSpec::tilde(parse_positive(arg, "eps"));
  if (name == "bar") return PotentialSpec::bar(parse_positive(arg, "eps"));
  if (name == "quad") return PotentialSpec::quad(parse_positive(arg, "eps"));
  if (name == "mollified") return PotentialSpec::mollified(parse_positive(arg, "delta"));
  throw ParameterError("unknown potential '" + std::string(text) + "'");
}

std::string to_string(const PotentialSpec& spec) {
  const char* name = "exact";
  switch (spec.kind()) {
    case PotentialKind::Exact: return "exact";
    case PotentialKind::Tilde: name = "tilde"; break;
    case PotentialKind::Bar: name = "bar"; break;
    case PotentialKind::Quad: name = "quad"; break;
    case PotentialKind::Mollified: name = "mollified"; break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%.17g", name, spec.parameter());
  return buf;
}

AssumptionReport check_assumptions(const PotentialSpec& spec, std::size_t n_samples) {
  if (n_samples < 16) throw ParameterError("check_assumptions needs at least 16 samples");
  constexpr double tol = 1e-12;
  const double lo = -3.0;
  const double hi = 3.0;
  const double h = (hi - lo) / static_cast<double>(n_samples - 1);

  std::vector<double> us(n_samples), f(n_samples), fp(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    us[k] = lo + h * static_cast<double>(k);
    f[k] = phi(spec, us[k]);
    fp[k] = phi_prime(spec, us[k]);
  }

  AssumptionReport rep;
  rep.sampled_points = n_samples;
  for (double d : fp) rep.sup_phi_prime = std::max(rep.sup_phi_prime, std::abs(d));

  rep.continuous = true;
  for (std::size_t k = 0; k + 1 < n_samples; ++k) {
    const double mid = phi_prime(spec, 0.5 * (us[k] + us[k + 1]));
    const double lip = std::max({std::abs(fp[k]), std::abs(fp[k + 1]), std::abs(mid)});
    if (std::abs(f[k + 1] - f[k]) > 2.0 * lip * h + tol) rep.continuous = false;
  }

  const double edge = 1.0 + spec.outer_width();
  rep.constant_outside = true;
  const double right_plateau = phi(spec, hi);
  const double left_plateau = phi(spec, lo);
  for (std::size_t k = 0; k < n_samples; ++k) {
    if (us[k] > edge && std::abs(f[k] - right_plateau) > tol) rep.constant_outside = false;
    if (us[k] < -edge && std::abs(f[k] - left_plateau) > tol) rep.constant_outside = false;
  }

  rep.convex_inside = true;
  rep.monotone_pieces = true;
  for (std::size_t k = 1; k + 1 < n_samples; ++k) {
    if (us[k - 1] >= -1.0 && us[k + 1] <= 1.0 && f[k] > 0.5 * (f[k - 1] + f[k + 1]) + tol) {
      rep.convex_inside = false;
    }
  }
  for (std::size_t k = 0; k + 1 < n_samples; ++k) {
    if (us[k] >= -1.0 && us[k + 1] <= 0.0 && f[k + 1] > f[k] + tol) rep.monotone_pieces = false;
    if (us[k] >= 0.0 && us[k + 1] <= 1.0 && f[k + 1] < f[k] - tol) rep.monotone_pieces = false;
  }

  const double f1 = phi(spec, 1.0);
  const double left = (3.0 * f1 - 4.0 * phi(spec, 1.0 - h) + phi(spec, 1.0 - 2.0 * h)) / (2.0 * h);
  const double right = (-3.0 * f1 + 4.0 * phi(spec, 1.0 + h) - phi(spec, 1.0 + 2.0 * h)) / (2.0 * h);
  rep.jump_at_one = std::max(0.0, left - right);
  return rep;
}

}  // namespace adhestring
