#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace adhestring {

enum class PotentialKind { Exact, Tilde, Bar, Quad, Mollified };

/// Adhesion potential Φ with debonding threshold at |u| = 1.
///
/// `Exact` is the quadratic-then-flat potential; `Tilde`, `Bar` and `Quad`
/// are the piecewise-quadratic regularizations with ramp width ε; `Mollified`
/// convolves the exact potential with a C∞ bump of radius δ.
class PotentialSpec {
 public:
  PotentialSpec() = default;

  static PotentialSpec exact() { return {}; }
  static PotentialSpec tilde(double eps);
  static PotentialSpec bar(double eps);
  static PotentialSpec quad(double eps);
  static PotentialSpec mollified(double delta);

  PotentialKind kind() const noexcept { return kind_; }
  /// ε for Tilde/Bar/Quad, δ for Mollified, 0 for Exact.
  double parameter() const noexcept { return param_; }

  /// Width of the transition zone beyond |u| = 1 (ε for Bar/Quad, δ for
  /// Mollified, 0 otherwise). Φ′ vanishes for |u| > 1 + outer_width().
  double outer_width() const noexcept;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

 private:
  PotentialSpec(PotentialKind kind, double param) : kind_(kind), param_(param) {}

  PotentialKind kind_ = PotentialKind::Exact;
  double param_ = 0.0;
};

double phi(const PotentialSpec& spec, double u);

/// Φ′(u). For Exact the closed branch |u| ≤ 1 wins at the threshold, so
/// phi_prime(exact, ±1) = ±2.
double phi_prime(const PotentialSpec& spec, double u);

/// sup |Φ′| over the real line.
double phi_prime_bound(const PotentialSpec& spec);

/// Parses `exact`, `tilde:EPS`, `bar:EPS`, `quad:EPS`, `mollified:DELTA`.
PotentialSpec parse_potential(std::string_view text);
std::string to_string(const PotentialSpec& spec);

struct AssumptionReport {
  bool continuous = false;
  bool constant_outside = false;
  bool convex_inside = false;
  bool monotone_pieces = false;
  double jump_at_one = 0.0;
  double sup_phi_prime = 0.0;
  std::size_t sampled_points = 0;
};

/// Samples Φ on a uniform grid over [-3, 3] and checks the structural
/// assumptions (continuity, flat tails, convexity and monotonicity inside).
/// Requires n_samples >= 16.
AssumptionReport check_assumptions(const PotentialSpec& spec, std::size_t n_samples);

}  // namespace adhestring
