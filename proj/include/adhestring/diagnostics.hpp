#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adhestring/potentials.hpp"
#include "adhestring/state.hpp"

namespace adhestring {

/// Trapezoid-rule energy of one snapshot: ∫v²/2, ∫w²/2 and ∫Φ(u) over [0, L].
EnergyBreakdown energy(const WaveState& state, const PotentialSpec& pot, double dx);

struct DissipationReport {
  bool passed = true;
  double tolerance = 0.0;
  double initial_energy = 0.0;
  double max_violation = 0.0;  // max over t of E(t) − E(0); may be negative
  double max_violation_time = 0.0;
  double max_dissipation_rate = 0.0;  // largest −dE/dt between consecutive rows
  double max_dissipation_rate_time = 0.0;
};

/// Checks E(t) <= E(0) + tol over the record's energy series.
DissipationReport check_dissipation(const SolutionRecord& record, double tol);

struct CharacteristicMap;

/// Discrete residual of the entropy balance for η = |Z|²/2, q = −z₁z₂,
/// Z = (v, w, u), on the interior nodes of a dense record. Rows of `values`
/// follow the snapshots; the first and last rows and the end columns are 0.
struct EntropyResidual {
  std::size_t levels = 0;
  std::size_t nx = 0;
  std::vector<double> values;
  std::vector<double> smoothed;  // one pass of the (1/4, 1/2, 1/4) kernel in x
  double max_abs_smooth_region = 0.0;
  double positive_integral = 0.0;  // ∫∫ max(smoothed, 0)
  double negative_integral = 0.0;  // ∫∫ min(smoothed, 0)
  std::size_t excluded_points = 0;

  double at(std::size_t n, std::size_t i) const { return values[n * nx + i]; }
};

/// Throws ConfigError unless the record has stride 1. Points within
/// `exclusion_cells` grid cells of a point of `singular` are left out of
/// max_abs_smooth_region.
EntropyResidual entropy_residual(const SolutionRecord& record, const PotentialSpec& pot,
                                 const CharacteristicMap* singular = nullptr,
                                 std::size_t exclusion_cells = 3);

/// Tensor-product bump φ(t, x) = β((t − t0)/rt)·β((x − x0)/rx) with
/// β(r) = exp(1 − 1/(1 − r²)) on |r| < 1.
struct TestFunction {
  double t0 = 0.0;
  double x0 = 0.0;
  double rt = 1.0;
  double rx = 1.0;

  double value(double t, double x) const;
  double d_t(double t, double x) const;
  double d_tt(double t, double x) const;
  double d_x(double t, double x) const;
};

double bump(double r);
double bump_prime(double r);
double bump_second(double r);

/// Seeded bank of `count` bumps whose time support ends before t_end and whose
/// spatial centers lie in [0, length]. Identical seeds give identical banks on
/// every platform.
std::vector<TestFunction> make_test_bank(std::size_t count, std::uint64_t seed, double t_end,
                                         double length);

struct WeakResidual {
  double residual = 0.0;
  double scale = 0.0;  // same integrals taken over the absolute values of the integrands
};

/// Left side of the weak formulation
///   ∫∫ (u φ_tt + u_x φ_x + Φ′(u) φ) − ∫ u₁ φ(0, ·) + ∫ u₀ φ_t(0, ·)
/// for each test function, with trapezoid quadrature on the snapshot grid.
/// The Φ′(u)φ time integral is split where u crosses |u| = 1 inside a step.
std::vector<WeakResidual> weak_residual(const SolutionRecord& record, const PotentialSpec& pot,
                                        std::span<const TestFunction> bank);

enum class SingularKind { jump, kink };
enum class SingularField { velocity, strain };

struct SingularPoint {
  double t = 0.0;
  double x = 0.0;
  double strength = 0.0;
  double threshold = 0.0;
  SingularKind kind = SingularKind::kink;
  SingularField field = SingularField::velocity;
  std::size_t level = 0;  // snapshot index
  long segment = -1;      // index into CharacteristicMap::segments, −1 if unchained
};

/// Least-squares line x = intercept + slope·t through chained points.
struct FittedSegment {
  std::vector<std::size_t> points;
  double slope = 0.0;
  double intercept = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  double rms = 0.0;
};

struct DetectorSettings {
  double theta_jump = 8.0;
  double theta_kink = 8.0;
  std::size_t min_segment_points = 8;
  std::size_t max_gap_levels = 2;
  // A flagged difference must be the largest within this many cells; keeps
  // the dispersive ripples trailing a sharp feature from being reported.
  std::size_t suppression_cells = 8;
  // Passes of a (1/4, 1/2, 1/4) average applied to v and w before differencing.
  std::size_t smoothing_passes = 1;
};

struct CharacteristicMap {
  std::vector<SingularPoint> points;
  std::vector<FittedSegment> segments;
  DetectorSettings settings;
  // Absolute thresholds actually applied: {velocity, strain}.
  double jump_threshold[2] = {0.0, 0.0};
  double kink_threshold[2] = {0.0, 0.0};
};

/// Flags large first (jump) and second (kink) spatial differences of v and w,
/// relative to their median over the record, then chains the flagged points
/// into segments and fits their slopes.
CharacteristicMap detect_singularities(const SolutionRecord& record,
                                       const DetectorSettings& settings = {});

struct SlopeReport {
  bool passed = true;
  std::size_t checked = 0;
  std::vector<std::size_t> offenders;  // segment indices
  double max_deviation = 0.0;
};

/// Each fitted slope must lie within tol of −1, 0 or 1.
SlopeReport verify_slopes(const CharacteristicMap& map, double tol);

struct ConeReport {
  double t0 = 0.0;
  double x0 = 0.0;
  double epsilon = 0.0;
  bool found_below = false;  // some sample with |u| < 1
  bool found_above = false;  // some sample with |u| > 1
  std::size_t samples = 0;
};

/// Samples the truncated backward cone
///   ∪_{max(t0−ε,0) ≤ t ≤ t0} (max(0, x0 − ε + (t − t0)), min(x0 + ε − (t − t0), L))
/// on the record's grid. Throws ResolutionError when no node falls inside.
ConeReport verify_cone_condition(const SolutionRecord& record, double t0, double x0,
                                 double epsilon);

}  // namespace adhestring
