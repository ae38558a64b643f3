#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "adhestring/initial_conditions.hpp"
#include "adhestring/kernels.hpp"
#include "adhestring/potentials.hpp"
#include "adhestring/state.hpp"

namespace adhestring {

using kernels::Exec;
using kernels::SourceMode;

struct LeapfrogOptions {
  SourceMode source = SourceMode::gradient;
  std::size_t stride = 1;
  Exec exec = Exec::parallel;
};

/// Explicit three-level scheme
///   uⁿ⁺¹ = 2uⁿ − uⁿ⁻¹ + λ²(uⁿᵢ₊₁ − 2uⁿᵢ + uⁿᵢ₋₁) − dt²·S
/// with mirrored ghosts for the Neumann ends and a Taylor first step.
/// S = Φ′(uⁿ) in pointwise mode; in gradient mode S is the secant slope of Φ
/// between uⁿ⁻¹ and uⁿ⁺¹, which makes the staggered energy
///   ½|(uⁿ⁺¹−uⁿ)/dt|² + ½⟨Dx uⁿ⁺¹, Dx uⁿ⟩ + ½ Σ (Φ(uⁿ⁺¹)+Φ(uⁿ))
/// an exact invariant of the discrete flow. energy_series[0] is the energy of
/// the initial data; entry k ≥ 1 is that staggered energy at t = (k − ½)dt.
///
/// Throws ConfigError on a CFL violation and BlowupError on non-finite values.
SolutionRecord solve_leapfrog(const Grid1D& grid, const PotentialSpec& pot,
                              const InitialCondition& ic, const LeapfrogOptions& opts = {});

enum class SplitSource { euler, midpoint };

/// Called after every source sub-step with the strain array before and after
/// it (extended grid).
using SplitObserver =
    std::function<void(std::size_t step, std::span<const double> z2_before,
                       std::span<const double> z2_after)>;

struct SplitOptions {
  SplitSource source = SplitSource::euler;
  std::size_t stride = 1;
  Exec exec = Exec::parallel;
  SplitObserver observer;
};

/// Lie splitting of Zₜ + A Zₓ = B(Z), Z = (∂t u, ∂x u, u), on the even
/// 2L-periodic extension: exact one-node characteristic transport followed
/// by an ODE step for B(Z) = (−Φ′(z₃), 0, z₁). Requires courant == 1.
/// The energy series uses (z₁, z₂, z₃) directly.
SolutionRecord solve_characteristic_split(const Grid1D& grid, const PotentialSpec& pot,
                                          const InitialCondition& ic,
                                          const SplitOptions& opts = {});

struct PicardOptions {
  double tolerance = 1e-10;
  Exec exec = Exec::parallel;
};

/// Fixed point of the d'Alembert/Duhamel representation
///   u = (ũ₀(x+t) + ũ₀(x−t))/2 + ½∫ũ₁ − ½∬_cone Φ′(u)
/// iterated from u ≡ 0 on the grid levels with tₙ ≤ t_max. Throws
/// IterationLimitError when k_iters iterations do not reach the tolerance.
SolutionRecord solve_dalembert_picard(const Grid1D& grid, const PotentialSpec& pot,
                                      const InitialCondition& ic, double t_max,
                                      std::size_t k_iters, const PicardOptions& opts = {});

/// Space-time displacement table for the Picard map: `levels` rows of nx values.
struct SpaceTimeField {
  std::size_t levels = 0;
  std::size_t nx = 0;
  std::vector<double> values;
  double at(std::size_t n, std::size_t i) const { return values[n * nx + i]; }
};

/// One application of the Picard map to `current`.
SpaceTimeField picard_map(const Grid1D& grid, const PotentialSpec& pot,
                          const InitialCondition& ic, const SpaceTimeField& current,
                          Exec exec = Exec::parallel);

/// Even 2L-periodic extension of nodal values on [0, L] to the 2(nx−1) nodes
/// of [−L, L): ext[e] = u[|e − (nx−1)|].
std::vector<double> extend_even_periodic(std::span<const double> u);
/// Odd counterpart, used for the strain: ext(x) = sign(x)·w(|x|).
std::vector<double> extend_odd_periodic(std::span<const double> w);
/// Inverse of the extensions: the nodes of [0, L].
std::vector<double> restrict_to_domain(std::span<const double> ext, std::size_t nx);

}  // namespace adhestring
