#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adhestring/diagnostics.hpp"
#include "adhestring/initial_conditions.hpp"
#include "adhestring/potentials.hpp"
#include "adhestring/solvers.hpp"
#include "adhestring/state.hpp"

namespace adhestring {

/// One solve inside an experiment.
struct ScenarioRun {
  std::string label;
  PotentialSpec potential;
  InitialCondition ic;
};

struct ExperimentSpec {
  std::string name;
  Grid1D grid;
  std::vector<ScenarioRun> runs;
  std::vector<double> epsilon_sequence;  // empty for single-scenario figures
  bool diagnostics = true;
  std::string output_dir;
};

/// Throws ParameterError unless the ε sequence is positive and strictly decreasing.
void validate_epsilons(const std::vector<double>& eps);

/// Closed form of the uniform-velocity example u(0) = 0, u_t(0) = 2 with the
/// exact potential: √2 sin(√2 t) until u reaches 1 at t = π/(4√2), then
/// √2 t + 1 − π/4.
double reg_displacement(double t);
double reg_velocity(double t);
/// Dense record of that closed form on `grid` (w ≡ 0).
SolutionRecord make_reg_record(const Grid1D& grid);

/// Classical RK4 for u″ = −Φ′(u) with step h, sampled at multiples of
/// `sample_dt` up to t_end. Returns (u, u′) per sample.
std::vector<std::pair<double, double>> integrate_uniform_ode(const PotentialSpec& pot, double u0,
                                                             double u1, double t_end,
                                                             double sample_dt, double h);

struct ComparisonEntry {
  double epsilon = 0.0;
  double error_a = 0.0;       // sup |run A − closed form A|
  double error_b = 0.0;       // sup |run B − closed form B|
  double ode_error_a = 0.0;   // sup |RK4 oracle A − closed form A|
  double ode_error_b = 0.0;
  double distance = 0.0;      // sup |run A − run B|
  double initial_distance = 0.0;  // ‖Δu₀‖_L² + ‖Δu₁‖_L²
  double energy_a = 0.0;      // E(0) of run A
  double energy_b = 0.0;
  double expected_energy_a = 0.0;
  double expected_energy_b = 0.0;
  DissipationReport dissipation_a;
  DissipationReport dissipation_b;
};

struct ComparisonReport {
  std::string name;
  std::vector<ComparisonEntry> entries;
  double extrapolated_distance = 0.0;  // linear extrapolation of `distance` to ε = 0
  std::vector<std::pair<double, double>> energy_gap;  // (t, E_A − E_B) for the last ε
};

/// Tilde(ε) vs Bar(ε) from u ≡ 1 at rest: limits 1 and cos(√2 t).
ComparisonReport run_nonuniqueness_regularization(const std::vector<double>& eps, double t_end,
                                                  Grid1D grid = {});
/// Quad(ε) from 1 − ε and from 1 + ε at rest.
ComparisonReport run_nonuniqueness_initialdata(const std::vector<double>& eps, double t_end,
                                               Grid1D grid = {});
/// Exact potential from (1 + ε, ε) and from (1 − ε, 0).
ComparisonReport run_noncontinuous_dependence(const std::vector<double>& eps, double t_end,
                                              Grid1D grid = {});

struct FigureOptions {
  std::optional<std::size_t> nx;
  std::optional<double> courant;
  std::optional<double> xi1;  // overrides the scenario's initial velocity scale
  SourceMode source = SourceMode::gradient;
  Exec exec = Exec::parallel;
};

struct FigureEvents {
  double max_u = 0.0;
  double min_u = 0.0;
  double first_above_time = -1.0;    // first t with max_x u > 1, −1 if never
  double reentry_time = -1.0;        // first t at which a node that was above 1 is back below 1
  double max_min_abs = 0.0;          // max over t of min_x |u|
  std::size_t segments = 0;
  std::size_t segments_from_middle = 0;  // slope ≈ ±1 segments starting near (0, L/2)
};

struct FigureResult {
  std::string name;
  ExperimentSpec spec;
  SolutionRecord record;
  CharacteristicMap map;
  DissipationReport dissipation;
  FigureEvents events;
  std::vector<std::pair<std::string, bool>> checks;
  bool passed() const;
};

std::vector<std::string> figure_names();
/// All scenario names accepted by the experiment runner.
std::vector<std::string> scenario_names();

/// The runs a named scenario consists of. Throws ConfigError for unknown names.
ExperimentSpec make_experiment(const std::string& name, const FigureOptions& opts = {});

/// Energy-dissipation tolerance used throughout: 1e−3·E0 + 10·dt²·E0.
double dissipation_tolerance(double initial_energy, double dt);

FigureEvents figure_events(const SolutionRecord& record, const CharacteristicMap& map);

/// Leapfrog run of a figure scenario plus its diagnostics and qualitative checks.
FigureResult run_paper_figure(const std::string& name, const FigureOptions& opts = {});

/// Segments with |slope| within `slope_tol` of 1 whose line passes within
/// `reach` of (0, L/2) and which start before t = `start_by`.
std::size_t count_segments_from(const CharacteristicMap& map, double x0, double reach,
                                double start_by, double slope_tol);

}  // namespace adhestring
