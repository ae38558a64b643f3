#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "adhestring/cli_io.hpp"
#include "adhestring/errors.hpp"
#include "adhestring/experiments.hpp"

namespace adhestring {

namespace fs = std::filesystem;

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<ConeReport> cone_reports(const SolutionRecord& rec, const CharacteristicMap& map) {
  std::vector<ConeReport> out;
  const double eps = 10.0 * rec.grid.dx();
  for (const auto& p : map.points) {
    try {
      out.push_back(verify_cone_condition(rec, p.t, p.x, eps));
    } catch (const ResolutionError&) {
    }
  }
  return out;
}

int diagnose_and_write(const RunConfig& config, const SolutionRecord& rec,
                       const PotentialSpec& pot, const fs::path& dir, std::ostream& log) {
  const auto dense_every = rec.stride == 1 ? config.stride : 1;
  write_fields(rec, (dir / "fields.csv").string(), dense_every);
  if (config.diagnostics.energy) write_energy(rec.energy_series, (dir / "energy.csv").string());
  write_text(dir / "config.txt", serialize_config(config));

  std::string report;
  report += "solver: " + to_string(config.solver) + "\n";
  report += "potential: " + to_string(pot) + "\n";
  report += "ic: " + rec.ic_descriptor + "\n";
  report += "snapshots: " + std::to_string(rec.snapshots.size()) + "\n";
  int status = exit_code::ok;

  if (config.diagnostics.dissipation) {
    const double e0 = rec.energy_series.front().total;
    const auto d = check_dissipation(rec, dissipation_tolerance(e0, rec.grid.dt()));
    report += "dissipation: " + std::string(d.passed ? "pass" : "FAIL") +
              " max_excess=" + number(d.max_violation) + " tol=" + number(d.tolerance) + "\n";
    if (!d.passed) status = exit_code::diagnostic;
  }

  CharacteristicMap map;
  const bool need_map = config.diagnostics.singularities || config.diagnostics.cone ||
                        config.diagnostics.entropy;
  if (need_map) {
    DetectorSettings settings;
    settings.theta_jump = config.theta_jump;
    settings.theta_kink = config.theta_kink;
    map = detect_singularities(rec, settings);
  }
  if (config.diagnostics.singularities) {
    write_singularities(map, (dir / "singularities.csv").string());
    report += "singular_points: " + std::to_string(map.points.size()) +
              " segments: " + std::to_string(map.segments.size()) + "\n";
  }
  if (config.diagnostics.cone) {
    const auto cones = cone_reports(rec, map);
    write_cone_reports(cones, (dir / "cone_reports.csv").string());
    std::size_t both = 0;
    for (const auto& c : cones) both += (c.found_below && c.found_above) ? 1 : 0;
    report += "cone_checks: " + std::to_string(cones.size()) + " both_sides: " +
              std::to_string(both) + "\n";
  }
  std::vector<std::pair<std::string, double>> rows;
  if (config.diagnostics.entropy) {
    const auto r = entropy_residual(rec, pot, &map);
    rows.emplace_back("entropy_max_abs_smooth_region", r.max_abs_smooth_region);
    rows.emplace_back("entropy_positive_integral", r.positive_integral);
    rows.emplace_back("entropy_negative_integral", r.negative_integral);
  }
  if (config.diagnostics.weak) {
    const double t_end = rec.snapshots.back().t;
    const auto bank = make_test_bank(16, config.seed, t_end, rec.grid.length);
    const auto res = weak_residual(rec, pot, bank);
    double worst = 0.0;
    for (const auto& r : res) worst = std::max(worst, r.scale > 0.0 ? std::abs(r.residual) / r.scale : 0.0);
    rows.emplace_back("weak_bank_size", static_cast<double>(res.size()));
    rows.emplace_back("weak_max_relative_residual", worst);
  }
  if (!rows.empty()) write_residual_summary(rows, (dir / "residual_summary.csv").string());
  write_text(dir / "report.txt", report);
  log << report;
  return status;
}

int figure_experiment(const std::string& name, const fs::path& dir, std::ostream& log) {
  const auto res = run_paper_figure(name);
  write_fields(res.record, (dir / "fields.csv").string(), 10);
  write_energy(res.record.energy_series, (dir / "energy.csv").string());
  write_singularities(res.map, (dir / "singularities.csv").string());
  const auto& ev = res.events;
  std::string report = "scenario: " + name + "\n";
  report += "ic: " + res.record.ic_descriptor + "\n";
  report += "max_u: " + number(ev.max_u) + "\nmin_u: " + number(ev.min_u) + "\n";
  report += "first_above_time: " + number(ev.first_above_time) + "\n";
  report += "reentry_time: " + number(ev.reentry_time) + "\n";
  report += "max_min_abs_u: " + number(ev.max_min_abs) + "\n";
  report += "segments: " + std::to_string(ev.segments) +
            " from_middle: " + std::to_string(ev.segments_from_middle) + "\n";
  report += "max_energy_excess: " + number(res.dissipation.max_violation) + "\n";
  for (const auto& [what, ok] : res.checks) report += (ok ? "pass: " : "FAIL: ") + what + "\n";
  write_text(dir / "report.txt", report);
  log << report;
  return res.passed() ? exit_code::ok : exit_code::diagnostic;
}

int reg_experiment(const fs::path& dir, std::ostream& log) {
  const auto spec = make_experiment("ex_reg");
  const auto& run = spec.runs.front();
  const auto rec = solve_leapfrog(spec.grid, run.potential, run.ic, LeapfrogOptions{});
  double err = 0.0, drift = 0.0;
  for (const auto& s : rec.snapshots) {
    for (double u : s.u) err = std::max(err, std::abs(u - reg_displacement(s.t)));
  }
  const double e_ref = 2.0 * spec.grid.length;
  for (const auto& e : rec.energy_series) drift = std::max(drift, std::abs(e.total - e_ref));
  write_fields(rec, (dir / "fields.csv").string(), 10);
  write_energy(rec.energy_series, (dir / "energy.csv").string());
  write_singularities(detect_singularities(rec), (dir / "singularities.csv").string());
  const bool ok = err <= 5e-3 && drift <= 1e-3 * e_ref;
  const std::string report = "scenario: ex_reg\nsup_error: " + number(err) +
                             "\nmax_energy_drift: " + number(drift) + "\n" +
                             (ok ? "pass" : "FAIL") + ": closed-form agreement\n";
  write_text(dir / "report.txt", report);
  log << report;
  return ok ? exit_code::ok : exit_code::diagnostic;
}

int comparison_experiment(const std::string& name, const fs::path& dir, std::ostream& log) {
  const auto spec = make_experiment(name);
  const double t_end = spec.grid.final_time;
  ComparisonReport rep;
  if (name == "ex1_regularization") {
    rep = run_nonuniqueness_regularization(spec.epsilon_sequence, t_end, spec.grid);
  } else if (name == "ex2_initialdata") {
    rep = run_nonuniqueness_initialdata(spec.epsilon_sequence, t_end, spec.grid);
  } else {
    rep = run_noncontinuous_dependence(spec.epsilon_sequence, t_end, spec.grid);
  }
  // Fields and energy of the first run at the smallest ε.
  const auto& first = spec.runs[spec.runs.size() - 2];
  const auto rec = solve_leapfrog(spec.grid, first.potential, first.ic, LeapfrogOptions{});
  write_fields(rec, (dir / "fields.csv").string(), 10);
  write_energy(rec.energy_series, (dir / "energy.csv").string());
  write_singularities(detect_singularities(rec), (dir / "singularities.csv").string());

  bool ok = true;
  std::string report = "scenario: " + name + "\n";
  report += "epsilon,error_a,error_b,ode_error_a,ode_error_b,distance,initial_distance,energy_a,expected_energy_a,energy_b,expected_energy_b\n";
  for (const auto& e : rep.entries) {
    report += number(e.epsilon) + "," + number(e.error_a) + "," + number(e.error_b) + "," +
              number(e.ode_error_a) + "," + number(e.ode_error_b) + "," + number(e.distance) +
              "," + number(e.initial_distance) + "," + number(e.energy_a) + "," +
              number(e.expected_energy_a) + "," + number(e.energy_b) + "," +
              number(e.expected_energy_b) + "\n";
    ok = ok && e.dissipation_a.passed && e.dissipation_b.passed && e.error_a <= 1e-2 &&
         e.error_b <= 1e-2;
  }
  report += "extrapolated_distance: " + number(rep.extrapolated_distance) + "\n";
  report += std::string(ok ? "pass" : "FAIL") + ": closed-form agreement and dissipation\n";
  write_text(dir / "report.txt", report);
  log << report;
  return ok ? exit_code::ok : exit_code::diagnostic;
}

}  // namespace

std::string output_root(const std::string& fallback) {
  if (const char* env = std::getenv("ADHESTRING_OUT"); env != nullptr && *env != '\0') return env;
  return fallback;
}

SolutionRecord solve(const RunConfig& config) {
  const auto grid = config.grid();
  const auto pot = parse_potential(config.potential);
  const auto ic = parse_ic(config.ic, config.length);
  const std::size_t stride = config.diagnostics.needs_dense() ? 1 : config.stride;
  switch (config.solver) {
    case SolverKind::leapfrog:
      return solve_leapfrog(grid, pot, ic, LeapfrogOptions{config.leapfrog_source, stride, Exec::parallel});
    case SolverKind::charsplit: {
      SplitOptions opts;
      opts.source = config.split_source;
      opts.stride = stride;
      return solve_characteristic_split(grid, pot, ic, opts);
    }
    case SolverKind::picard:
      return solve_dalembert_picard(grid, pot, ic, config.final_time, config.picard_iters);
  }
  throw ConfigError("unknown solver");
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    const auto rec = solve(config);
    const fs::path dir = output_root(config.output);
    ensure_dir(dir);
    return diagnose_and_write(config, rec, parse_potential(config.potential), dir, log);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const ParameterError& e) {
    log << "config error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const BlowupError& e) {
    log << "solver error: " << e.what() << '\n';
    return exit_code::blowup;
  } catch (const IterationLimitError& e) {
    log << "solver error: " << e.what() << '\n';
    return exit_code::blowup;
  } catch (const IoError& e) {
    log << "i/o error: " << e.what() << '\n';
    return exit_code::io;
  }
}

int run_experiment(const std::string& name, const std::string& root, std::ostream& log) {
  try {
    const fs::path dir = fs::path(root) / name;
    ensure_dir(dir);
    const auto figures = figure_names();
    if (std::find(figures.begin(), figures.end(), name) != figures.end()) {
      return figure_experiment(name, dir, log);
    }
    if (name == "ex_reg") return reg_experiment(dir, log);
    (void)make_experiment(name);
    return comparison_experiment(name, dir, log);
  } catch (const ConfigError& e) {
    log << "usage error: " << e.what() << '\n';
    return exit_code::config;
  } catch (const BlowupError& e) {
    log << "solver error: " << e.what() << '\n';
    return exit_code::blowup;
  } catch (const IoError& e) {
    log << "i/o error: " << e.what() << '\n';
    return exit_code::io;
  }
}

}  // namespace adhestring
