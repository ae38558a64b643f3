#include "adhestring/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adhestring/errors.hpp"

namespace adhestring {

namespace {

constexpr double kLength = 10.0;

struct FigureDefaults {
  const char* name;
  double final_time;
  IcFamily family;
};

std::vector<FigureDefaults> figure_table() {
  return {
      {"fig2_c2", 10.0, C2Cubic{0.006, 1.2}},
      {"fig4_c1_v11", 3.0, C1Arc{0.7, 1.1, 6.0}},
      {"fig6_c1_v14", 3.0, C1Arc{0.7, 1.4, 6.0}},
      {"fig8_c1middle", 3.0, C1ArcShiftMiddle{0.7, -1.2, 6.0}},
      {"fig10_c1half", 3.0, C1ArcShiftHalf{0.7, -1.2, 6.0}},
      {"fig12_c1double", 3.0, C1ArcVelocity{0.7, 0.8, 6.0}},
      {"fig14_moll", 3.0, MollifiedQuadratic{0.5, 1.4, 0.3}},
  };
}

IcFamily with_xi1(IcFamily family, double xi1) {
  std::visit(
      [xi1](auto& p) {
        if constexpr (requires { p.xi1; }) {
          p.xi1 = xi1;
        } else {
          throw ParameterError("scenario has no initial velocity scale");
        }
      },
      family);
  return family;
}

const std::vector<double> kDefaultEpsilons = {0.1, 0.01, 0.001};

double sup_against(const SolutionRecord& rec, const std::function<double(double)>& exact) {
  double err = 0.0;
  for (const auto& s : rec.snapshots) {
    const double ref = exact(s.t);
    for (double u : s.u) err = std::max(err, std::abs(u - ref));
  }
  return err;
}

double sup_between(const SolutionRecord& a, const SolutionRecord& b) {
  double d = 0.0;
  const std::size_t n = std::min(a.snapshots.size(), b.snapshots.size());
  for (std::size_t k = 0; k < n; ++k) {
    const auto& ua = a.snapshots[k].u;
    const auto& ub = b.snapshots[k].u;
    for (std::size_t i = 0; i < ua.size(); ++i) d = std::max(d, std::abs(ua[i] - ub[i]));
  }
  return d;
}

double ode_sup_error(const PotentialSpec& pot, double u0, double u1, double t_end, double dt,
                     const std::function<double(double)>& exact) {
  const auto path = integrate_uniform_ode(pot, u0, u1, t_end, dt, dt / 100.0);
  double err = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    err = std::max(err, std::abs(path[k].first - exact(static_cast<double>(k) * dt)));
  }
  return err;
}

double l2_distance(const InitialCondition& a, const InitialCondition& b, const Grid1D& grid) {
  const auto x = grid.nodes();
  const auto da = sample_ic(a, x);
  const auto db = sample_ic(b, x);
  const double dx = grid.dx();
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double wgt = (i == 0 || i + 1 == x.size()) ? 0.5 * dx : dx;
    s0 += wgt * (da.u0[i] - db.u0[i]) * (da.u0[i] - db.u0[i]);
    s1 += wgt * (da.u1[i] - db.u1[i]) * (da.u1[i] - db.u1[i]);
  }
  return std::sqrt(s0) + std::sqrt(s1);
}

struct PairCase {
  PotentialSpec pot_a, pot_b;
  Uniform data_a, data_b;
  std::function<double(double)> exact_a, exact_b;
  double energy_a, energy_b;  // per unit length
};

ComparisonReport run_pairs(const std::string& name, const std::vector<double>& eps,
                           double t_end, Grid1D grid,
                           const std::function<PairCase(double)>& make) {
  validate_epsilons(eps);
  grid.final_time = t_end;
  ComparisonReport rep;
  rep.name = name;
  const LeapfrogOptions opts{SourceMode::gradient, 1, Exec::parallel};
  for (std::size_t k = 0; k < eps.size(); ++k) {
    const auto c = make(eps[k]);
    const InitialCondition ic_a(c.data_a, grid.length);
    const InitialCondition ic_b(c.data_b, grid.length);
    const auto ra = solve_leapfrog(grid, c.pot_a, ic_a, opts);
    const auto rb = solve_leapfrog(grid, c.pot_b, ic_b, opts);
    ComparisonEntry e;
    e.epsilon = eps[k];
    e.error_a = sup_against(ra, c.exact_a);
    e.error_b = sup_against(rb, c.exact_b);
    e.ode_error_a = ode_sup_error(c.pot_a, c.data_a.u0, c.data_a.u1, t_end, grid.dt(), c.exact_a);
    e.ode_error_b = ode_sup_error(c.pot_b, c.data_b.u0, c.data_b.u1, t_end, grid.dt(), c.exact_b);
    e.distance = sup_between(ra, rb);
    e.initial_distance = l2_distance(ic_a, ic_b, grid);
    e.energy_a = ra.energy_series.front().total;
    e.energy_b = rb.energy_series.front().total;
    e.expected_energy_a = c.energy_a * grid.length;
    e.expected_energy_b = c.energy_b * grid.length;
    e.dissipation_a = check_dissipation(ra, dissipation_tolerance(e.energy_a, grid.dt()));
    e.dissipation_b = check_dissipation(rb, dissipation_tolerance(e.energy_b, grid.dt()));
    rep.entries.push_back(e);
    if (k + 1 == eps.size()) {
      const std::size_t n = std::min(ra.energy_series.size(), rb.energy_series.size());
      for (std::size_t j = 0; j < n; ++j) {
        rep.energy_gap.emplace_back(ra.energy_series[j].t,
                                    ra.energy_series[j].total - rb.energy_series[j].total);
      }
    }
  }
  const auto& ent = rep.entries;
  if (ent.size() >= 2) {
    const auto& p = ent[ent.size() - 2];
    const auto& q = ent.back();
    const double slope = (p.distance - q.distance) / (p.epsilon - q.epsilon);
    rep.extrapolated_distance = std::max(0.0, q.distance - slope * q.epsilon);
  } else if (!ent.empty()) {
    rep.extrapolated_distance = ent.back().distance;
  }
  return rep;
}

}  // namespace

void validate_epsilons(const std::vector<double>& eps) {
  if (eps.empty()) throw ParameterError("epsilon sequence is empty");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw ParameterError("epsilon values must be positive");
    if (k > 0 && !(eps[k] < eps[k - 1])) {
      throw ParameterError("epsilon sequence must be strictly decreasing");
    }
  }
}

double reg_displacement(double t) {
  const double crossing = std::numbers::pi / (4.0 * std::numbers::sqrt2);
  if (t <= crossing) return std::numbers::sqrt2 * std::sin(std::numbers::sqrt2 * t);
  return std::numbers::sqrt2 * t + 1.0 - std::numbers::pi / 4.0;
}

double reg_velocity(double t) {
  const double crossing = std::numbers::pi / (4.0 * std::numbers::sqrt2);
  if (t <= crossing) return 2.0 * std::cos(std::numbers::sqrt2 * t);
  return std::numbers::sqrt2;
}

SolutionRecord make_reg_record(const Grid1D& grid) {
  grid.validate();
  SolutionRecord rec;
  rec.grid = grid;
  rec.potential = PotentialSpec::exact();
  rec.ic_descriptor = "uniform:0,2";
  rec.stride = 1;
  const std::size_t nt = grid.nt();
  for (std::size_t n = 0; n <= nt; ++n) {
    WaveState s;
    s.t = static_cast<double>(n) * grid.dt();
    s.u.assign(grid.nx, reg_displacement(s.t));
    s.v.assign(grid.nx, reg_velocity(s.t));
    s.w.assign(grid.nx, 0.0);
    rec.energy_series.push_back(energy(s, rec.potential, grid.dx()));
    rec.snapshots.push_back(std::move(s));
  }
  return rec;
}

std::vector<std::pair<double, double>> integrate_uniform_ode(const PotentialSpec& pot, double u0,
                                                             double u1, double t_end,
                                                             double sample_dt, double h) {
  if (!(h > 0.0) || !(sample_dt > 0.0)) throw ParameterError("ODE steps must be positive");
  const auto per_sample = static_cast<std::size_t>(std::max(1.0, std::round(sample_dt / h)));
  const double step = sample_dt / static_cast<double>(per_sample);
  const auto samples = static_cast<std::size_t>(std::floor(t_end / sample_dt + 1e-9));
  std::vector<std::pair<double, double>> out;
  out.reserve(samples + 1);
  double u = u0, v = u1;
  out.emplace_back(u, v);
  for (std::size_t k = 0; k < samples; ++k) {
    for (std::size_t j = 0; j < per_sample; ++j) {
      const double k1u = v, k1v = -phi_prime(pot, u);
      const double k2u = v + 0.5 * step * k1v, k2v = -phi_prime(pot, u + 0.5 * step * k1u);
      const double k3u = v + 0.5 * step * k2v, k3v = -phi_prime(pot, u + 0.5 * step * k2u);
      const double k4u = v + step * k3v, k4v = -phi_prime(pot, u + step * k3u);
      u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    out.emplace_back(u, v);
  }
  return out;
}

ComparisonReport run_nonuniqueness_regularization(const std::vector<double>& eps, double t_end,
                                                  Grid1D grid) {
  for (double e : eps) {
    if (e > 0.5) throw ParameterError("regularization study needs epsilon <= 0.5");
  }
  return run_pairs("ex1_regularization", eps, t_end, grid, [](double e) {
    return PairCase{PotentialSpec::tilde(e),
                    PotentialSpec::bar(e),
                    {1.0, 0.0},
                    {1.0, 0.0},
                    [](double) { return 1.0; },
                    [](double t) { return std::cos(std::numbers::sqrt2 * t); },
                    1.0 + e * e - e,
                    1.0};
  });
}

ComparisonReport run_nonuniqueness_initialdata(const std::vector<double>& eps, double t_end,
                                               Grid1D grid) {
  for (double e : eps) {
    if (e > 0.5) throw ParameterError("initial-data study needs epsilon <= 0.5");
  }
  return run_pairs("ex2_initialdata", eps, t_end, grid, [](double e) {
    return PairCase{PotentialSpec::quad(e),
                    PotentialSpec::quad(e),
                    {1.0 - e, 0.0},
                    {1.0 + e, 0.0},
                    [e](double t) { return (1.0 - e) * std::cos(std::sqrt(2.0 - e) * t); },
                    [e](double) { return 1.0 + e; },
                    (2.0 - e) * (1.0 - e) * (1.0 - e) / 2.0,
                    (2.0 - e) * (1.0 + e) / 2.0};
  });
}

ComparisonReport run_noncontinuous_dependence(const std::vector<double>& eps, double t_end,
                                              Grid1D grid) {
  for (double e : eps) {
    if (e > 0.5) throw ParameterError("continuity study needs epsilon <= 0.5");
  }
  return run_pairs("ex3_noncontinuous", eps, t_end, grid, [](double e) {
    return PairCase{PotentialSpec::exact(),
                    PotentialSpec::exact(),
                    {1.0 + e, e},
                    {1.0 - e, 0.0},
                    [e](double t) { return e * t + 1.0 + e; },
                    [e](double t) { return (1.0 - e) * std::cos(std::numbers::sqrt2 * t); },
                    (e * e + 2.0) / 2.0,
                    (1.0 - e) * (1.0 - e)};
  });
}

bool FigureResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::vector<std::string> figure_names() {
  std::vector<std::string> out;
  for (const auto& f : figure_table()) out.emplace_back(f.name);
  return out;
}

std::vector<std::string> scenario_names() {
  auto out = figure_names();
  out.insert(out.end(), {"ex_reg", "ex1_regularization", "ex2_initialdata", "ex3_noncontinuous"});
  return out;
}

ExperimentSpec make_experiment(const std::string& name, const FigureOptions& opts) {
  ExperimentSpec spec;
  spec.name = name;
  spec.grid.length = kLength;
  if (opts.nx) spec.grid.nx = *opts.nx;
  if (opts.courant) spec.grid.courant = *opts.courant;
  for (const auto& f : figure_table()) {
    if (name != f.name) continue;
    spec.grid.final_time = f.final_time;
    const auto family = opts.xi1 ? with_xi1(f.family, *opts.xi1) : f.family;
    spec.runs.push_back({name, PotentialSpec::exact(), InitialCondition(family, kLength)});
    spec.grid.validate();
    return spec;
  }
  if (name == "ex_reg") {
    spec.grid.final_time = 2.0;
    spec.runs.push_back({name, PotentialSpec::exact(), InitialCondition(Uniform{0.0, 2.0}, kLength)});
  } else if (name == "ex1_regularization" || name == "ex2_initialdata" ||
             name == "ex3_noncontinuous") {
    spec.epsilon_sequence = kDefaultEpsilons;
    spec.grid.final_time = name == "ex3_noncontinuous" ? 20.0 : 5.0;
    for (double e : spec.epsilon_sequence) {
      const std::string tag = ":" + std::to_string(e);
      if (name == "ex1_regularization") {
        spec.runs.push_back({"tilde" + tag, PotentialSpec::tilde(e), InitialCondition(Uniform{1.0, 0.0}, kLength)});
        spec.runs.push_back({"bar" + tag, PotentialSpec::bar(e), InitialCondition(Uniform{1.0, 0.0}, kLength)});
      } else if (name == "ex2_initialdata") {
        spec.runs.push_back({"below" + tag, PotentialSpec::quad(e), InitialCondition(Uniform{1.0 - e, 0.0}, kLength)});
        spec.runs.push_back({"above" + tag, PotentialSpec::quad(e), InitialCondition(Uniform{1.0 + e, 0.0}, kLength)});
      } else {
        spec.runs.push_back({"growing" + tag, PotentialSpec::exact(), InitialCondition(Uniform{1.0 + e, e}, kLength)});
        spec.runs.push_back({"bounded" + tag, PotentialSpec::exact(), InitialCondition(Uniform{1.0 - e, 0.0}, kLength)});
      }
    }
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  spec.grid.validate();
  return spec;
}

double dissipation_tolerance(double initial_energy, double dt) {
  return 1e-3 * initial_energy + 10.0 * dt * dt * initial_energy;
}

std::size_t count_segments_from(const CharacteristicMap& map, double x0, double reach,
                                double start_by, double slope_tol) {
  std::size_t count = 0;
  for (const auto& s : map.segments) {
    if (std::abs(s.intercept - x0) <= reach && s.t_begin <= start_by &&
        std::abs(std::abs(s.slope) - 1.0) <= slope_tol) {
      ++count;
    }
  }
  return count;
}

FigureEvents figure_events(const SolutionRecord& record, const CharacteristicMap& map) {
  FigureEvents ev;
  if (record.snapshots.empty()) return ev;
  ev.max_u = ev.min_u = record.snapshots.front().u.front();
  std::vector<char> was_above(record.grid.nx, 0);
  for (const auto& s : record.snapshots) {
    double min_abs = std::abs(s.u.front());
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      const double u = s.u[i];
      ev.max_u = std::max(ev.max_u, u);
      ev.min_u = std::min(ev.min_u, u);
      min_abs = std::min(min_abs, std::abs(u));
      if (u > 1.0) {
        if (ev.first_above_time < 0.0) ev.first_above_time = s.t;
        was_above[i] = 1;
      } else if (u < 1.0 && was_above[i] && ev.reentry_time < 0.0) {
        ev.reentry_time = s.t;
      }
    }
    ev.max_min_abs = std::max(ev.max_min_abs, min_abs);
  }
  ev.segments = map.segments.size();
  ev.segments_from_middle = count_segments_from(map, 0.5 * record.grid.length, 0.25, 0.3, 0.1);
  return ev;
}

FigureResult run_paper_figure(const std::string& name, const FigureOptions& opts) {
  const auto names = figure_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw ConfigError("unknown figure scenario '" + name + "'");
  }
  FigureResult res{name, make_experiment(name, opts), {}, {}, {}, {}, {}};
  const auto& run = res.spec.runs.front();
  res.record = solve_leapfrog(res.spec.grid, run.potential, run.ic,
                              LeapfrogOptions{opts.source, 1, opts.exec});
  res.map = detect_singularities(res.record);
  const double e0 = res.record.energy_series.front().total;
  res.dissipation = check_dissipation(res.record, dissipation_tolerance(e0, res.spec.grid.dt()));
  res.events = figure_events(res.record, res.map);

  const auto& ev = res.events;
  res.checks.emplace_back("energy does not exceed its initial value", res.dissipation.passed);
  if (name == "fig2_c2") {
    res.checks.emplace_back("u exceeds 1", ev.max_u > 1.0);
    res.checks.emplace_back("debonded region re-enters below 1",
                            ev.first_above_time >= 0.0 && ev.reentry_time > ev.first_above_time);
  } else if (name == "fig4_c1_v11" || name == "fig6_c1_v14") {
    res.checks.emplace_back("characteristics leave (0, L/2)", ev.segments_from_middle >= 2);
  } else if (name == "fig8_c1middle") {
    res.checks.emplace_back("u reaches below -1", ev.min_u < -1.0);
  } else if (name == "fig10_c1half") {
    res.checks.emplace_back("no complete debonding", ev.max_min_abs <= 1.05);
    res.checks.emplace_back("at least two characteristic segments", ev.segments >= 2);
  } else {
    res.checks.emplace_back("characteristic segments present", ev.segments >= 1);
  }
  return res;
}

}  // namespace adhestring
