#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "adhestring/errors.hpp"
#include "adhestring/experiments.hpp"

using namespace adhestring;
using doctest::Approx;

namespace {

const WaveState& nearest_snapshot(const SolutionRecord& rec, double t) {
  const WaveState* best = &rec.snapshots.front();
  for (const auto& s : rec.snapshots)
    if (std::abs(s.t - t) < std::abs(best->t - t)) best = &s;
  return *best;
}

bool same_record(const SolutionRecord& a, const SolutionRecord& b) {
  if (a.snapshots.size() != b.snapshots.size()) return false;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    const auto& x = a.snapshots[k];
    const auto& y = b.snapshots[k];
    if (x.t != y.t || x.u != y.u || x.v != y.v || x.w != y.w) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("epsilon sequences") {
  CHECK_NOTHROW(validate_epsilons({0.1, 0.01, 0.001}));
  CHECK_NOTHROW(validate_epsilons({0.3}));
  CHECK_THROWS_AS(validate_epsilons({}), ParameterError);
  CHECK_THROWS_AS(validate_epsilons({0.1, 0.1}), ParameterError);
  CHECK_THROWS_AS(validate_epsilons({0.01, 0.1}), ParameterError);
  CHECK_THROWS_AS(validate_epsilons({0.1, -0.01}), ParameterError);
  CHECK_THROWS_AS(run_nonuniqueness_regularization({0.6}, 1.0), ParameterError);
}

TEST_CASE("closed-form uniform debonding") {
  const double crossing = std::numbers::pi / (4.0 * std::numbers::sqrt2);
  CHECK(reg_displacement(0.0) == 0.0);
  CHECK(reg_velocity(0.0) == 2.0);
  CHECK(reg_displacement(crossing) == Approx(1.0).epsilon(1e-14));
  CHECK(reg_velocity(crossing) == Approx(std::numbers::sqrt2).epsilon(1e-14));
  // continuous through the crossing
  CHECK(reg_displacement(crossing + 1e-9) == Approx(reg_displacement(crossing - 1e-9)).epsilon(1e-8));
  CHECK(reg_displacement(2.0) == Approx(2.0 * std::numbers::sqrt2 + 1.0 - std::numbers::pi / 4.0));

  const auto rec = make_reg_record(Grid1D{10.0, 101, 0.9, 2.0});
  CHECK(rec.snapshots.size() == rec.grid.nt() + 1);
  for (const auto& e : rec.energy_series) CHECK(e.total == Approx(20.0).epsilon(1e-12));
}

TEST_CASE("ODE oracle") {
  const auto path = integrate_uniform_ode(PotentialSpec::exact(), 0.0, 2.0, 2.0, 0.01, 1e-4);
  REQUIRE(path.size() == 201);
  double err = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) err = std::max(err, std::abs(path[k].first - reg_displacement(0.01 * k)));
  CHECK(err < 1e-4);
  // smooth branch: fourth order
  const auto coarse = integrate_uniform_ode(PotentialSpec::exact(), 0.5, 0.0, 1.0, 0.1, 0.1);
  const auto fine = integrate_uniform_ode(PotentialSpec::exact(), 0.5, 0.0, 1.0, 0.1, 0.05);
  const double exact = 0.5 * std::cos(std::numbers::sqrt2);
  CHECK(std::abs(coarse.back().first - exact) / std::abs(fine.back().first - exact) > 12.0);
  CHECK_THROWS_AS(integrate_uniform_ode(PotentialSpec::exact(), 0.0, 0.0, 1.0, 0.1, 0.0), ParameterError);
}

TEST_CASE("regularized potentials select different limits") {
  const Grid1D g{10.0, 401, 0.9, 5.0};
  const auto rep = run_nonuniqueness_regularization({0.01}, 5.0, g);
  REQUIRE(rep.entries.size() == 1);
  const auto& e = rep.entries.front();
  CHECK(e.error_a <= 0.02);
  CHECK(e.error_b <= 0.02);
  CHECK(e.distance == Approx(2.0).epsilon(0.02));
  CHECK(e.energy_a == Approx((1.0 + 1e-4 - 0.01) * 10.0).epsilon(1e-10));
  CHECK(e.energy_b == Approx(10.0).epsilon(1e-10));
  CHECK(e.energy_a == Approx(e.expected_energy_a).epsilon(1e-10));
  CHECK(e.dissipation_a.passed);
  CHECK(e.dissipation_b.passed);
  CHECK(rep.energy_gap.front().second == Approx((1e-4 - 0.01) * 10.0).epsilon(1e-10));

  const auto bar = solve_leapfrog(Grid1D{10.0, 401, 0.9, 3.0}, PotentialSpec::bar(0.01), InitialCondition(Uniform{1.0, 0.0}, 10.0));
  const auto& s = nearest_snapshot(bar, std::numbers::pi / std::numbers::sqrt2);
  CHECK(s.u[200] == Approx(-1.0).epsilon(0.02));
}

TEST_CASE("initial data on either side of the threshold") {
  const double e = 0.05;
  const Grid1D g{10.0, 401, 0.9, 2.0};
  const auto rep = run_nonuniqueness_initialdata({e}, 2.0, g);
  const auto& r = rep.entries.front();
  CHECK(r.error_a < 1e-3);
  CHECK(r.error_b < 1e-12);
  CHECK(r.energy_a == Approx((2 - e) * (1 - e) * (1 - e) / 2 * 10.0).epsilon(1e-10));
  CHECK(r.energy_b == Approx(1.95 * 1.05 / 2 * 10.0).epsilon(1e-10));

  const auto below = solve_leapfrog(g, PotentialSpec::quad(e), InitialCondition(Uniform{1.0 - e, 0.0}, 10.0));
  const auto& s = nearest_snapshot(below, 1.0);
  CHECK(s.u[17] == Approx(0.95 * std::cos(std::sqrt(1.95) * s.t)).epsilon(1e-3));
  const auto above = solve_leapfrog(g, PotentialSpec::quad(e), InitialCondition(Uniform{1.0 + e, 0.0}, 10.0));
  for (const auto& snap : above.snapshots)
    for (double u : snap.u) CHECK(u == 1.05);
}

TEST_CASE("small initial distance, diverging solutions") {
  const Grid1D g{10.0, 201, 0.9, 20.0};
  const auto rep = run_noncontinuous_dependence({0.1}, 20.0, g);
  const auto& r = rep.entries.front();
  CHECK(r.initial_distance == Approx(0.3 * std::sqrt(10.0)).epsilon(1e-10));
  CHECK(r.error_a < 1e-9);

  const auto growing = solve_leapfrog(g, PotentialSpec::exact(), InitialCondition(Uniform{1.1, 0.1}, 10.0));
  CHECK(growing.snapshots.back().u[100] == Approx(0.1 * growing.snapshots.back().t + 1.1).epsilon(1e-12));
  CHECK(growing.snapshots.back().u[100] == Approx(3.1).epsilon(0.01));
  const auto bounded = solve_leapfrog(g, PotentialSpec::exact(), InitialCondition(Uniform{0.9, 0.0}, 10.0));
  for (const auto& s : bounded.snapshots)
    for (double u : s.u) CHECK(std::abs(u) <= 0.9 + 1e-12);
  CHECK(r.distance > 4.0 * r.initial_distance);
}

TEST_CASE("limit studies approach their closed forms") {
  const Grid1D g{10.0, 201, 0.9, 5.0};
  for (int which = 0; which < 2; ++which) {
    CAPTURE(which);
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.02, 0.01};
    const auto rep = which == 0 ? run_nonuniqueness_regularization(eps, 5.0, g)
                                : run_nonuniqueness_initialdata(eps, 5.0, g);
    REQUIRE(rep.entries.size() == eps.size());
    for (std::size_t k = 0; k < rep.entries.size(); ++k) {
      CHECK(rep.entries[k].distance >= 0.0);
      CHECK(rep.entries[k].dissipation_a.passed);
      CHECK(rep.entries[k].dissipation_b.passed);
    }
    CHECK(rep.extrapolated_distance >= 0.0);
  }
  // distance from the constant limit 1 shrinks with ε
  const std::vector<double> eps{0.2, 0.1, 0.05, 0.02, 0.01};
  std::vector<double> gap;
  for (double e : eps) {
    const auto rec = solve_leapfrog(g, PotentialSpec::quad(e), InitialCondition(Uniform{1.0 - e, 0.0}, 10.0));
    double d = 0.0;
    for (const auto& s : rec.snapshots) d = std::max(d, std::abs(s.u[0] - std::cos(std::numbers::sqrt2 * s.t)));
    gap.push_back(d);
  }
  for (std::size_t k = 2; k < gap.size(); ++k) CHECK(gap[k] <= gap[k - 1] + 1e-3);
}

TEST_CASE("scenario catalogue") {
  CHECK(figure_names().size() == 7);
  CHECK(scenario_names().size() == 11);
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const auto spec = make_experiment(name, {.nx = 201});
    CHECK_FALSE(spec.runs.empty());
    CHECK(spec.grid.nx == 201);
    if (!spec.epsilon_sequence.empty()) CHECK_NOTHROW(validate_epsilons(spec.epsilon_sequence));
  }
  CHECK(make_experiment("fig2_c2").grid.final_time == 10.0);
  CHECK(make_experiment("fig8_c1middle").grid.final_time == 3.0);
  CHECK_THROWS_AS(make_experiment("fig3"), ConfigError);
  CHECK_THROWS_AS(run_paper_figure("ex_reg"), ConfigError);
  CHECK(to_string(make_experiment("fig2_c2", {.xi1 = 1.0}).runs.front().ic) != to_string(make_experiment("fig2_c2").runs.front().ic));
  const auto alt = make_experiment("fig4_c1_v11", {.xi1 = 1.4});
  CHECK(to_string(alt.runs.front().ic) == to_string(make_experiment("fig6_c1_v14").runs.front().ic));
  CHECK(dissipation_tolerance(20.0, 0.1) == Approx(0.02 + 2.0));
}

TEST_CASE("figure events on a hand-built record") {
  SolutionRecord rec;
  rec.grid = Grid1D{10.0, 3, 0.9, 1.0};
  rec.snapshots = {
      {0.0, {0.5, 0.2, 0.5}, {0, 0, 0}, {0, 0, 0}},
      {0.5, {0.7, 1.2, 0.3}, {0, 0, 0}, {0, 0, 0}},
      {1.0, {-1.3, 0.9, 0.6}, {0, 0, 0}, {0, 0, 0}},
  };
  const auto ev = figure_events(rec, CharacteristicMap{});
  CHECK(ev.max_u == 1.2);
  CHECK(ev.min_u == -1.3);
  CHECK(ev.first_above_time == 0.5);
  CHECK(ev.reentry_time == 1.0);
  CHECK(ev.max_min_abs == 0.6);
  CHECK(ev.segments == 0);

  CharacteristicMap map;
  map.segments.push_back(FittedSegment{{}, 1.0, 5.0, 0.0, 1.0, 0.01});
  map.segments.push_back(FittedSegment{{}, -1.02, 5.1, 0.0, 1.0, 0.01});
  map.segments.push_back(FittedSegment{{}, 0.0, 5.0, 0.0, 1.0, 0.01});
  map.segments.push_back(FittedSegment{{}, 1.0, 5.0, 0.9, 1.0, 0.01});
  CHECK(count_segments_from(map, 5.0, 0.25, 0.3, 0.1) == 2);
}

TEST_CASE("figure scenarios at reduced resolution") {
  SUBCASE("complete debonding below -1") {
    const auto res = run_paper_figure("fig8_c1middle", {.nx = 501});
    CHECK(res.events.min_u < -1.0);
    CHECK(res.passed());
  }
  SUBCASE("partial debonding with characteristics") {
    const auto res = run_paper_figure("fig10_c1half", {.nx = 501});
    CHECK(res.events.max_min_abs <= 1.05);
    CHECK(res.events.segments >= 2);
    CHECK(res.passed());
  }
  SUBCASE("byte-reproducible") {
    const auto a = run_paper_figure("fig14_moll", {.nx = 301});
    const auto b = run_paper_figure("fig14_moll", {.nx = 301});
    CHECK(same_record(a.record, b.record));
    CHECK(a.map.points.size() == b.map.points.size());
    const auto serial = run_paper_figure("fig14_moll", {.nx = 301, .exec = Exec::serial});
    CHECK(same_record(a.record, serial.record));
  }
}

TEST_CASE("every scenario dissipates energy") {
  for (const auto& name : scenario_names()) {
    const auto spec = make_experiment(name, {.nx = 201});
    for (const auto& run : spec.runs) {
      CAPTURE(run.label);
      const auto rec = solve_leapfrog(spec.grid, run.potential, run.ic, LeapfrogOptions{SourceMode::gradient, 50, Exec::parallel});
      for (const auto& e : rec.energy_series) {
        CHECK(e.kinetic >= 0.0);
        CHECK(e.elastic >= 0.0);
        CHECK(e.adhesive >= 0.0);
      }
      const double e0 = rec.energy_series.front().total;
      CHECK(check_dissipation(rec, dissipation_tolerance(e0, spec.grid.dt())).passed);
    }
  }
}
