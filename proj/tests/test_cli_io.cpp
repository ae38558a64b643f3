#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "adhestring/cli_io.hpp"
#include "adhestring/errors.hpp"
#include "adhestring/experiments.hpp"

using namespace adhestring;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(ADHESTRING_TEST_DIR) / "cli_io" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::size_t error_line(std::string_view text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

// Runs `config` with ADHESTRING_OUT pointing at `dir`.
int run_into(RunConfig config, const fs::path& dir, std::string* log = nullptr) {
  ::setenv("ADHESTRING_OUT", dir.c_str(), 1);
  std::ostringstream out;
  const int rc = run(config, out);
  ::unsetenv("ADHESTRING_OUT");
  if (log) *log = out.str();
  return rc;
}

}  // namespace

TEST_CASE("config defaults") {
  const auto c = parse_config("");
  CHECK(c.length == 10.0);
  CHECK(c.nx == 1001);
  CHECK(c.courant == 0.9);
  CHECK(c.final_time == 3.0);
  CHECK(c.solver == SolverKind::leapfrog);
  CHECK(c.potential == "exact");
  CHECK(c.stride == 10);
  CHECK(c.seed == 42);
  CHECK(c == RunConfig{});
  CHECK(parse_config("# only a comment\n\n   \n") == RunConfig{});
  CHECK(parse_config("solver = charsplit").courant == 1.0);
}

TEST_CASE("config errors carry the line number") {
  CHECK_THROWS_AS(parse_config("courant = 1.5"), ConfigError);
  CHECK(error_line("courant = 1.5") == 1);
  CHECK(error_line("nx = 201\n\n# c\ncourant = 1.5\n") == 4);
  CHECK(error_line("nx = 201\nbogus = 3\n") == 2);
  CHECK(error_line("nx = 201\nnx = 301\n") == 2);
  CHECK(error_line("T = abc") == 1);
  CHECK(error_line("nx = -5") == 1);
  CHECK(error_line("just words") == 1);
  CHECK(error_line("solver = euler") == 1);
  CHECK(error_line("diagnostics = energy,plots") == 1);
  CHECK(error_line("L = 10\npotential = tilde:2") == 2);
  CHECK(error_line("ic = spiral:1") == 1);
  CHECK(error_line("solver = charsplit\ncourant = 0.5") == 2);
}

TEST_CASE("config for the initial-data example") {
  const auto c = parse_config("potential = quad:0.05\nic = uniform:0.95,0\nT = 2\nnx = 201\n");
  CHECK(c.potential == "quad:0.05");
  const auto rec = solve(c);
  const auto rep = run_nonuniqueness_initialdata({0.05}, 2.0, c.grid());
  double err = 0.0;
  for (const auto& s : rec.snapshots)
    err = std::max(err, std::abs(s.u[50] - 0.95 * std::cos(std::sqrt(1.95) * s.t)));
  CHECK(err <= rep.entries.front().error_a + 1e-12);
  CHECK(err < 2e-3);
}

TEST_CASE("property: serialize then parse is the identity") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const char* potentials[] = {"exact", "tilde:0.25", "bar:0.001", "quad:0.05", "mollified:0.1"};
  const char* ics[] = {"c2:0.006,1.2", "uniform:0.95,0", "c1:0.7,1.1,6"};
  for (int k = 0; k < 300; ++k) {
    RunConfig c;
    c.length = 1.0 + 20.0 * unit(rng);
    c.nx = 8 + static_cast<std::size_t>(5000 * unit(rng));
    c.solver = static_cast<SolverKind>(rng() % 3);
    c.courant = c.solver == SolverKind::charsplit ? 1.0 : 0.05 + 0.95 * unit(rng);
    c.final_time = 0.1 + 30.0 * unit(rng);
    c.potential = potentials[rng() % 5];
    c.ic = ics[rng() % 3];
    if (c.ic == "c1:0.7,1.1,6") c.length = 10.0;
    c.stride = 1 + rng() % 100;
    c.diagnostics = {bool(rng() & 1), bool(rng() & 2), bool(rng() & 4), bool(rng() & 8), bool(rng() & 16), bool(rng() & 32)};
    c.seed = rng();
    c.output = "out" + std::to_string(k);
    c.leapfrog_source = rng() & 1 ? SourceMode::gradient : SourceMode::pointwise;
    c.split_source = rng() & 1 ? SplitSource::euler : SplitSource::midpoint;
    c.picard_iters = 1 + rng() % 500;
    c.theta_jump = 0.5 + 20.0 * unit(rng);
    c.theta_kink = 0.5 + 20.0 * unit(rng);
    CAPTURE(serialize_config(c));
    const auto back = parse_config(serialize_config(c));
    CHECK(back == c);
    CHECK(serialize_config(back) == serialize_config(c));
  }
}

TEST_CASE("field files round trip exactly") {
  const auto dir = scratch("fields");
  SolutionRecord rec;
  rec.grid = Grid1D{1.0, 3, 0.9, 1.0};
  rec.snapshots = {
      {0.0, {0.1, 1.0 / 3.0, -2e-300}, {1e300, 0.0, -0.0}, {std::nextafter(1.0, 2.0), 5.0, 6.0}},
      {0.45, {7.0, 8.0, 9.0}, {0.3, 0.7, 1e-17}, {-1.0, -2.0, -3.0}},
  };
  const auto path = (dir / "f.csv").string();
  write_fields(rec, path);
  CHECK(line_count(path) == 7);
  CHECK(slurp(path).rfind("t,x,u,v,w\n", 0) == 0);
  const auto back = read_fields(path);
  REQUIRE(back.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back[k].t == rec.snapshots[k].t);
    CHECK(back[k].u == rec.snapshots[k].u);
    CHECK(back[k].v == rec.snapshots[k].v);
    CHECK(back[k].w == rec.snapshots[k].w);
  }
  CHECK_THROWS_AS(write_fields(rec, (dir / "missing" / "f.csv").string()), IoError);
  CHECK_THROWS_AS(read_fields((dir / "nope.csv").string()), IoError);
}

TEST_CASE("energy file has one row per time level") {
  const auto dir = scratch("energy");
  const Grid1D g{10.0, 101, 0.9, 1.0};
  const auto rec = solve_leapfrog(g, PotentialSpec::exact(), InitialCondition(Uniform{0.5, 0.0}, 10.0));
  write_energy(rec.energy_series, (dir / "energy.csv").string());
  CHECK(line_count(dir / "energy.csv") == g.nt() + 2);
  CHECK(slurp(dir / "energy.csv").rfind("t,kinetic,elastic,adhesive,total\n", 0) == 0);
}

TEST_CASE("run exit codes") {
  RunConfig base;
  base.nx = 201;
  base.final_time = 1.0;
  SUBCASE("defaults succeed and write their files") {
    const auto dir = scratch("ok");
    CHECK(run_into(base, dir) == exit_code::ok);
    for (const char* f : {"fields.csv", "energy.csv", "singularities.csv", "config.txt", "report.txt"})
      CHECK(fs::exists(dir / f));
    CHECK(parse_config(slurp(dir / "config.txt")) == base);
  }
  SUBCASE("every diagnostic enabled") {
    const auto dir = scratch("all");
    auto c = base;
    c.diagnostics = {true, true, true, true, true, true};
    CHECK(run_into(c, dir) == exit_code::ok);
    CHECK(fs::exists(dir / "cone_reports.csv"));
    CHECK(fs::exists(dir / "residual_summary.csv"));
  }
  SUBCASE("unbounded growth is not a blowup") {
    const auto dir = scratch("growth");
    auto c = base;
    c.ic = "uniform:1.1,0.1";
    c.final_time = 20.0;
    CHECK(run_into(c, dir) == exit_code::ok);
  }
  SUBCASE("non-finite fields report a blowup") {
    const auto dir = scratch("blowup");
    {
      std::ofstream t(dir / "huge.csv");
      t << "x,u0,u1\n0,0,0\n5,1e308,0\n10,-1e308,0\n";
    }
    auto c = base;
    c.ic = "file:" + (dir / "huge.csv").string();
    std::string log;
    CHECK(run_into(c, dir, &log) == exit_code::blowup);
    CHECK(log.find("solver error") != std::string::npos);
  }
  SUBCASE("energy growth is a diagnostic failure") {
    // the explicit Euler source gains energy at first order in dt
    auto c = base;
    c.final_time = 0.5;
    c.solver = SolverKind::charsplit;
    c.courant = 1.0;
    c.diagnostics = {true, true, false, false, false, false};
    const auto dir = scratch("gain");
    CHECK(run_into(c, dir) == exit_code::diagnostic);
    CHECK(slurp(dir / "report.txt").find("dissipation: FAIL") != std::string::npos);
  }
  SUBCASE("other solvers") {
    auto c = base;
    c.final_time = 0.5;
    c.diagnostics = {true, true, false, false, false, false};
    c.solver = SolverKind::charsplit;
    c.courant = 1.0;
    c.split_source = SplitSource::midpoint;
    CHECK(run_into(c, scratch("split")) == exit_code::ok);
    c.solver = SolverKind::picard;
    c.courant = 0.9;
    c.nx = 101;
    CHECK(run_into(c, scratch("picard")) == exit_code::ok);
  }
}

TEST_CASE("identical configs give byte-identical outputs") {
  RunConfig c;
  c.nx = 201;
  c.final_time = 1.5;
  c.diagnostics.weak = true;
  const auto a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(run_into(c, a) == exit_code::ok);
  REQUIRE(run_into(c, b) == exit_code::ok);
  for (const char* f : {"fields.csv", "energy.csv", "singularities.csv", "residual_summary.csv", "report.txt"})
    CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("output root and manifests") {
  ::unsetenv("ADHESTRING_OUT");
  CHECK(output_root("fallback") == "fallback");
  ::setenv("ADHESTRING_OUT", "/tmp/elsewhere", 1);
  CHECK(output_root("fallback") == "/tmp/elsewhere");
  ::unsetenv("ADHESTRING_OUT");

  const auto dir = scratch("manifest");
  {
    std::ofstream m(dir / "list.manifest");
    m << "# scenarios\nfig2_c2\n\n  ex_reg  # trailing\n";
  }
  CHECK(read_manifest((dir / "list.manifest").string()) == std::vector<std::string>{"fig2_c2", "ex_reg"});
  CHECK_THROWS_AS(read_manifest((dir / "absent").string()), IoError);

  const auto shipped = read_manifest(std::string(ADHESTRING_SOURCE_DIR) + "/experiments.manifest");
  for (const auto& name : shipped) CHECK_NOTHROW(make_experiment(name));

  std::ostringstream log;
  CHECK(run_experiment("no_such_scenario", dir.string(), log) == exit_code::config);
  CHECK(run_experiment("ex_reg", dir.string(), log) == exit_code::ok);
  for (const char* f : {"fields.csv", "energy.csv", "singularities.csv", "report.txt"})
    CHECK(fs::exists(dir / "ex_reg" / f));
}
