#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "adhestring/errors.hpp"
#include "adhestring/initial_conditions.hpp"

using namespace adhestring;
using doctest::Approx;

// Oracle values: 30-digit evaluation of the arc formulas (mpmath), a = 6, L = 10.
namespace {
constexpr double kB6 = 0.125740488122614962148679802708;
constexpr double kB10 = 0.230475697756582393716909907022;
}  // namespace

TEST_CASE("normalization constant of the arc family") {
  CHECK(eval_b(6.0, 10.0) == Approx(kB6).epsilon(1e-13));
  CHECK(eval_b(10.0, 10.0) == Approx(kB10).epsilon(1e-13));
  // a = L: denominator (1 - √3/4 - π/6)·L²
  const double hand = 1.0 / ((1.0 - std::sqrt(3.0) / 4.0 - std::numbers::pi / 6.0) * 100.0);
  CHECK(eval_b(10.0, 10.0) == Approx(hand).epsilon(1e-13));
  CHECK_THROWS_AS(eval_b(5.0, 10.0), ParameterError);
  CHECK_THROWS_AS(eval_b(4.0, 10.0), ParameterError);
}

TEST_CASE("arc profile") {
  CHECK(eval_c(0.0, 6.0, 10.0) == 0.0);
  CHECK(eval_c(2.5, 6.0, 10.0) == Approx(0.446097164871180147).epsilon(1e-13));
  CHECK(eval_c(5.0, 6.0, 10.0) == Approx(3.97644392403207850).epsilon(1e-13));
  CHECK(eval_c(7.5, 6.0, 10.0) == Approx(7.50679068319297686).epsilon(1e-13));
  CHECK(eval_c(10.0, 6.0, 10.0) == Approx(7.95288784806415701).epsilon(1e-13));
  // b·c runs from 0 to 1, passing 1/2 at the middle
  CHECK(kB6 * eval_c(5.0, 6.0, 10.0) == Approx(0.5).epsilon(1e-13));
  CHECK(kB6 * eval_c(10.0, 6.0, 10.0) == Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(eval_c(-0.1, 6.0, 10.0), ParameterError);
  CHECK_THROWS_AS(eval_c(10.1, 6.0, 10.0), ParameterError);
}

TEST_CASE("arc profile is continuous at the middle") {
  for (double a : {5.2, 6.0, 8.0, 20.0}) {
    CAPTURE(a);
    const double left = eval_c(5.0, a, 10.0);
    const double right = eval_c(std::nextafter(5.0, 10.0), a, 10.0);
    CHECK(right == Approx(left).epsilon(1e-12));
  }
}

TEST_CASE("closed-form slope of the arc profile") {
  struct Row {
    double x, slope;
  };
  const Row rows[] = {{1.0, 0.0839202169003839574},
                      {2.5, 0.545643942682142794},
                      {4.0, 1.52786404500042061},
                      {6.0, 1.52786404500042061},
                      {8.5, 0.190524980688874672}};
  for (const auto& r : rows) {
    CAPTURE(r.x);
    CHECK(eval_c_prime(r.x, 6.0, 10.0) == Approx(r.slope).epsilon(1e-12));
  }
  CHECK(eval_c_prime(0.0, 6.0, 10.0) == Approx(0.0).epsilon(1e-15));
  CHECK(eval_c_prime(10.0, 6.0, 10.0) == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("sampled families") {
  const double L = 10.0;
  const InitialCondition c2(C2Cubic{0.006, 1.2}, L);
  CHECK(evaluate(c2, 0.0).u0 == 0.0);
  CHECK(evaluate(c2, 0.0).u1 == 1.2);
  CHECK(evaluate(c2, L).u0 == Approx(-0.006 * L * L * L / 6.0).epsilon(1e-14));

  const InitialCondition moll(MollifiedQuadratic{0.5, 1.4, 0.3}, L);
  CHECK(evaluate(moll, 0.0).u0 == 0.0);
  CHECK(evaluate(moll, L).u0 == Approx(0.0).epsilon(1e-15));
  // f_η oracle: 1 at the middle, 2x²/((L/2 − η)L) on the left branch
  CHECK(evaluate(moll, 5.0).u0 == Approx(0.5).epsilon(1e-14));
  CHECK(evaluate(moll, 1.0).u0 == Approx(0.5 * 0.0425531914893617021).epsilon(1e-14));
  CHECK(evaluate(moll, 4.8).u0 == Approx(0.5 * 0.973333333333333286).epsilon(1e-13));
  CHECK(evaluate(moll, 9.0).u0 == Approx(0.5 * 0.0425531914893617021).epsilon(1e-13));

  const InitialCondition mid(C1ArcShiftMiddle{0.7, -1.2, 6.0}, L);
  CHECK(evaluate(mid, 5.0).u0 == Approx(1.0).epsilon(1e-13));
  CHECK(evaluate(mid, 0.0).u0 == Approx(0.65).epsilon(1e-14));
  CHECK(evaluate(mid, 3.0).u1 == -1.2);

  const InitialCondition half(C1ArcShiftHalf{0.7, -1.2, 6.0}, L);
  CHECK(evaluate(half, 5.0).u0 == Approx(0.7).epsilon(1e-13));
  CHECK(evaluate(half, L).u0 == Approx(1.05).epsilon(1e-13));

  const InitialCondition arc(C1Arc{0.7, 1.1, 6.0}, L);
  CHECK(evaluate(arc, L).u0 == Approx(0.7).epsilon(1e-13));

  const InitialCondition vel(C1ArcVelocity{0.7, 0.8, 6.0}, L);
  CHECK(evaluate(vel, 2.5).u1 == Approx(0.8 * kB6 * 0.545643942682142794).epsilon(1e-12));

  const InitialCondition uni(Uniform{1.1, 0.1}, L);
  const std::vector<double> xs{0.0, 2.0, 7.0, 10.0};
  const auto s = sample_ic(uni, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(s.u0[i] == 1.1);
    CHECK(s.u1[i] == 0.1);
  }
}

TEST_CASE("family parameter domains") {
  CHECK_THROWS_AS(InitialCondition(C1Arc{0.7, 1.1, 5.0}, 10.0), ParameterError);
  CHECK_THROWS_AS(InitialCondition(C1ArcVelocity{0.7, 1.1, 4.0}, 10.0), ParameterError);
  CHECK_THROWS_AS(InitialCondition(MollifiedQuadratic{0.5, 1.4, 5.0}, 10.0), ParameterError);
  CHECK_THROWS_AS(InitialCondition(MollifiedQuadratic{0.5, 1.4, 0.0}, 10.0), ParameterError);
  CHECK_THROWS_AS(InitialCondition(Tabulated{{0.0, 5.0}, {0.0, 1.0}, {0.0, 0.0}, ""}, 10.0),
                  ParameterError);
  CHECK_THROWS_AS(InitialCondition(Tabulated{{0.0, 6.0, 5.0, 10.0}, {0, 0, 0, 0}, {0, 0, 0, 0}, ""}, 10.0),
                  ParameterError);
}

TEST_CASE("Neumann compatibility report") {
  const auto cubic = neumann_compatibility(InitialCondition(C2Cubic{0.006, 0.0}, 10.0), 1e-6);
  CHECK(cubic.u0_compliant);
  CHECK(cubic.du0_left == Approx(0.0).epsilon(1e-6));
  CHECK(cubic.du0_right == Approx(0.0).epsilon(1e-6));

  CHECK(neumann_compatibility(InitialCondition(Uniform{1.0, 0.0}, 10.0), 1e-9).compliant());

  const auto fig2 = neumann_compatibility(InitialCondition(C2Cubic{0.006, 1.2}, 10.0), 1e-6);
  CHECK(fig2.u0_compliant);
  CHECK_FALSE(fig2.u1_compliant);
  CHECK(fig2.u1_left == 1.2);
}

TEST_CASE("config strings") {
  for (const char* s : {"c2:0.006,1.2", "c1:0.7,1.1,6", "c1mid:0.7,-1.2,6", "c1half:0.7,-1.2,6",
                        "c1vel:0.7,0.8,6", "moll:0.5,1.4,0.3", "uniform:1.1,0.1"}) {
    CAPTURE(s);
    const auto ic = parse_ic(s, 10.0);
    CHECK(to_string(parse_ic(to_string(ic), 10.0)) == to_string(ic));
  }
  const auto ic = parse_ic("c1mid:0.7,-1.2,6", 10.0);
  const auto* fam = std::get_if<C1ArcShiftMiddle>(&ic.family());
  REQUIRE(fam != nullptr);
  CHECK(fam->xi1 == -1.2);
  CHECK_THROWS_AS(parse_ic("c1:0.7,1.1", 10.0), ParameterError);
  CHECK_THROWS_AS(parse_ic("spline:1,2", 10.0), ParameterError);
  CHECK_THROWS_AS(parse_ic("c2:0.006,x", 10.0), ParameterError);
}

TEST_CASE("tabulated data from CSV") {
  const std::string path = std::string(ADHESTRING_TEST_DIR) + "/tabulated_ic.csv";
  {
    std::ofstream out(path);
    out << "x,u0,u1\n0,0,1\n5,2,1\n10,0,-1\n";
  }
  const auto ic = parse_ic("file:" + path, 10.0);
  CHECK(evaluate(ic, 2.5).u0 == Approx(1.0));
  CHECK(evaluate(ic, 7.5).u1 == Approx(0.0));
  CHECK(evaluate(ic, 10.0).u1 == -1.0);
  CHECK_THROWS(parse_ic("file:" + path + ".missing", 10.0));
}

TEST_CASE("property: arc data is monotone, finite and smooth away from the middle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a_dist(5.05, 30.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = a_dist(rng);
    CAPTURE(a);
    const double b = eval_b(a, 10.0);
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = 10.0 * i / 400.0;
      const double bc = b * eval_c(x, a, 10.0);
      CHECK(std::isfinite(bc));
      CHECK(bc >= prev - 1e-14);
      prev = bc;
    }
    for (double x : {0.7, 2.0, 3.9, 6.3, 9.1}) {
      const double h = 1e-4;
      const double fd = (eval_c(x + h, a, 10.0) - eval_c(x - h, a, 10.0)) / (2 * h);
      CHECK(fd == Approx(eval_c_prime(x, a, 10.0)).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: every family samples finite values") {
  const double L = 10.0;
  const std::vector<InitialCondition> ics = {
      InitialCondition(C2Cubic{0.006, 1.2}, L),       InitialCondition(C1Arc{0.7, 1.1, 6}, L),
      InitialCondition(C1ArcShiftMiddle{0.7, -1.2, 6}, L), InitialCondition(C1ArcShiftHalf{0.7, -1.2, 6}, L),
      InitialCondition(C1ArcVelocity{0.7, 0.8, 6}, L), InitialCondition(MollifiedQuadratic{0.5, 1.4, 0.3}, L),
      InitialCondition(Uniform{0.0, 2.0}, L)};
  std::vector<double> xs;
  for (int i = 0; i <= 1000; ++i) xs.push_back(L * i / 1000.0);
  for (const auto& ic : ics) {
    const auto s = sample_ic(ic, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(std::isfinite(s.u0[i]));
      CHECK(std::isfinite(s.u1[i]));
    }
  }
}

TEST_CASE("property: f_eta is continuous where its branches meet") {
  for (double eta : {0.05, 0.3, 1.0, 4.0}) {
    CAPTURE(eta);
    const InitialCondition ic(MollifiedQuadratic{1.0, 0.0, eta}, 10.0);
    for (double x : {5.0 - eta, 5.0 + eta}) {
      const double left = evaluate(ic, std::nextafter(x, 0.0)).u0;
      const double right = evaluate(ic, x).u0;
      CHECK(right == Approx(left).epsilon(1e-10));
    }
  }
}
