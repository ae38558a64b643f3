#include "adhestring/initial_conditions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "adhestring/errors.hpp"

namespace adhestring {

namespace {

void require_arc(double a, double length) {
  if (!(length > 0.0)) throw ParameterError("length must be positive");
  if (!(a > 0.5 * length)) throw ParameterError("arc families require a > L/2");
}

// Common denominator −(L/4)√(4a²−L²) − a² arctan(L/√(4a²−L²)) + aL; equals c(L).
double arc_total(double a, double length) {
  const double root = std::sqrt(4.0 * a * a - length * length);
  return -0.25 * length * root - a * a * std::atan(length / root) + a * length;
}

double interpolate(const Tabulated& tab, const std::vector<double>& values, double x) {
  const auto it = std::upper_bound(tab.x.begin(), tab.x.end(), x);
  if (it == tab.x.begin()) return values.front();
  if (it == tab.x.end()) return values.back();
  const auto k = static_cast<std::size_t>(it - tab.x.begin());
  const double s = (x - tab.x[k - 1]) / (tab.x[k] - tab.x[k - 1]);
  return (1.0 - s) * values[k - 1] + s * values[k];
}

double f_eta(double x, double eta, double length) {
  const double m = 0.5 * length - eta;
  const double scale = 2.0 / (m * length);
  if (x < m) return scale * x * x;
  if (x < 0.5 * length + eta) {
    const double r = m / eta;
    return scale * (-r * x * x + length * r * x - length * m * m / (2.0 * eta));
  }
  return scale * (x - length) * (x - length);
}

struct Evaluator {
  double x;
  double length;

  InitialValue operator()(const C2Cubic& p) const {
    return {p.xi0 * (x * x * x / 3.0 - length * x * x / 2.0), p.xi1};
  }
  InitialValue operator()(const C1Arc& p) const {
    return {p.xi0 * eval_b(p.a, length) * eval_c(x, p.a, length), p.xi1};
  }
  InitialValue operator()(const C1ArcShiftMiddle& p) const {
    return {p.xi0 * (-0.5 + eval_b(p.a, length) * eval_c(x, p.a, length)) + 1.0, p.xi1};
  }
  InitialValue operator()(const C1ArcShiftHalf& p) const {
    return {p.xi0 * (0.5 + eval_b(p.a, length) * eval_c(x, p.a, length)), p.xi1};
  }
  InitialValue operator()(const C1ArcVelocity& p) const {
    const double b = eval_b(p.a, length);
    return {p.xi0 * (-0.5 + b * eval_c(x, p.a, length)) + 1.0,
            p.xi1 * b * eval_c_prime(x, p.a, length)};
  }
  InitialValue operator()(const MollifiedQuadratic& p) const {
    return {p.xi0 * f_eta(x, p.eta, length), p.xi1};
  }
  InitialValue operator()(const Uniform& p) const { return {p.u0, p.u1}; }
  InitialValue operator()(const Tabulated& p) const {
    return {interpolate(p, p.u0, x), interpolate(p, p.u1, x)};
  }
};

std::vector<double> parse_numbers(std::string_view text, std::size_t expected,
                                  std::string_view family) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || ptr != piece.data() + piece.size()) {
      throw ParameterError("malformed number '" + std::string(piece) + "' in ic '" +
                           std::string(family) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) {
    throw ParameterError("ic '" + std::string(family) + "' expects " + std::to_string(expected) +
                         " parameters");
  }
  return out;
}

std::string join(const char* name, std::initializer_list<double> values) {
  std::string out = name;
  out += ':';
  bool first = true;
  for (double v : values) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) out += ',';
    out += buf;
    first = false;
  }
  return out;
}

}  // namespace

InitialCondition::InitialCondition(IcFamily family, double length)
    : family_(std::move(family)), length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("length must be positive");
  std::visit(
      [length](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, C1Arc> || std::is_same_v<T, C1ArcShiftMiddle> ||
                      std::is_same_v<T, C1ArcShiftHalf> || std::is_same_v<T, C1ArcVelocity>) {
          require_arc(p.a, length);
        } else if constexpr (std::is_same_v<T, MollifiedQuadratic>) {
          if (!(p.eta > 0.0) || !(p.eta < 0.5 * length)) {
            throw ParameterError("mollified quadratic requires 0 < eta < L/2");
          }
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          if (p.x.size() < 2 || p.u0.size() != p.x.size() || p.u1.size() != p.x.size()) {
            throw ParameterError("tabulated ic needs equal-length columns with >= 2 rows");
          }
          for (std::size_t k = 1; k < p.x.size(); ++k) {
            if (!(p.x[k] > p.x[k - 1])) throw ParameterError("tabulated x must be strictly increasing");
          }
          const double slack = 1e-12 * length;
          if (p.x.front() > slack || p.x.back() < length - slack) {
            throw ParameterError("tabulated x must cover [0, L]");
          }
        }
      },
      family_);
}

double eval_b(double a, double length) {
  require_arc(a, length);
  return 1.0 / arc_total(a, length);
}

double eval_c(double x, double a, double length) {
  require_arc(a, length);
  if (x < 0.0 || x > length) throw ParameterError("eval_c: x outside [0, L]");
  if (x <= 0.5 * length) {
    const double root = std::sqrt(a * a - x * x);
    // x² − a² < 0 throughout [0, L/2], so the principal arctan is continuous here.
    return -0.5 * x * root + 0.5 * a * a * std::atan(x * root / (x * x - a * a)) + a * x;
  }
  const double y = length - x;
  const double root = std::sqrt(a * a - y * y);
  return arc_total(a, length) - a * length +
         0.5 * (y * root + a * a * std::atan(y / root) + 2.0 * a * x);
}

double eval_c_prime(double x, double a, double length) {
  require_arc(a, length);
  if (x < 0.0 || x > length) throw ParameterError("eval_c_prime: x outside [0, L]");
  const double y = x <= 0.5 * length ? x : length - x;
  return a - std::sqrt(a * a - y * y);
}

InitialValue evaluate(const InitialCondition& ic, double x) {
  return std::visit(Evaluator{x, ic.length()}, ic.family());
}

SampledData sample_ic(const InitialCondition& ic, std::span<const double> x) {
  SampledData out;
  out.u0.resize(x.size());
  out.u1.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || x[i] > ic.length()) throw ParameterError("sample_ic: x outside [0, L]");
    const auto v = evaluate(ic, x[i]);
    out.u0[i] = v.u0;
    out.u1[i] = v.u1;
  }
  return out;
}

NeumannReport neumann_compatibility(const InitialCondition& ic, double tolerance) {
  const double length = ic.length();
  double h = 1e-4 * length;
  if (const auto* tab = std::get_if<Tabulated>(&ic.family())) {
    h = std::min(tab->x[1] - tab->x[0], tab->x.back() - tab->x[tab->x.size() - 2]);
    h = std::min(h, 0.5 * length);
  }
  auto u0 = [&](double x) { return evaluate(ic, x).u0; };
  NeumannReport rep;
  rep.du0_left = (-3.0 * u0(0.0) + 4.0 * u0(h) - u0(2.0 * h)) / (2.0 * h);
  rep.du0_right = (3.0 * u0(length) - 4.0 * u0(length - h) + u0(length - 2.0 * h)) / (2.0 * h);
  rep.u1_left = evaluate(ic, 0.0).u1;
  rep.u1_right = evaluate(ic, length).u1;
  rep.u0_compliant = std::abs(rep.du0_left) <= tolerance && std::abs(rep.du0_right) <= tolerance;
  rep.u1_compliant = std::abs(rep.u1_left) <= tolerance && std::abs(rep.u1_right) <= tolerance;
  return rep;
}

InitialCondition parse_ic(std::string_view text, double length) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParameterError("malformed ic '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto args = text.substr(colon + 1);
  if (name == "file") {
    if (args.empty()) throw ParameterError("ic 'file' needs a path");
    return {read_tabulated_csv(std::string(args)), length};
  }
  if (name == "c2") {
    const auto v = parse_numbers(args, 2, name);
    return {C2Cubic{v[0], v[1]}, length};
  }
  if (name == "uniform") {
    const auto v = parse_numbers(args, 2, name);
    return {Uniform{v[0], v[1]}, length};
  }
  if (name == "moll") {
    const auto v = parse_numbers(args, 3, name);
    return {MollifiedQuadratic{v[0], v[1], v[2]}, length};
  }
  const auto v = parse_numbers(args, 3, name);
  if (name == "c1") return {C1Arc{v[0], v[1], v[2]}, length};
  if (name == "c1mid") return {C1ArcShiftMiddle{v[0], v[1], v[2]}, length};
  if (name == "c1half") return {C1ArcShiftHalf{v[0], v[1], v[2]}, length};
  if (name == "c1vel") return {C1ArcVelocity{v[0], v[1], v[2]}, length};
  throw ParameterError("unknown ic family '" + std::string(name) + "'");
}

std::string to_string(const InitialCondition& ic) {
  struct Printer {
    std::string operator()(const C2Cubic& p) const { return join("c2", {p.xi0, p.xi1}); }
    std::string operator()(const C1Arc& p) const { return join("c1", {p.xi0, p.xi1, p.a}); }
    std::string operator()(const C1ArcShiftMiddle& p) const {
      return join("c1mid", {p.xi0, p.xi1, p.a});
    }
    std::string operator()(const C1ArcShiftHalf& p) const {
      return join("c1half", {p.xi0, p.xi1, p.a});
    }
    std::string operator()(const C1ArcVelocity& p) const {
      return join("c1vel", {p.xi0, p.xi1, p.a});
    }
    std::string operator()(const MollifiedQuadratic& p) const {
      return join("moll", {p.xi0, p.xi1, p.eta});
    }
    std::string operator()(const Uniform& p) const { return join("uniform", {p.u0, p.u1}); }
    std::string operator()(const Tabulated& p) const {
      return p.source.empty() ? std::string("table:") + std::to_string(p.x.size()) + "rows"
                              : "file:" + p.source;
    }
  };
  return std::visit(Printer{}, ic.family());
}

Tabulated read_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ic table '" + path + "'");
  Tabulated tab;
  tab.source = path;
  std::string line;
  if (!std::getline(in, line)) throw IoError("ic table '" + path + "' is empty");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, u0 = 0.0, u1 = 0.0;
    if (!(row >> x >> u0 >> u1)) {
      throw IoError("ic table '" + path + "': malformed row " + std::to_string(lineno));
    }
    tab.x.push_back(x);
    tab.u0.push_back(u0);
    tab.u1.push_back(u1);
  }
  return tab;
}

}  // namespace adhestring
