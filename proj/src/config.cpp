#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "adhestring/cli_io.hpp"
#include "adhestring/errors.hpp"
#include "adhestring/initial_conditions.hpp"
#include "adhestring/potentials.hpp"

namespace adhestring {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, std::size_t line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("malformed number '" + std::string(v) + "'", line);
  }
  return out;
}

template <typename Int>
Int to_integer(std::string_view v, std::size_t line) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("malformed integer '" + std::string(v) + "'", line);
  }
  return out;
}

DiagnosticToggles to_toggles(std::string_view v, std::size_t line) {
  DiagnosticToggles t{false, false, false, false, false, false};
  if (v == "none") return t;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    if (item == "energy") t.energy = true;
    else if (item == "dissipation") t.dissipation = true;
    else if (item == "singularities") t.singularities = true;
    else if (item == "entropy") t.entropy = true;
    else if (item == "weak") t.weak = true;
    else if (item == "cone") t.cone = true;
    else throw ConfigError("unknown diagnostic '" + std::string(item) + "'", line);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return t;
}

std::string from_toggles(const DiagnosticToggles& t) {
  std::string out;
  auto add = [&out](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(t.energy, "energy");
  add(t.dissipation, "dissipation");
  add(t.singularities, "singularities");
  add(t.entropy, "entropy");
  add(t.weak, "weak");
  add(t.cone, "cone");
  return out.empty() ? "none" : out;
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(SolverKind solver) {
  switch (solver) {
    case SolverKind::leapfrog: return "leapfrog";
    case SolverKind::charsplit: return "charsplit";
    case SolverKind::picard: return "picard";
  }
  return "leapfrog";
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::map<std::string, std::size_t, std::less<>> seen;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (seen.contains(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
    seen.emplace(key, lineno);

    if (key == "L") c.length = to_double(value, lineno);
    else if (key == "nx") c.nx = to_integer<std::size_t>(value, lineno);
    else if (key == "courant") c.courant = to_double(value, lineno);
    else if (key == "T") c.final_time = to_double(value, lineno);
    else if (key == "potential") c.potential = std::string(value);
    else if (key == "ic") c.ic = std::string(value);
    else if (key == "solver") {
      if (value == "leapfrog") c.solver = SolverKind::leapfrog;
      else if (value == "charsplit") c.solver = SolverKind::charsplit;
      else if (value == "picard") c.solver = SolverKind::picard;
      else throw ConfigError("unknown solver '" + std::string(value) + "'", lineno);
    } else if (key == "stride") c.stride = to_integer<std::size_t>(value, lineno);
    else if (key == "diagnostics") c.diagnostics = to_toggles(value, lineno);
    else if (key == "seed") c.seed = to_integer<std::uint64_t>(value, lineno);
    else if (key == "output") c.output = std::string(value);
    else if (key == "leapfrog_source") {
      if (value == "gradient") c.leapfrog_source = SourceMode::gradient;
      else if (value == "pointwise") c.leapfrog_source = SourceMode::pointwise;
      else throw ConfigError("leapfrog_source must be gradient or pointwise", lineno);
    } else if (key == "split_source") {
      if (value == "euler") c.split_source = SplitSource::euler;
      else if (value == "midpoint") c.split_source = SplitSource::midpoint;
      else throw ConfigError("split_source must be euler or midpoint", lineno);
    } else if (key == "picard_iters") c.picard_iters = to_integer<std::size_t>(value, lineno);
    else if (key == "theta_jump") c.theta_jump = to_double(value, lineno);
    else if (key == "theta_kink") c.theta_kink = to_double(value, lineno);
    else throw ConfigError("unknown key '" + key + "'", lineno);
  }

  auto line_of = [&seen](const char* key) {
    const auto it = seen.find(key);
    return it == seen.end() ? std::size_t{0} : it->second;
  };
  if (!seen.contains("courant") && c.solver == SolverKind::charsplit) c.courant = 1.0;

  if (!(c.length > 0.0)) throw ConfigError("L must be positive", line_of("L"));
  if (c.nx < 8) throw ConfigError("nx must be at least 8", line_of("nx"));
  if (!(c.courant > 0.0) || c.courant > 1.0) {
    throw ConfigError("courant must lie in (0, 1] (CFL)", line_of("courant"));
  }
  if (c.solver == SolverKind::charsplit && c.courant != 1.0) {
    throw ConfigError("charsplit needs courant = 1", line_of("courant"));
  }
  if (!(c.final_time > 0.0)) throw ConfigError("T must be positive", line_of("T"));
  if (c.stride == 0) throw ConfigError("stride must be positive", line_of("stride"));
  if (c.picard_iters == 0) throw ConfigError("picard_iters must be positive", line_of("picard_iters"));
  if (!(c.theta_jump > 0.0)) throw ConfigError("theta_jump must be positive", line_of("theta_jump"));
  if (!(c.theta_kink > 0.0)) throw ConfigError("theta_kink must be positive", line_of("theta_kink"));
  if (c.output.empty()) throw ConfigError("output must not be empty", line_of("output"));
  try {
    (void)parse_potential(c.potential);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), line_of("potential"));
  }
  try {
    (void)parse_ic(c.ic, c.length);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what(), line_of("ic"));
  } catch (const IoError& e) {
    throw ConfigError(e.what(), line_of("ic"));
  }
  return c;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "L = " << number(c.length) << '\n'
      << "nx = " << c.nx << '\n'
      << "courant = " << number(c.courant) << '\n'
      << "T = " << number(c.final_time) << '\n'
      << "potential = " << c.potential << '\n'
      << "ic = " << c.ic << '\n'
      << "solver = " << to_string(c.solver) << '\n'
      << "stride = " << c.stride << '\n'
      << "diagnostics = " << from_toggles(c.diagnostics) << '\n'
      << "seed = " << c.seed << '\n'
      << "output = " << c.output << '\n'
      << "leapfrog_source = "
      << (c.leapfrog_source == SourceMode::gradient ? "gradient" : "pointwise") << '\n'
      << "split_source = " << (c.split_source == SplitSource::euler ? "euler" : "midpoint") << '\n'
      << "picard_iters = " << c.picard_iters << '\n'
      << "theta_jump = " << number(c.theta_jump) << '\n'
      << "theta_kink = " << number(c.theta_kink) << '\n';
  return out.str();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace adhestring
