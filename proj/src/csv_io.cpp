#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>

#include "adhestring/cli_io.hpp"
#include "adhestring/errors.hpp"

namespace adhestring {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_write(const std::string& path) {
  File f(std::fopen(path.c_str(), "w"));
  if (!f) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  return f;
}

void finish(File f, const std::string& path) {
  if (std::ferror(f.get()) || std::fclose(f.release()) != 0) {
    throw IoError("write failed for '" + path + "'");
  }
}

const char* kind_name(SingularKind k) { return k == SingularKind::jump ? "jump" : "kink"; }

}  // namespace

void write_fields(const SolutionRecord& record, const std::string& path, std::size_t every) {
  if (every == 0) every = 1;
  auto f = open_for_write(path);
  std::fputs("t,x,u,v,w\n", f.get());
  const auto x = record.grid.nodes();
  const auto& snaps = record.snapshots;
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    if (k % every != 0 && k + 1 != snaps.size()) continue;
    const auto& s = snaps[k];
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, x[i], s.u[i], s.v[i], s.w[i]);
    }
  }
  finish(std::move(f), path);
}

std::vector<WaveState> read_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,u,v,w", 0) != 0) {
    throw IoError("'" + path + "' lacks the t,x,u,v,w header");
  }
  std::vector<WaveState> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double vals[5];
    const char* p = line.c_str();
    for (int k = 0; k < 5; ++k) {
      char* end = nullptr;
      vals[k] = std::strtod(p, &end);
      if (end == p || (k < 4 && *end != ',')) {
        throw IoError("'" + path + "': malformed row " + std::to_string(lineno));
      }
      p = end + (k < 4 ? 1 : 0);
    }
    if (out.empty() || out.back().t != vals[0]) {
      out.emplace_back();
      out.back().t = vals[0];
    }
    auto& s = out.back();
    s.u.push_back(vals[2]);
    s.v.push_back(vals[3]);
    s.w.push_back(vals[4]);
  }
  return out;
}

void write_energy(const std::vector<EnergyBreakdown>& series, const std::string& path) {
  auto f = open_for_write(path);
  std::fputs("t,kinetic,elastic,adhesive,total\n", f.get());
  for (const auto& e : series) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g,%.17g\n", e.t, e.kinetic, e.elastic,
                 e.adhesive, e.total);
  }
  finish(std::move(f), path);
}

void write_singularities(const CharacteristicMap& map, const std::string& path) {
  auto f = open_for_write(path);
  std::fputs("t,x,strength,kind,segment_id,fitted_slope\n", f.get());
  for (const auto& p : map.points) {
    if (p.segment >= 0) {
      const double slope = map.segments[static_cast<std::size_t>(p.segment)].slope;
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%s,%ld,%.17g\n", p.t, p.x, p.strength,
                   kind_name(p.kind), p.segment, slope);
    } else {
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%s,-1,\n", p.t, p.x, p.strength, kind_name(p.kind));
    }
  }
  finish(std::move(f), path);
}

void write_cone_reports(const std::vector<ConeReport>& reports, const std::string& path) {
  auto f = open_for_write(path);
  std::fputs("t0,x0,epsilon,found_below,found_above,samples\n", f.get());
  for (const auto& r : reports) {
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%d,%d,%zu\n", r.t0, r.x0, r.epsilon,
                 r.found_below ? 1 : 0, r.found_above ? 1 : 0, r.samples);
  }
  finish(std::move(f), path);
}

void write_residual_summary(const std::vector<std::pair<std::string, double>>& rows,
                            const std::string& path) {
  auto f = open_for_write(path);
  std::fputs("quantity,value\n", f.get());
  for (const auto& [name, value] : rows) std::fprintf(f.get(), "%s,%.17g\n", name.c_str(), value);
  finish(std::move(f), path);
}

std::vector<std::string> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace adhestring
