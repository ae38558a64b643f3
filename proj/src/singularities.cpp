#include <algorithm>
#include <cmath>

#include "adhestring/diagnostics.hpp"

namespace adhestring {

namespace {

struct Candidate {
  std::size_t node = 0;
  double x = 0.0;
  double strength = 0.0;
  double threshold = 0.0;
  SingularKind kind = SingularKind::kink;
  SingularField field = SingularField::velocity;
  double ratio() const { return strength / threshold; }
};

// The field with its grid-scale (sawtooth) component removed by `passes`
// applications of the (1/4, 1/2, 1/4) average. Leapfrog parks dispersive
// error in that component, which is never a physical feature.
std::vector<double> field_of(const WaveState& s, SingularField f, std::size_t passes) {
  std::vector<double> out = f == SingularField::velocity ? s.v : s.w;
  std::vector<double> tmp(out.size());
  for (std::size_t p = 0; p < passes && out.size() >= 3; ++p) {
    const std::size_t n = out.size();
    tmp[0] = out[0];
    tmp[n - 1] = out[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) tmp[i] = 0.25 * out[i - 1] + 0.5 * out[i] + 0.25 * out[i + 1];
    out.swap(tmp);
  }
  return out;
}

double median_abs(std::vector<double> values) {
  if (values.empty()) return 0.0;
  for (auto& v : values) v = std::abs(v);
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

double first_difference(const std::vector<double>& f, std::size_t i) { return f[i + 1] - f[i]; }
double second_difference(const std::vector<double>& f, std::size_t i) {
  return (f[i + 1] - 2.0 * f[i]) + f[i - 1];
}

struct Thresholds {
  double jump = 0.0;
  double kink = 0.0;
};

// Largest |v| or |w| over the record.
double gradient_scale(const SolutionRecord& rec) {
  double peak = 0.0;
  for (const auto& s : rec.snapshots) {
    for (double v : s.v) peak = std::max(peak, std::abs(v));
    for (double w : s.w) peak = std::max(peak, std::abs(w));
  }
  return peak;
}

Thresholds thresholds_for(const SolutionRecord& rec, SingularField field,
                          const DetectorSettings& settings, double scale) {
  std::vector<double> d1, d2;
  for (const auto& s : rec.snapshots) {
    const auto f = field_of(s, field, settings.smoothing_passes);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) d1.push_back(first_difference(f, i));
    for (std::size_t i = 1; i + 1 < f.size(); ++i) d2.push_back(second_difference(f, i));
  }
  // The floor keeps fields that are flat in x (median 0) from flagging
  // roundoff. It is taken over both fields: the strain of a uniform state is
  // pure roundoff, so its own maximum is no reference.
  const double floor = 1e-9 * scale;
  return {settings.theta_jump * std::max(median_abs(std::move(d1)), floor),
          settings.theta_kink * std::max(median_abs(std::move(d2)), floor)};
}

// Local maxima of |D| above the threshold, away from the two end nodes.
template <typename Diff>
void collect(const std::vector<double>& f, Diff diff, std::size_t first, std::size_t last,
             std::size_t window, double threshold, double offset, double dx, SingularKind kind,
             SingularField field, std::vector<Candidate>& out) {
  if (threshold <= 0.0) return;
  for (std::size_t i = first; i <= last; ++i) {
    const double m = std::abs(diff(f, i));
    if (m <= threshold) continue;
    bool peak = true;
    for (std::size_t j = (i >= first + window ? i - window : first); j <= std::min(last, i + window);
         ++j) {
      if (j == i) continue;
      const double other = std::abs(diff(f, j));
      if (other > m || (other == m && j < i)) {
        peak = false;
        break;
      }
    }
    if (peak) out.push_back({i, (static_cast<double>(i) + offset) * dx, m, threshold, kind, field});
  }
}

struct Chain {
  std::vector<std::size_t> points;
  std::size_t last_level = 0;
  double last_x = 0.0;
  double last_t = 0.0;
  double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;

  void add(std::size_t idx, const SingularPoint& p) {
    points.push_back(idx);
    last_level = p.level;
    last_x = p.x;
    last_t = p.t;
    st += p.t;
    sx += p.x;
    stt += p.t * p.t;
    stx += p.t * p.x;
  }
  bool fit(double& slope, double& intercept) const {
    const double n = static_cast<double>(points.size());
    const double det = n * stt - st * st;
    if (points.size() < 2 || det <= 0.0) return false;
    slope = (n * stx - st * sx) / det;
    intercept = (sx - slope * st) / n;
    return true;
  }
};

}  // namespace

CharacteristicMap detect_singularities(const SolutionRecord& record,
                                       const DetectorSettings& settings) {
  CharacteristicMap map;
  map.settings = settings;
  const std::size_t nx = record.grid.nx;
  const double dx = record.grid.dx();
  if (record.snapshots.empty() || nx < 8) return map;

  const SingularField fields[2] = {SingularField::velocity, SingularField::strain};
  const double scale = gradient_scale(record);
  for (int k = 0; k < 2; ++k) {
    const auto th = thresholds_for(record, fields[k], settings, scale);
    map.jump_threshold[k] = th.jump;
    map.kink_threshold[k] = th.kink;
  }

  for (std::size_t n = 0; n < record.snapshots.size(); ++n) {
    const auto& s = record.snapshots[n];
    std::vector<Candidate> cand;
    for (int k = 0; k < 2; ++k) {
      const auto f = field_of(s, fields[k], settings.smoothing_passes);
      collect(f, first_difference, 2, nx - 4, settings.suppression_cells, map.jump_threshold[k],
              0.5, dx, SingularKind::jump, fields[k], cand);
      collect(f, second_difference, 2, nx - 3, settings.suppression_cells, map.kink_threshold[k],
              0.0, dx, SingularKind::kink, fields[k], cand);
    }
    // Strongest first; anything within two cells of a kept point is the same
    // feature seen by the other detector or field. Jumps outrank kinks.
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      if (a.kind != b.kind) return a.kind == SingularKind::jump;
      if (a.ratio() != b.ratio()) return a.ratio() > b.ratio();
      return a.x < b.x;
    });
    std::vector<Candidate> kept;
    const double merge_reach = (static_cast<double>(settings.suppression_cells) + 1e-9) * dx;
    for (const auto& c : cand) {
      const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Candidate& o) {
        return std::abs(o.x - c.x) <= merge_reach;
      });
      if (!dup) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(),
              [](const Candidate& a, const Candidate& b) { return a.x < b.x; });
    for (const auto& c : kept) {
      map.points.push_back({s.t, c.x, c.strength, c.threshold, c.kind, c.field, n, -1});
    }
  }

  // Greedy chaining, level by level, strongest points claiming chains first.
  std::vector<Chain> chains;
  std::size_t begin = 0;
  while (begin < map.points.size()) {
    const std::size_t level = map.points[begin].level;
    std::size_t end = begin;
    while (end < map.points.size() && map.points[end].level == level) ++end;
    std::vector<std::size_t> order(end - begin);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = begin + k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return map.points[a].strength / map.points[a].threshold >
             map.points[b].strength / map.points[b].threshold;
    });
    for (std::size_t idx : order) {
      const auto& p = map.points[idx];
      long best = -1;
      double best_dist = 0.0;
      for (std::size_t c = 0; c < chains.size(); ++c) {
        const auto& ch = chains[c];
        if (ch.last_level >= level || level - ch.last_level > settings.max_gap_levels + 1) continue;
        double predicted = ch.last_x;
        double tol = (p.t - ch.last_t) + 1.5 * dx;
        double slope = 0.0, intercept = 0.0;
        if (ch.points.size() >= 4 && ch.fit(slope, intercept)) {
          predicted = intercept + slope * p.t;
          tol = 1.5 * dx;
        }
        const double dist = std::abs(p.x - predicted);
        if (dist <= tol && (best < 0 || dist < best_dist)) {
          best = static_cast<long>(c);
          best_dist = dist;
        }
      }
      if (best < 0) {
        chains.emplace_back();
        chains.back().add(idx, p);
      } else {
        chains[static_cast<std::size_t>(best)].add(idx, p);
      }
    }
    begin = end;
  }

  for (const auto& ch : chains) {
    if (ch.points.size() < settings.min_segment_points) continue;
    FittedSegment seg;
    seg.points = ch.points;
    if (!ch.fit(seg.slope, seg.intercept)) continue;
    seg.t_begin = map.points[ch.points.front()].t;
    seg.t_end = map.points[ch.points.back()].t;
    double ss = 0.0;
    for (std::size_t idx : ch.points) {
      const auto& p = map.points[idx];
      const double r = p.x - (seg.intercept + seg.slope * p.t);
      ss += r * r;
    }
    seg.rms = std::sqrt(ss / static_cast<double>(ch.points.size()));
    const auto id = static_cast<long>(map.segments.size());
    for (std::size_t idx : ch.points) map.points[idx].segment = id;
    map.segments.push_back(std::move(seg));
  }
  return map;
}

SlopeReport verify_slopes(const CharacteristicMap& map, double tol) {
  SlopeReport rep;
  for (std::size_t k = 0; k < map.segments.size(); ++k) {
    const double s = map.segments[k].slope;
    const double dev =
        std::min({std::abs(s + 1.0), std::abs(s), std::abs(s - 1.0)});
    ++rep.checked;
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (!(dev <= tol)) {
      rep.offenders.push_back(k);
      rep.passed = false;
    }
  }
  return rep;
}

}  // namespace adhestring
