#pragma once

// Reference greedy agglomeration that recomputes every cluster distance from
// the raw points at every step, plus an enumeration of all partitions that
// gate-respecting merge sequences can end in.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "swiftnorm/cluster.hpp"

namespace oracle {

using Points = std::vector<std::vector<double>>;
using Partition = std::vector<std::vector<std::size_t>>;  // clusters sorted by founder

struct Step {
  std::size_t a, b;
  double distance;
};

struct GreedyResult {
  std::vector<std::size_t> founder;
  std::vector<Step> log;
};

inline double point_distance(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

inline double cluster_distance(const Points& pts, const std::vector<std::size_t>& A,
                               const std::vector<std::size_t>& B, swiftnorm::Linkage linkage) {
  using swiftnorm::Linkage;
  if (linkage == Linkage::centroid) {
    std::vector<double> ca(pts[0].size(), 0.0), cb(pts[0].size(), 0.0);
    for (auto i : A) for (std::size_t k = 0; k < ca.size(); ++k) ca[k] += pts[i][k] / A.size();
    for (auto j : B) for (std::size_t k = 0; k < cb.size(); ++k) cb[k] += pts[j][k] / B.size();
    return point_distance(ca, cb);
  }
  double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (auto i : A) {
    for (auto j : B) {
      const double d = point_distance(pts[i], pts[j]);
      sum += d;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
  }
  if (linkage == Linkage::single) return lo;
  if (linkage == Linkage::complete) return hi;
  return sum / (static_cast<double>(A.size()) * static_cast<double>(B.size()));
}

inline bool admissible(const std::vector<std::size_t>& A, const std::vector<std::size_t>& B,
                       const std::vector<swiftnorm::TokenPair>& reps, double threshold,
                       swiftnorm::GateMode mode) {
  if (mode == swiftnorm::GateMode::representative) {
    return swiftnorm::gate(reps[A.front()], reps[B.front()], threshold);
  }
  for (auto i : A) {
    for (auto j : B) {
      if (!swiftnorm::gate(reps[i], reps[j], threshold)) return false;
    }
  }
  return true;
}

// With `freeze`, the closest pair is chosen ignoring the gate; a blocked pair
// retires both clusters.
inline GreedyResult greedy(const Points& pts, const std::vector<swiftnorm::TokenPair>& reps, double threshold,
                           swiftnorm::Linkage linkage, swiftnorm::GateMode mode, bool freeze = false) {
  Partition clusters;
  for (std::size_t i = 0; i < pts.size(); ++i) clusters.push_back({i});
  std::set<std::size_t> frozen;  // founders
  GreedyResult out;
  for (;;) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0, bb = 0;
    bool found = false;
    for (std::size_t x = 0; x < clusters.size(); ++x) {
      for (std::size_t y = x + 1; y < clusters.size(); ++y) {
        if (frozen.contains(clusters[x].front()) || frozen.contains(clusters[y].front())) continue;
        if (!freeze && !admissible(clusters[x], clusters[y], reps, threshold, mode)) continue;
        const double d = cluster_distance(pts, clusters[x], clusters[y], linkage);
        const std::size_t fa = clusters[x].front(), fb = clusters[y].front();
        // Clusters stay ordered by founder, so (x, y) order equals (fa, fb) order.
        if (!found || d < best || (d == best && (fa < clusters[ba].front() ||
                                                 (fa == clusters[ba].front() && fb < clusters[bb].front())))) {
          best = d;
          ba = x;
          bb = y;
          found = true;
        }
      }
    }
    if (!found) break;
    if (freeze && !admissible(clusters[ba], clusters[bb], reps, threshold, mode)) {
      frozen.insert(clusters[ba].front());
      frozen.insert(clusters[bb].front());
      continue;
    }
    out.log.push_back({clusters[ba].front(), clusters[bb].front(), best});
    clusters[ba].insert(clusters[ba].end(), clusters[bb].begin(), clusters[bb].end());
    std::sort(clusters[ba].begin(), clusters[ba].end());
    clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
  }
  out.founder.resize(pts.size());
  for (const auto& c : clusters) for (auto i : c) out.founder[i] = c.front();
  return out;
}

// Every partition in which no admissible pair remains, reachable from
// singletons by admissible merges in some order.
inline std::set<Partition> terminal_partitions(std::size_t n, const std::vector<swiftnorm::TokenPair>& reps,
                                               double threshold, swiftnorm::GateMode mode) {
  std::set<Partition> seen, terminal;
  std::function<void(const Partition&)> visit = [&](const Partition& p) {
    if (!seen.insert(p).second) return;
    bool any = false;
    for (std::size_t x = 0; x < p.size(); ++x) {
      for (std::size_t y = x + 1; y < p.size(); ++y) {
        if (!admissible(p[x], p[y], reps, threshold, mode)) continue;
        any = true;
        Partition q = p;
        q[x].insert(q[x].end(), q[y].begin(), q[y].end());
        std::sort(q[x].begin(), q[x].end());
        q.erase(q.begin() + static_cast<std::ptrdiff_t>(y));
        std::sort(q.begin(), q.end());
        visit(q);
      }
    }
    if (!any) terminal.insert(p);
  };
  Partition start;
  for (std::size_t i = 0; i < n; ++i) start.push_back({i});
  visit(start);
  return terminal;
}

inline Partition partition_of(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  Partition p;
  for (auto& [l, members] : groups) p.push_back(members);
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace oracle
