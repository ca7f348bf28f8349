#include "swiftnorm/cluster.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "swiftnorm/error.hpp"
#include "swiftnorm/parallel.hpp"
#include "swiftnorm/similarity.hpp"

namespace swiftnorm {

std::string TokenPair::joined() const {
  return second.empty() ? first : first + ' ' + second;
}

TokenPair representative_tokens(const std::vector<std::string>& ordered_tokens) {
  TokenPair rep;
  if (!ordered_tokens.empty()) rep.first = ordered_tokens[0];
  if (ordered_tokens.size() > 1) rep.second = ordered_tokens[1];
  return rep;
}

namespace {

bool similar(const std::string& x, const std::string& y, double threshold) {
  if (x.empty() || y.empty()) return false;
  return ratcliff_obershelp(x, y) >= threshold;
}

}  // namespace

bool gate(const TokenPair& a, const TokenPair& b, double threshold) {
  return similar(a.first, b.first, threshold) || similar(a.second, b.second, threshold) ||
         similar(a.first, b.second, threshold) || similar(a.second, b.first, threshold);
}

Linkage parse_linkage(std::string_view name) {
  if (name == "average") return Linkage::average;
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "centroid") return Linkage::centroid;
  throw ConfigInvalid("unknown linkage '" + std::string(name) + "'");
}

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::centroid: return "centroid";
  }
  return "average";
}

GateMode parse_gate_mode(std::string_view name) {
  if (name == "representative") return GateMode::representative;
  if (name == "all-pairs" || name == "all_pairs") return GateMode::all_pairs;
  throw ConfigInvalid("unknown gate mode '" + std::string(name) + "'");
}

std::string_view to_string(GateMode mode) {
  return mode == GateMode::representative ? "representative" : "all-pairs";
}

StopRule parse_stop_rule(std::string_view name) {
  if (name == "exhaust") return StopRule::exhaust;
  if (name == "freeze") return StopRule::freeze;
  throw ConfigInvalid("unknown stop rule '" + std::string(name) + "' (expected exhaust|freeze)");
}

std::string_view to_string(StopRule rule) { return rule == StopRule::exhaust ? "exhaust" : "freeze"; }

std::vector<std::size_t> ClusterAssignment::cluster_sizes() const {
  std::vector<std::size_t> sizes(n_clusters(), 0);
  for (const auto l : labels) ++sizes.at(l);
  return sizes;
}

Matrix euclidean_distances(const Matrix& rows, std::size_t threads) {
  const Eigen::Index n = rows.rows();
  constexpr Eigen::Index kTile = 16;
  Matrix dist(n, n);
  const auto n_tiles = static_cast<std::size_t>((n + kTile - 1) / kTile);
  // A tile of rows stays in cache while every later row streams past it once.
  parallel_for_range(n_tiles, 1, threads, [&](std::size_t begin, std::size_t end) {
    for (auto t = static_cast<Eigen::Index>(begin); t < static_cast<Eigen::Index>(end); ++t) {
      const Eigen::Index i0 = t * kTile;
      const Eigen::Index i1 = std::min(n, i0 + kTile);
      for (Eigen::Index j = i0; j < n; ++j) {
        const auto rj = rows.row(j);
        for (Eigen::Index i = i0; i < std::min(i1, j + 1); ++i) {
          const double d = i == j ? 0.0 : std::sqrt((rows.row(i) - rj).squaredNorm());
          dist(i, j) = d;
          dist(j, i) = d;
        }
      }
    }
  });
  return dist;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Candidate {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t a = kNone;
  std::size_t b = kNone;

  bool valid() const { return a != kNone; }
  bool operator<(const Candidate& o) const {
    if (distance != o.distance) return distance < o.distance;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

// Gate evaluation over interned tokens. Pairs whose length or character
// histogram bound cannot reach the threshold skip the full similarity; the
// bounds use the same 2M/(|a|+|b|) expression, so decisions match gate().
class TokenGate {
 public:
  TokenGate(const std::vector<TokenPair>& reps, double threshold) : threshold_(threshold) {
    std::unordered_map<std::string, std::uint32_t> ids;
    ids_.reserve(reps.size());
    auto intern = [&](const std::string& t) -> std::uint32_t {
      if (t.empty()) return kEmpty;
      const auto [it, inserted] = ids.try_emplace(t, static_cast<std::uint32_t>(tokens_.size()));
      if (inserted) {
        tokens_.push_back(t);
        std::array<std::uint8_t, 64> h{};
        for (const char c : t) {
          auto& slot = h[static_cast<unsigned char>(c) & 63];
          if (slot < 255) ++slot;
        }
        hist_.push_back(h);
      }
      return it->second;
    };
    for (const auto& r : reps) ids_.emplace_back(intern(r.first), intern(r.second));
  }

  bool operator()(std::size_t i, std::size_t j) const {
    const auto [a1, a2] = ids_[i];
    const auto [b1, b2] = ids_[j];
    return similar(a1, b1) || similar(a2, b2) || similar(a1, b2) || similar(a2, b1);
  }

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  bool similar(std::uint32_t x, std::uint32_t y) const {
    if (x == kEmpty || y == kEmpty) return false;
    if (x == y) return 1.0 >= threshold_;
    const auto& tx = tokens_[x];
    const auto& ty = tokens_[y];
    const double total = static_cast<double>(tx.size() + ty.size());
    if (2.0 * static_cast<double>(std::min(tx.size(), ty.size())) / total < threshold_) return false;
    std::size_t common = 0;
    const auto& hx = hist_[x];
    const auto& hy = hist_[y];
    for (std::size_t c = 0; c < hx.size(); ++c) common += std::min(hx[c], hy[c]);
    if (2.0 * static_cast<double>(common) / total < threshold_) return false;
    return ratcliff_obershelp(tx, ty) >= threshold_;
  }

  double threshold_;
  std::vector<std::string> tokens_;
  std::vector<std::array<std::uint8_t, 64>> hist_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ids_;
};

// Working state for one agglomeration. `link` holds, per linkage:
// average -> sum of member distances, single/complete -> the distance,
// centroid -> squared centroid distance.
class Agglomerator {
 public:
  Agglomerator(const Matrix& features, const std::vector<TokenPair>& reps,
               const AgglomerateOptions& options)
      : opt_(options), n_(reps.size()), active_(n_, 1), size_(n_, 1), nn_(n_) {
    link_ = euclidean_distances(features, options.threads);
    if (opt_.linkage == Linkage::centroid) link_ = link_.cwiseAbs2();

    admissible_.assign(n_ * n_, 0);
    const TokenGate token_gate(reps, opt_.threshold);
    parallel_for_range(n_, 16, opt_.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
          const auto ok = static_cast<unsigned char>(token_gate(i, j));
          admissible_[i * n_ + j] = ok;
          admissible_[j * n_ + i] = ok;
        }
      }
    });
    parallel_for_range(n_, 64, opt_.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) nn_[i] = best_partner(i);
    });
  }

  std::vector<MergeStep> run() {
    std::vector<MergeStep> log;
    for (;;) {
      Candidate best;
      for (std::size_t i = 0; i < n_; ++i) {
        if (active_[i] && nn_[i].valid() && nn_[i] < best) best = nn_[i];
      }
      if (!best.valid()) break;
      if (!admissible_[best.a * n_ + best.b]) {
        freeze(best.a, best.b);
        continue;
      }
      log.push_back(MergeStep{best.a, best.b, best.distance});
      merge(best.a, best.b);
    }
    return log;
  }

 private:
  double distance(std::size_t i, std::size_t j) const {
    const double v = link_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    switch (opt_.linkage) {
      case Linkage::average:
        return v / (static_cast<double>(size_[i]) * static_cast<double>(size_[j]));
      case Linkage::centroid:
        return std::sqrt(std::max(v, 0.0));
      default:
        return v;
    }
  }

  Candidate candidate(std::size_t i, std::size_t j) const {
    if (opt_.stop_rule == StopRule::exhaust && !admissible_[i * n_ + j]) return {};
    const double d = distance(i, j);
    if (opt_.max_distance && d > *opt_.max_distance) return {};
    return Candidate{d, std::min(i, j), std::max(i, j)};
  }

  Candidate best_partner(std::size_t i) const {
    Candidate best;
    for (std::size_t j = 0; j < n_; ++j) {
      if (j == i || !active_[j]) continue;
      const Candidate c = candidate(i, j);
      if (c.valid() && c < best) best = c;
    }
    return best;
  }

  void merge(std::size_t a, std::size_t b) {
    const auto ea = static_cast<Eigen::Index>(a);
    const auto eb = static_cast<Eigen::Index>(b);
    const double na = static_cast<double>(size_[a]);
    const double nb = static_cast<double>(size_[b]);
    const double lab = link_(ea, eb);

    for (std::size_t k = 0; k < n_; ++k) {
      if (!active_[k] || k == a || k == b) continue;
      const auto ek = static_cast<Eigen::Index>(k);
      double v = 0.0;
      switch (opt_.linkage) {
        case Linkage::average: v = link_(ea, ek) + link_(eb, ek); break;
        case Linkage::single: v = std::min(link_(ea, ek), link_(eb, ek)); break;
        case Linkage::complete: v = std::max(link_(ea, ek), link_(eb, ek)); break;
        case Linkage::centroid:
          v = (na * link_(ea, ek) + nb * link_(eb, ek)) / (na + nb) - na * nb * lab / ((na + nb) * (na + nb));
          break;
      }
      link_(ea, ek) = v;
      link_(ek, ea) = v;
      if (opt_.gate_mode == GateMode::all_pairs) {
        const unsigned char ok = admissible_[a * n_ + k] & admissible_[b * n_ + k];
        admissible_[a * n_ + k] = ok;
        admissible_[k * n_ + a] = ok;
      }
    }
    size_[a] += size_[b];
    active_[b] = 0;
    nn_[b] = {};

    nn_[a] = best_partner(a);
    for (std::size_t k = 0; k < n_; ++k) {
      if (!active_[k] || k == a) continue;
      if (nn_[k].a == a || nn_[k].b == a || nn_[k].a == b || nn_[k].b == b) {
        nn_[k] = best_partner(k);
        continue;
      }
      const Candidate c = candidate(k, a);
      if (c.valid() && c < nn_[k]) nn_[k] = c;
    }
  }

  // Only reached under StopRule::freeze: the closest pair is blocked, so
  // neither cluster takes part in any later merge.
  void freeze(std::size_t a, std::size_t b) {
    active_[a] = 0;
    active_[b] = 0;
    nn_[a] = {};
    nn_[b] = {};
    for (std::size_t k = 0; k < n_; ++k) {
      if (!active_[k]) continue;
      if (nn_[k].a == a || nn_[k].b == a || nn_[k].a == b || nn_[k].b == b) nn_[k] = best_partner(k);
    }
  }

  AgglomerateOptions opt_;
  std::size_t n_;
  Matrix link_;
  std::vector<unsigned char> admissible_;
  std::vector<unsigned char> active_;
  std::vector<std::size_t> size_;
  std::vector<Candidate> nn_;
};

// Builds dense labels from a founder array (founder[i] = lowest index of i's cluster).
ClusterAssignment from_founders(const std::vector<std::size_t>& founder,
                                const std::vector<TokenPair>& reps) {
  ClusterAssignment out;
  out.labels.resize(founder.size());
  std::vector<std::size_t> id_of(founder.size(), kNone);
  for (std::size_t i = 0; i < founder.size(); ++i) {
    const std::size_t f = founder[i];
    if (id_of[f] == kNone) {
      id_of[f] = out.reps.size();
      out.reps.push_back(reps[f]);
    }
    out.labels[i] = id_of[f];
  }
  return out;
}

}  // namespace

ClusterAssignment agglomerate(const FeatureMatrix& features, const std::vector<TokenPair>& reps,
                              const AgglomerateOptions& options) {
  if (features.rows() != reps.size()) {
    throw RowMismatch("feature matrix has " + std::to_string(features.rows()) + " rows but " +
                      std::to_string(reps.size()) + " representatives were given");
  }
  const std::size_t n = reps.size();
  std::vector<MergeStep> log;
  if (n > 1) log = Agglomerator(features.values, reps, options).run();

  // Replay the log to recover each item's founder.
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  for (const auto& step : log) parent[step.b] = step.a;
  std::vector<std::size_t> founder(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = i;
    while (parent[r] != r) r = parent[r];
    founder[i] = r;
  }
  ClusterAssignment out = from_founders(founder, reps);
  out.merge_log = std::move(log);
  return out;
}

ClusterAssignment agglomerate(const FeatureMatrix& features, const Corpus& corpus,
                              const AgglomerateOptions& options) {
  std::vector<TokenPair> reps;
  reps.reserve(corpus.size());
  for (const auto& form : corpus.forms) reps.push_back(representative_tokens(form.ordered_tokens));
  return agglomerate(features, reps, options);
}

ClusterAssignment baseline_first_two(const std::vector<UniqueLine>& lines) {
  std::map<std::pair<std::string, std::string>, std::size_t> first_line;
  std::vector<std::size_t> founder(lines.size());
  std::vector<TokenPair> reps(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    reps[i] = representative_tokens(tokenize(lines[i].text));
    const auto [it, inserted] = first_line.try_emplace({reps[i].first, reps[i].second}, i);
    founder[i] = it->second;
  }
  return from_founders(founder, reps);
}

ClusterAssignment bound_one_cluster(std::size_t n) {
  ClusterAssignment out;
  out.labels.assign(n, 0);
  if (n > 0) out.reps.emplace_back();
  return out;
}

ClusterAssignment bound_singletons(std::size_t n) {
  ClusterAssignment out;
  out.labels.resize(n);
  out.reps.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = i;
  return out;
}

ClusterAssignment propagate(const ClusterAssignment& forms, const Corpus& corpus) {
  if (forms.labels.size() != corpus.size()) {
    throw RowMismatch("assignment covers " + std::to_string(forms.labels.size()) +
                      " forms, corpus has " + std::to_string(corpus.size()));
  }
  ClusterAssignment out;
  out.reps = forms.reps;
  out.merge_log = forms.merge_log;
  out.labels.reserve(corpus.lines.size());
  for (const auto& line : corpus.lines) out.labels.push_back(forms.labels.at(line.canonical_index));
  return out;
}

std::vector<std::size_t> dense_labels(const std::vector<std::size_t>& labels) {
  std::unordered_map<std::size_t, std::size_t> id_of;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto l : labels) out.push_back(id_of.try_emplace(l, id_of.size()).first->second);
  return out;
}

}  // namespace swiftnorm
