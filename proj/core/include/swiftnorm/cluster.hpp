#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnorm/features.hpp"
#include "swiftnorm/preprocess.hpp"

namespace swiftnorm {

/// First and second original-order tokens of a cluster's founding member.
/// A missing second token is the empty string.
struct TokenPair {
  std::string first;
  std::string second;

  bool operator==(const TokenPair&) const = default;
  std::string joined() const;
};

TokenPair representative_tokens(const std::vector<std::string>& ordered_tokens);

/// Merge rule: true when first-first, second-second, first-second or
/// second-first Ratcliff/Obershelp similarity reaches `threshold`.
/// Comparisons involving an empty token score 0.
bool gate(const TokenPair& a, const TokenPair& b, double threshold);

enum class Linkage { average, single, complete, centroid };
enum class GateMode {
  representative,  ///< gate the two clusters' representatives
  all_pairs,       ///< every cross-cluster member pair must pass
};

Linkage parse_linkage(std::string_view name);
std::string_view to_string(Linkage linkage);
GateMode parse_gate_mode(std::string_view name);
std::string_view to_string(GateMode mode);

/// What happens when the gate blocks a merge. `exhaust` skips the blocked pair
/// and keeps merging admissible pairs until none remain. `freeze` takes the
/// closest pair regardless of the gate; if the gate blocks it, both clusters
/// stop growing.
enum class StopRule { exhaust, freeze };

StopRule parse_stop_rule(std::string_view name);
std::string_view to_string(StopRule rule);

struct AgglomerateOptions {
  double threshold = 0.75;
  Linkage linkage = Linkage::average;
  GateMode gate_mode = GateMode::representative;
  StopRule stop_rule = StopRule::exhaust;
  /// Pairs further apart than this are never merged.
  std::optional<double> max_distance;
  std::size_t threads = 1;
};

/// One executed merge. Clusters are named by their founding (lowest) member
/// index while agglomeration runs; `a < b` and `b` is absorbed into `a`.
struct MergeStep {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;

  bool operator==(const MergeStep&) const = default;
};

struct ClusterAssignment {
  /// Dense cluster id per item, numbered by each cluster's lowest item index.
  std::vector<std::size_t> labels;
  /// Representative tokens per cluster id.
  std::vector<TokenPair> reps;
  std::vector<MergeStep> merge_log;

  std::size_t n_clusters() const noexcept { return reps.size(); }
  std::vector<std::size_t> cluster_sizes() const;
};

/// Pairwise Euclidean distances between feature rows (symmetric, zero
/// diagonal), computed over contiguous row blocks in parallel.
Matrix euclidean_distances(const Matrix& rows, std::size_t threads);

/// Gated agglomerative clustering. Starting from singletons, repeatedly merges
/// the closest admissible pair (ties by ascending (a, b)) until no admissible
/// pair remains. A merged cluster keeps the representative of its older
/// constituent.
ClusterAssignment agglomerate(const FeatureMatrix& features, const std::vector<TokenPair>& reps,
                              const AgglomerateOptions& options = {});

ClusterAssignment agglomerate(const FeatureMatrix& features, const Corpus& corpus,
                              const AgglomerateOptions& options = {});

/// Keyword baseline over unique lines: identical (token1, token2) keys share a
/// cluster.
ClusterAssignment baseline_first_two(const std::vector<UniqueLine>& lines);

ClusterAssignment bound_one_cluster(std::size_t n);
ClusterAssignment bound_singletons(std::size_t n);

/// Lifts an assignment over canonical forms to the corpus' unique lines.
ClusterAssignment propagate(const ClusterAssignment& forms, const Corpus& corpus);

/// Renumbers arbitrary labels densely in order of first appearance.
std::vector<std::size_t> dense_labels(const std::vector<std::size_t>& labels);

}  // namespace swiftnorm
