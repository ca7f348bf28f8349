#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swiftnorm {

/// Co-occurrence counts of two labelings over the same items. Labels are
/// renumbered densely in order of first appearance.
struct Contingency {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> counts;  // (gold, machine) -> n
  std::vector<std::size_t> gold_sizes;
  std::vector<std::size_t> machine_sizes;
  std::size_t n_total = 0;
};

/// Throws LengthMismatch for different lengths; empty input is rejected too.
Contingency contingency(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine);

/// Natural-log entropy of a labeling given its cluster sizes.
double entropy(const std::vector<std::size_t>& sizes, std::size_t n_total);
double mutual_information(const Contingency& c);
/// Expected mutual information under the hypergeometric (fixed margins) model.
double expected_mutual_information(const Contingency& c);

/// Adjusted mutual information with arithmetic-mean normalization.
double ami(const Contingency& c);

struct JaccardScores {
  double precision_hm = 0.0;
  double recall_hm = 0.0;
};

/// Harmonic means, over every (gold, machine) pair with a nonempty
/// intersection S, of |S|/|machine| (precision) and |S|/|gold| (recall).
JaccardScores jaccard_pr(const Contingency& c);
JaccardScores jaccard_pr(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine);

/// Model settings attached to a sweep report row.
struct ExperimentSettings {
  std::string model;
  std::optional<double> explained_variance;
  std::optional<std::size_t> n_dimensions;
  std::string families;
  int ngram_max = 1;
  std::optional<double> threshold;
  std::string lsa;

  bool operator==(const ExperimentSettings&) const = default;
};

struct EvalReport {
  double ami = 0.0;
  double recall_hm = 0.0;
  double precision_hm = 0.0;
  std::size_t n_clusters_machine = 0;
  std::size_t n_clusters_gold = 0;
  ExperimentSettings settings;

  bool operator==(const EvalReport&) const = default;
};

EvalReport evaluate(const std::vector<std::size_t>& gold, const std::vector<std::size_t>& machine,
                    ExperimentSettings settings = {});

}  // namespace swiftnorm
