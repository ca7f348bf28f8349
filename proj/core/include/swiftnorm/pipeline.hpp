#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnorm/cluster.hpp"
#include "swiftnorm/eval.hpp"
#include "swiftnorm/features.hpp"
#include "swiftnorm/ingest.hpp"
#include "swiftnorm/lsa.hpp"
#include "swiftnorm/preprocess.hpp"

namespace swiftnorm {

enum class Family { onehot, tfidf, lsa, similarity };

Family parse_family(std::string_view name);
std::string_view to_string(Family family);
/// Comma-separated family list, e.g. "similarity,lsa".
std::vector<Family> parse_families(std::string_view list);
std::string join_families(const std::vector<Family>& families);

struct FeatureRecipe {
  std::vector<Family> families{Family::similarity};
  int ngram_max = 1;
  /// Used when `families` contains lsa; defaults to a 0.9 variance target.
  std::optional<LsaSelector> lsa;
  /// Bag-of-words matrix the LSA decomposes: onehot or tfidf.
  Family lsa_base = Family::tfidf;
  /// One weight per entry of `families`, empty for all 1.
  std::vector<double> weights;
  /// L2-normalize bag-of-words rows before use.
  bool l2_normalize = false;

  bool uses(Family f) const;
  LsaSelector lsa_selector() const;
  /// Throws ConfigInvalid.
  void validate() const;
  /// Report model name, e.g. "Combined (TF-IDF LSA)".
  std::string model_name() const;
  std::string lsa_label() const;

  bool operator==(const FeatureRecipe&) const = default;
};

enum class ChunkMode { off, first_letter };
ChunkMode parse_chunk_mode(std::string_view name);
std::string_view to_string(ChunkMode mode);

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  InputFormat format = InputFormat::plain;
  std::set<std::string> tags{"50K", "59"};
  FeatureRecipe recipe;
  double threshold = 0.75;
  Linkage linkage = Linkage::average;
  GateMode gate_mode = GateMode::representative;
  StopRule stop_rule = StopRule::exhaust;
  std::optional<double> max_distance;
  ChunkMode chunk = ChunkMode::off;
  std::optional<std::filesystem::path> gold;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 42;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> cache_dir;
  bool write_provenance = false;

  /// Throws ConfigInvalid.
  void validate() const;
  AgglomerateOptions agglomerate_options() const;
};

/// Timing and cache counters for one pipeline execution.
struct RunStats {
  double similarity_seconds = 0.0;
  double features_seconds = 0.0;
  double cluster_seconds = 0.0;
  std::size_t similarity_cache_hits = 0;
  std::size_t similarity_computations = 0;
};

/// Reuses expensive intermediate results across runs over the same corpus:
/// similarity matrices (in memory and optionally on disk) and LSA spectra.
class FeatureContext {
 public:
  FeatureContext(std::size_t threads, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  const Matrix& similarity(const Corpus& corpus);
  const LsaDecomposition& decomposition(const Corpus& corpus, const FeatureRecipe& recipe);
  FeatureMatrix bag_of_words(const Corpus& corpus, Family kind, int ngram_max, bool l2_normalize);

  std::size_t threads() const noexcept { return threads_; }
  RunStats& stats() noexcept { return stats_; }

 private:
  std::size_t threads_;
  std::optional<std::filesystem::path> cache_dir_;
  std::map<std::string, Matrix> similarity_;
  std::map<std::string, LsaDecomposition> lsa_;
  RunStats stats_;
};

FeatureMatrix build_features(const Corpus& corpus, const FeatureRecipe& recipe, FeatureContext& ctx);

/// Gold ids aligned to a corpus' unique lines; lines missing from the gold
/// file are excluded from evaluation.
struct GoldAlignment {
  std::vector<std::size_t> line_indices;
  std::vector<std::size_t> labels;
  std::size_t missing = 0;
};

/// gold: unique_line_text -> gold id (any string).
GoldAlignment align_gold(const Corpus& corpus, const std::map<std::string, std::string>& gold);

struct RunResult {
  ClusterAssignment forms;
  ClusterAssignment lines;
  ExperimentSettings settings;
  std::optional<EvalReport> report;
};

/// Features -> clustering -> propagation -> optional evaluation.
RunResult run_corpus(const Corpus& corpus, const RunConfig& config, FeatureContext& ctx,
                     const std::optional<GoldAlignment>& gold = std::nullopt);

/// Clusters each first-letter chunk separately, then reclusters the chunk
/// clusters' founding forms and composes the two assignments.
RunResult run_chunked_corpus(const Corpus& corpus, const RunConfig& config, FeatureContext& ctx,
                             const std::optional<GoldAlignment>& gold = std::nullopt);

/// Keyword baseline and the two bounds, evaluated over unique lines.
std::vector<EvalReport> reference_reports(const Corpus& corpus, const GoldAlignment& gold);

struct SweepRow {
  ExperimentSettings settings;
  std::optional<EvalReport> report;
  std::size_t n_clusters = 0;
  std::string error;
};

/// Deduplicated, order-preserving cartesian product of recipes, n-gram sizes
/// and LSA selectors (selectors only expand recipes that use LSA).
std::vector<FeatureRecipe> expand_grid(const std::vector<std::vector<Family>>& family_sets,
                                       const std::vector<int>& ngram_max,
                                       const std::vector<LsaSelector>& selectors,
                                       const FeatureRecipe& base);

/// One row per grid point, sorted by (model, dimensions). Failures are kept as
/// rows with an error message.
std::vector<SweepRow> sweep_corpus(const Corpus& corpus, const RunConfig& config,
                                   const std::vector<FeatureRecipe>& grid, FeatureContext& ctx,
                                   const std::optional<GoldAlignment>& gold = std::nullopt,
                                   bool include_reference_rows = false);

/// File-level entry points used by the CLI. They read inputs, build the
/// corpus and write clusters.csv, metrics.json and manifest.json (plus
/// sweep.csv for sweeps) into config.out_dir.
RunResult run(const RunConfig& config);
RunResult run_chunked(const RunConfig& config);
std::vector<SweepRow> sweep(const RunConfig& config, const std::vector<FeatureRecipe>& grid,
                            bool include_reference_rows = false);

/// Reads and deduplicates all configured inputs.
Corpus load_corpus(const RunConfig& config, std::size_t* n_records = nullptr);

}  // namespace swiftnorm
