#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnorm/pipeline.hpp"
#include "swiftnorm/synth.hpp"

namespace swiftnorm {

/// Splits one CSV record; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_record(std::string_view line);

/// unique_line_text,gold_id
std::map<std::string, std::string> read_gold_csv(const std::filesystem::path& path);
void write_gold_csv(const std::filesystem::path& path, const std::vector<GoldEntry>& gold);

/// Labels for the standalone `eval` command. A CSV with a header is keyed by
/// its unique_line_text column (else the first column) and labeled by its
/// gold_id/cluster_id/label column (else the last). A file without commas is
/// one label per line.
struct LabelFile {
  std::vector<std::string> keys;  // empty for positional files
  std::vector<std::string> labels;
};
LabelFile read_label_file(const std::filesystem::path& path);

/// Aligns two label files (by key when both are keyed, else by position) and
/// returns dense integer labels. Throws LengthMismatch or Error.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> align_label_files(const LabelFile& gold,
                                                                                  const LabelFile& machine);

/// canonical_id,unique_line_text,cluster_id,cluster_rep_tokens,cluster_size
/// One row per unique line; cluster_size counts unique lines.
std::string clusters_csv(const Corpus& corpus, const ClusterAssignment& lines);

std::string metrics_json(const RunResult& result, const Corpus& corpus);
std::string eval_report_json(const EvalReport& report);

/// model,explained_variance,n_dimensions,n_clusters,recall,precision,ami,
/// families,ngram_max,lsa,threshold,error
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string run_config_json(const RunConfig& config);
RunConfig run_config_from_json(std::string_view json);

/// Config echo, corpus counts, timings and (for sweeps) the grid. Feeding
/// the "config" object back through run_config_from_json repeats the run.
std::string manifest_json(std::string_view command, const RunConfig& config, const RunStats& stats,
                          const Corpus& corpus, std::size_t n_records,
                          const std::vector<FeatureRecipe>& grid = {});
std::string recipe_json(const FeatureRecipe& recipe);
FeatureRecipe recipe_from_json(std::string_view json);
/// JSON array of recipe objects, as stored under "grid" in a sweep manifest.
std::vector<FeatureRecipe> recipes_from_json(std::string_view json);

std::string synth_manifest_json(const SynthConfig& config, const SynthCorpus& corpus);
std::string synth_config_json(const SynthConfig& config);
SynthConfig synth_config_from_json(std::string_view json);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace swiftnorm
