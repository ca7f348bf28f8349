// swiftnorm command-line front end.
//
// Exit codes: 0 success, 1 pipeline or configuration error, 2 unreadable
// input; CLI11 usage errors keep CLI11's own codes.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swiftnorm/error.hpp"
#include "swiftnorm/parallel.hpp"
#include "swiftnorm/pipeline.hpp"
#include "swiftnorm/report.hpp"
#include "swiftnorm/synth.hpp"

namespace fs = std::filesystem;
using namespace swiftnorm;

namespace {

// Raw flag values; only flags the user actually passed override the config.
struct RunFlags {
  std::string config_path;
  std::vector<std::string> inputs;
  std::string format;
  std::string tags;
  std::string families;
  int ngram_max = 1;
  long long lsa_k = 0;
  double lsa_variance = 0.9;
  std::string lsa_base;
  std::vector<double> weights;
  bool l2 = false;
  double threshold = 0.75;
  std::string linkage;
  std::string gate_mode;
  std::string stop_rule;
  double max_distance = 0.0;
  std::string chunk;
  std::string gold;
  std::string out;
  std::uint64_t seed = 42;
  std::size_t threads = 0;
  std::string cache_dir;
  bool provenance = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool recipe_flags) {
  cmd->add_option("--config", f.config_path, "manifest.json or config JSON to start from");
  cmd->add_option("--input", f.inputs, "input file (repeatable)");
  cmd->add_option("--format", f.format, "plain|mt");
  cmd->add_option("--tags", f.tags, "MT tags to extract, comma separated (default 50K,59)");
  if (recipe_flags) {
    cmd->add_option("--families", f.families, "feature families: onehot,tfidf,lsa,similarity");
    cmd->add_option("--ngram-max", f.ngram_max, "1 or 2");
    cmd->add_option("--lsa-k", f.lsa_k, "fixed LSA component count");
    cmd->add_option("--lsa-variance", f.lsa_variance, "LSA explained variance target");
    cmd->add_option("--weights", f.weights, "one weight per family")->delimiter(',');
  }
  cmd->add_option("--lsa-base", f.lsa_base, "onehot|tfidf matrix fed to LSA");
  cmd->add_flag("--l2-normalize", f.l2, "L2-normalize bag-of-words rows");
  cmd->add_option("--threshold", f.threshold, "token gate threshold in (0,1]");
  cmd->add_option("--linkage", f.linkage, "average|single|complete|centroid");
  cmd->add_option("--gate-mode", f.gate_mode, "representative|all_pairs");
  cmd->add_option("--stop-rule", f.stop_rule, "exhaust|freeze: what a gate-blocked closest pair does");
  cmd->add_option("--max-distance", f.max_distance, "optional distance cutoff");
  cmd->add_option("--chunk", f.chunk, "off|first-letter");
  cmd->add_option("--gold", f.gold, "gold CSV (unique_line_text,gold_id)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--seed", f.seed, "seed echoed into the manifest");
  cmd->add_option("--threads", f.threads, "worker threads (default: available cores)");
  cmd->add_option("--cache-dir", f.cache_dir, "similarity matrix disk cache");
  cmd->add_flag("--provenance", f.provenance, "also write provenance.csv");
}

std::set<std::string> split_tags(const std::string& s) {
  std::set<std::string> tags;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto end = s.find(',', pos);
    if (end == std::string::npos) end = s.size();
    if (end > pos) tags.insert(s.substr(pos, end - pos));
    pos = end + 1;
  }
  return tags;
}

RunConfig build_config(const CLI::App* cmd, const RunFlags& f, bool recipe_flags = true) {
  RunConfig c;
  if (!f.config_path.empty()) c = run_config_from_json(read_text_file(f.config_path));
  if (cmd->count("--threads") == 0 && f.config_path.empty()) c.threads = default_thread_count();
  auto given = [&](const char* name) {
    const auto* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--input")) c.inputs.assign(f.inputs.begin(), f.inputs.end());
  if (given("--format")) c.format = parse_input_format(f.format);
  if (given("--tags")) c.tags = split_tags(f.tags);
  if (recipe_flags) {
    if (given("--families")) c.recipe.families = parse_families(f.families);
    if (given("--ngram-max")) c.recipe.ngram_max = f.ngram_max;
    if (given("--lsa-k") && given("--lsa-variance")) throw ConfigInvalid("--lsa-k and --lsa-variance are exclusive");
    if (given("--lsa-k")) c.recipe.lsa = ComponentCount{f.lsa_k};
    if (given("--lsa-variance")) c.recipe.lsa = VarianceTarget{f.lsa_variance};
    if (given("--weights")) c.recipe.weights = f.weights;
  }
  if (given("--lsa-base")) c.recipe.lsa_base = parse_family(f.lsa_base);
  if (given("--l2-normalize")) c.recipe.l2_normalize = f.l2;
  if (given("--threshold")) c.threshold = f.threshold;
  if (given("--linkage")) c.linkage = parse_linkage(f.linkage);
  if (given("--gate-mode")) c.gate_mode = parse_gate_mode(f.gate_mode);
  if (given("--stop-rule")) c.stop_rule = parse_stop_rule(f.stop_rule);
  if (given("--max-distance")) c.max_distance = f.max_distance;
  if (given("--chunk")) c.chunk = parse_chunk_mode(f.chunk);
  if (given("--gold")) c.gold = f.gold;
  if (given("--out")) c.out_dir = f.out;
  if (given("--seed")) c.seed = f.seed;
  if (given("--threads")) c.threads = f.threads == 0 ? default_thread_count() : f.threads;
  if (given("--cache-dir")) c.cache_dir = f.cache_dir;
  if (given("--provenance")) c.write_provenance = f.provenance;
  if (c.inputs.empty()) throw ConfigInvalid("at least one --input is required");
  c.validate();
  return c;
}

void print_summary(const RunResult& r, const RunConfig& c) {
  std::cout << r.settings.model << ": " << r.forms.n_clusters() << " clusters";
  if (r.report) {
    std::cout << ", AMI " << r.report->ami << ", recall " << r.report->recall_hm << ", precision "
              << r.report->precision_hm;
  }
  std::cout << "\nwrote " << (c.out_dir / "clusters.csv").string() << '\n';
}

struct SweepFlags {
  std::vector<std::string> families;
  std::vector<int> ngram_max;
  std::vector<long long> lsa_k;
  std::vector<double> lsa_variance;
  std::string grid_path;
  bool reference_rows = false;
};

std::vector<FeatureRecipe> build_grid(const SweepFlags& s, const RunConfig& base) {
  if (!s.grid_path.empty()) {
    return recipes_from_json(read_text_file(s.grid_path));
  }
  std::vector<std::vector<Family>> family_sets;
  for (const auto& f : s.families) family_sets.push_back(parse_families(f));
  if (family_sets.empty()) family_sets.push_back(base.recipe.families);
  std::vector<int> ngrams = s.ngram_max.empty() ? std::vector<int>{base.recipe.ngram_max} : s.ngram_max;
  std::vector<LsaSelector> selectors;
  for (const auto k : s.lsa_k) selectors.emplace_back(ComponentCount{k});
  for (const auto v : s.lsa_variance) selectors.emplace_back(VarianceTarget{v});
  return expand_grid(family_sets, ngrams, selectors, base.recipe);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swiftnorm: counterparty name normalization for payment message fields"};
  app.require_subcommand(1);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a labeled synthetic corpus");
  std::string synth_config_path;
  std::string synth_out = "synth";
  SynthConfig synth_cfg;
  std::string operators;
  synth_cmd->add_option("--config", synth_config_path, "synth config JSON");
  synth_cmd->add_option("--out", synth_out, "output directory");
  synth_cmd->add_option("--seed", synth_cfg.seed, "generator seed");
  synth_cmd->add_option("--entities", synth_cfg.n_entities, "number of entities");
  synth_cmd->add_option("--typo-rate", synth_cfg.typo_rate, "per-character typo probability");
  synth_cmd->add_option("--operators", operators, "comma separated operators, 'none' or 'all'");
  synth_cmd->add_option("--shared-name-rate", synth_cfg.shared_name_rate, "probability of a same-name twin entity");

  RunFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "cluster one corpus");
  add_run_flags(run_cmd, run_flags, true);

  RunFlags chunk_flags;
  auto* chunk_cmd = app.add_subcommand("chunked-run", "cluster per first letter, then recluster representatives");
  add_run_flags(chunk_cmd, chunk_flags, true);

  RunFlags sweep_flags;
  SweepFlags grid_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a grid of feature recipes");
  add_run_flags(sweep_cmd, sweep_flags, false);
  sweep_cmd->add_option("--families", grid_flags.families, "family set per grid point (repeatable)");
  sweep_cmd->add_option("--ngram-max", grid_flags.ngram_max, "n-gram sizes")->delimiter(',');
  sweep_cmd->add_option("--lsa-k", grid_flags.lsa_k, "LSA component counts")->delimiter(',');
  sweep_cmd->add_option("--lsa-variance", grid_flags.lsa_variance, "LSA variance targets")->delimiter(',');
  sweep_cmd->add_option("--grid", grid_flags.grid_path, "JSON array of recipes; replaces the flags above");
  sweep_cmd->add_flag("--reference-rows", grid_flags.reference_rows, "add Baseline / m Clusters / One Cluster rows");

  auto* eval_cmd = app.add_subcommand("eval", "AMI and Jaccard scores of two label files");
  std::string eval_gold, eval_machine, eval_out;
  eval_cmd->add_option("--gold", eval_gold, "gold labels")->required();
  eval_cmd->add_option("--machine", eval_machine, "machine labels (e.g. clusters.csv)")->required();
  eval_cmd->add_option("--out", eval_out, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      SynthConfig cfg = synth_cfg;
      if (!synth_config_path.empty()) {
        cfg = synth_config_from_json(read_text_file(synth_config_path));
        if (synth_cmd->count("--seed")) cfg.seed = synth_cfg.seed;
        if (synth_cmd->count("--entities")) cfg.n_entities = synth_cfg.n_entities;
        if (synth_cmd->count("--typo-rate")) cfg.typo_rate = synth_cfg.typo_rate;
        if (synth_cmd->count("--shared-name-rate")) cfg.shared_name_rate = synth_cfg.shared_name_rate;
      }
      if (synth_cmd->count("--operators")) {
        cfg.operators.clear();
        if (operators == "all") {
          cfg.operators = all_operators();
        } else if (operators != "none") {
          for (const auto& op : split_tags(operators)) cfg.operators.insert(parse_operator(op));
        }
      }
      cfg.validate();
      const auto corpus = generate(cfg);
      const fs::path dir = synth_out;
      fs::create_directories(dir);
      std::string values;
      for (const auto& v : corpus.values) values += v.raw_text + '\n';
      write_text_file(dir / "values.txt", values);
      write_gold_csv(dir / "gold.csv", corpus.gold);
      write_text_file(dir / "manifest.json", synth_manifest_json(cfg, corpus));
      std::cout << corpus.values.size() << " values, " << corpus.gold.size() << " unique lines, "
                << corpus.n_gold_clusters << " gold clusters -> " << dir.string() << '\n';
    } else if (*run_cmd) {
      const auto cfg = build_config(run_cmd, run_flags);
      print_summary(run(cfg), cfg);
    } else if (*chunk_cmd) {
      auto cfg = build_config(chunk_cmd, chunk_flags);
      cfg.chunk = ChunkMode::first_letter;
      print_summary(run_chunked(cfg), cfg);
    } else if (*sweep_cmd) {
      const auto cfg = build_config(sweep_cmd, sweep_flags, false);
      const auto grid = build_grid(grid_flags, cfg);
      const auto rows = sweep(cfg, grid, grid_flags.reference_rows);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
      std::cout << rows.size() << " sweep rows (" << failed << " failed) -> "
                << (cfg.out_dir / "sweep.csv").string() << '\n';
    } else if (*eval_cmd) {
      for (const auto& p : {eval_gold, eval_machine}) {
        if (!fs::exists(p)) throw InputError("input file not found: " + p);
      }
      const auto [g, m] = align_label_files(read_label_file(eval_gold), read_label_file(eval_machine));
      const auto report = evaluate(g, m, ExperimentSettings{});
      const auto json = eval_report_json(report);
      if (eval_out.empty()) std::cout << json;
      else write_text_file(eval_out, json);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
