#include "swiftnorm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>

#include "swiftnorm/error.hpp"
#include "swiftnorm/parallel.hpp"
#include "swiftnorm/report.hpp"
#include "swiftnorm/similarity.hpp"

namespace swiftnorm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string format_ratio(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "onehot" || name == "one-hot") return Family::onehot;
  if (name == "tfidf" || name == "tf-idf") return Family::tfidf;
  if (name == "lsa") return Family::lsa;
  if (name == "similarity") return Family::similarity;
  throw ConfigInvalid("unknown feature family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::onehot: return "onehot";
    case Family::tfidf: return "tfidf";
    case Family::lsa: return "lsa";
    case Family::similarity: return "similarity";
  }
  return "similarity";
}

std::vector<Family> parse_families(std::string_view list) {
  std::vector<Family> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    auto end = list.find_first_of(",+", pos);
    if (end == std::string_view::npos) end = list.size();
    auto item = list.substr(pos, end - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.push_back(parse_family(item));
    pos = end + 1;
  }
  return out;
}

std::string join_families(const std::vector<Family>& families) {
  std::string out;
  for (const auto f : families) {
    if (!out.empty()) out += '+';
    out += to_string(f);
  }
  return out;
}

bool FeatureRecipe::uses(Family f) const {
  return std::find(families.begin(), families.end(), f) != families.end();
}

LsaSelector FeatureRecipe::lsa_selector() const {
  return lsa.value_or(LsaSelector{VarianceTarget{0.9}});
}

void FeatureRecipe::validate() const {
  if (families.empty()) throw ConfigInvalid("at least one feature family is required");
  for (std::size_t i = 0; i < families.size(); ++i) {
    if (std::count(families.begin(), families.end(), families[i]) > 1) {
      throw ConfigInvalid("feature family listed twice: " + std::string(to_string(families[i])));
    }
  }
  if (ngram_max != 1 && ngram_max != 2) throw ConfigInvalid("ngram_max must be 1 or 2");
  if (lsa_base != Family::tfidf && lsa_base != Family::onehot) {
    throw ConfigInvalid("LSA base must be onehot or tfidf");
  }
  if (!weights.empty() && weights.size() != families.size()) {
    throw ConfigInvalid("expected one weight per feature family");
  }
  for (const double w : weights) {
    if (!(w >= 0.0)) throw ConfigInvalid("family weights must be nonnegative");
  }
  if (lsa) {
    if (const auto* k = std::get_if<ComponentCount>(&*lsa); k && k->k <= 0) {
      throw InvalidSelector("LSA component count must be positive");
    }
    if (const auto* v = std::get_if<VarianceTarget>(&*lsa); v && !(v->ratio > 0.0 && v->ratio <= 1.0)) {
      throw InvalidSelector("LSA variance target must lie in (0, 1]");
    }
  }
}

std::string FeatureRecipe::lsa_label() const {
  if (!uses(Family::lsa)) return {};
  const auto sel = lsa_selector();
  if (const auto* k = std::get_if<ComponentCount>(&sel)) return "k=" + std::to_string(k->k);
  return "variance=" + format_ratio(std::get<VarianceTarget>(sel).ratio);
}

std::string FeatureRecipe::model_name() const {
  auto family_label = [&](Family f) -> std::string {
    switch (f) {
      case Family::onehot: return "One-Hot";
      case Family::tfidf: return "TF-IDF";
      case Family::lsa: return lsa_base == Family::onehot ? "One-Hot LSA" : "TF-IDF LSA";
      case Family::similarity: return "Similarity";
    }
    return {};
  };
  const bool bow = uses(Family::onehot) || uses(Family::tfidf) || uses(Family::lsa);
  const std::string bigrams = (ngram_max == 2 && bow) ? " Bigrams" : "";

  std::vector<std::string> rest;
  for (const auto f : families) {
    if (f != Family::similarity) rest.push_back(family_label(f));
  }
  std::string joined;
  for (const auto& r : rest) joined += (joined.empty() ? "" : " + ") + r;

  if (rest.empty()) return "Similarity";
  if (uses(Family::similarity)) return "Combined (" + joined + bigrams + ")";
  return joined + bigrams;
}

ChunkMode parse_chunk_mode(std::string_view name) {
  if (name == "off") return ChunkMode::off;
  if (name == "first-letter" || name == "first_letter") return ChunkMode::first_letter;
  throw ConfigInvalid("unknown chunk mode '" + std::string(name) + "'");
}

std::string_view to_string(ChunkMode mode) {
  return mode == ChunkMode::off ? "off" : "first-letter";
}

void RunConfig::validate() const {
  recipe.validate();
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ConfigInvalid("threshold must lie in (0, 1]");
  if (max_distance && !(*max_distance >= 0.0)) throw ConfigInvalid("max distance must be nonnegative");
  if (threads == 0) throw ConfigInvalid("thread count must be positive");
}

AgglomerateOptions RunConfig::agglomerate_options() const {
  AgglomerateOptions opt;
  opt.threshold = threshold;
  opt.linkage = linkage;
  opt.gate_mode = gate_mode;
  opt.stop_rule = stop_rule;
  opt.max_distance = max_distance;
  opt.threads = threads;
  return opt;
}

FeatureContext::FeatureContext(std::size_t threads, std::optional<std::filesystem::path> cache_dir)
    : threads_(std::max<std::size_t>(threads, 1)), cache_dir_(std::move(cache_dir)) {}

const Matrix& FeatureContext::similarity(const Corpus& corpus) {
  const std::string key = corpus_fingerprint(corpus) + "/" + std::to_string(corpus.size());
  if (auto it = similarity_.find(key); it != similarity_.end()) {
    ++stats_.similarity_cache_hits;
    return it->second;
  }

  const auto start = Clock::now();
  std::optional<Matrix> sim;
  std::filesystem::path path;
  if (cache_dir_) {
    path = similarity_cache_path(*cache_dir_, corpus);
    sim = read_similarity_cache(path);
    if (sim && static_cast<std::size_t>(sim->rows()) != corpus.size()) sim.reset();
    if (sim) ++stats_.similarity_cache_hits;
  }
  if (!sim) {
    sim = similarity_matrix(corpus, threads_);
    ++stats_.similarity_computations;
    if (cache_dir_) {
      std::filesystem::create_directories(*cache_dir_);
      write_similarity_cache(path, *sim);
    }
  }
  stats_.similarity_seconds += seconds_since(start);
  return similarity_.emplace(key, std::move(*sim)).first->second;
}

FeatureMatrix FeatureContext::bag_of_words(const Corpus& corpus, Family kind, int ngram_max, bool l2_normalize) {
  const Vocabulary vocab = build_vocabulary(corpus, ngram_max);
  FeatureMatrix m = kind == Family::onehot ? one_hot_matrix(corpus, vocab) : tfidf_matrix(corpus, vocab);
  if (l2_normalize) l2_normalize_rows(m);
  return m;
}

const LsaDecomposition& FeatureContext::decomposition(const Corpus& corpus, const FeatureRecipe& recipe) {
  const std::string key = corpus_fingerprint(corpus) + "/" + std::string(to_string(recipe.lsa_base)) + "/" +
                          std::to_string(recipe.ngram_max) + (recipe.l2_normalize ? "/l2" : "");
  if (auto it = lsa_.find(key); it != lsa_.end()) return it->second;
  const FeatureMatrix base = bag_of_words(corpus, recipe.lsa_base, recipe.ngram_max, recipe.l2_normalize);
  return lsa_.emplace(key, decompose(base.values)).first->second;
}

FeatureMatrix build_features(const Corpus& corpus, const FeatureRecipe& recipe, FeatureContext& ctx) {
  recipe.validate();
  const auto start = Clock::now();
  std::vector<FeatureMatrix> parts;
  parts.reserve(recipe.families.size());
  for (const auto family : recipe.families) {
    switch (family) {
      case Family::similarity:
        parts.push_back(make_family("similarity", ctx.similarity(corpus)));
        break;
      case Family::onehot:
      case Family::tfidf:
        parts.push_back(ctx.bag_of_words(corpus, family, recipe.ngram_max, recipe.l2_normalize));
        break;
      case Family::lsa:
        parts.push_back(lsa_project(ctx.decomposition(corpus, recipe), recipe.lsa_selector(), "lsa"));
        break;
    }
  }
  std::vector<const FeatureMatrix*> ptrs;
  for (const auto& p : parts) ptrs.push_back(&p);
  FeatureMatrix out = parts.size() == 1 && recipe.weights.empty() ? std::move(parts.front())
                                                                  : assemble(ptrs, recipe.weights);
  ctx.stats().features_seconds += seconds_since(start);
  return out;
}

GoldAlignment align_gold(const Corpus& corpus, const std::map<std::string, std::string>& gold) {
  GoldAlignment out;
  std::map<std::string, std::size_t> id_of;
  for (std::size_t l = 0; l < corpus.lines.size(); ++l) {
    const auto it = gold.find(corpus.lines[l].text);
    if (it == gold.end()) {
      ++out.missing;
      continue;
    }
    out.line_indices.push_back(l);
    out.labels.push_back(id_of.try_emplace(it->second, id_of.size()).first->second);
  }
  return out;
}

namespace {

ExperimentSettings settings_for(const RunConfig& config, const FeatureMatrix& features) {
  ExperimentSettings s;
  s.model = config.recipe.model_name();
  if (features.explained_variance && !features.explained_variance->empty()) {
    s.explained_variance = features.explained_variance->back();
  }
  s.n_dimensions = features.cols();
  s.families = join_families(config.recipe.families);
  s.ngram_max = config.recipe.ngram_max;
  s.threshold = config.threshold;
  s.lsa = config.recipe.lsa_label();
  return s;
}

std::optional<EvalReport> evaluate_lines(const ClusterAssignment& lines, const std::optional<GoldAlignment>& gold,
                                         const ExperimentSettings& settings) {
  if (!gold || gold->line_indices.empty()) return std::nullopt;
  std::vector<std::size_t> machine;
  machine.reserve(gold->line_indices.size());
  for (const auto l : gold->line_indices) machine.push_back(lines.labels[l]);
  return evaluate(gold->labels, machine, settings);
}

// Clusters the forms of `corpus`; `settings` receives the feature shape.
ClusterAssignment cluster_forms(const Corpus& corpus, const RunConfig& config, FeatureContext& ctx,
                                ExperimentSettings& settings) {
  const FeatureMatrix features = build_features(corpus, config.recipe, ctx);
  settings = settings_for(config, features);
  const auto start = Clock::now();
  ClusterAssignment forms = agglomerate(features, corpus, config.agglomerate_options());
  ctx.stats().cluster_seconds += seconds_since(start);
  return forms;
}

// Chunks can be smaller than a fixed LSA component count; such chunks keep
// every component they have.
RunConfig clamp_for_chunk(const Corpus& chunk, const RunConfig& config, FeatureContext& ctx) {
  RunConfig local = config;
  if (!config.recipe.uses(Family::lsa) || !config.recipe.lsa) return local;
  if (const auto* k = std::get_if<ComponentCount>(&*config.recipe.lsa)) {
    const auto available = static_cast<long long>(ctx.decomposition(chunk, config.recipe).components());
    if (k->k > available) local.recipe.lsa = ComponentCount{std::max(1LL, available)};
  }
  return local;
}

}  // namespace

RunResult run_corpus(const Corpus& corpus, const RunConfig& config, FeatureContext& ctx,
                     const std::optional<GoldAlignment>& gold) {
  config.validate();
  RunResult result;
  result.forms = cluster_forms(corpus, config, ctx, result.settings);
  result.lines = propagate(result.forms, corpus);
  result.report = evaluate_lines(result.lines, gold, result.settings);
  return result;
}

RunResult run_chunked_corpus(const Corpus& corpus, const RunConfig& config, FeatureContext& ctx,
                             const std::optional<GoldAlignment>& gold) {
  config.validate();
  const std::size_t m = corpus.size();

  // Forms are sorted by sorted_text, so every first-letter chunk is a
  // contiguous index range.
  std::vector<std::vector<std::size_t>> chunks;
  for (std::size_t f = 0; f < m; ++f) {
    if (f == 0 || corpus.forms[f].sorted_text.front() != corpus.forms[f - 1].sorted_text.front()) {
      chunks.emplace_back();
    }
    chunks.back().push_back(f);
  }

  std::vector<std::size_t> chunk_founder(m);
  std::vector<MergeStep> log;
  ExperimentSettings settings;
  for (const auto& chunk : chunks) {
    const Corpus sub = subset_corpus(corpus, chunk);
    const ClusterAssignment local = cluster_forms(sub, clamp_for_chunk(sub, config, ctx), ctx, settings);
    std::vector<std::size_t> founder_of_label(local.n_clusters(), m);
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      auto& f = founder_of_label[local.labels[i]];
      f = std::min(f, chunk[i]);
    }
    for (std::size_t i = 0; i < chunk.size(); ++i) chunk_founder[chunk[i]] = founder_of_label[local.labels[i]];
    for (const auto& step : local.merge_log) log.push_back(MergeStep{chunk[step.a], chunk[step.b], step.distance});
  }

  // Founders are ascending because chunk_founder[f] <= f.
  std::vector<std::size_t> reps;
  for (std::size_t f = 0; f < m; ++f) {
    if (chunk_founder[f] == f) reps.push_back(f);
  }
  const Corpus rep_corpus = subset_corpus(corpus, reps);
  const ClusterAssignment rep_assignment =
      cluster_forms(rep_corpus, clamp_for_chunk(rep_corpus, config, ctx), ctx, settings);
  for (const auto& step : rep_assignment.merge_log) {
    log.push_back(MergeStep{reps[step.a], reps[step.b], step.distance});
  }

  std::vector<std::size_t> rep_position(m, 0);
  for (std::size_t r = 0; r < reps.size(); ++r) rep_position[reps[r]] = r;
  std::vector<std::size_t> final_founder_of_label(rep_assignment.n_clusters(), m);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    auto& f = final_founder_of_label[rep_assignment.labels[r]];
    f = std::min(f, reps[r]);
  }

  RunResult result;
  result.settings = settings;
  result.forms.labels.resize(m);
  std::vector<std::size_t> id_of(m, m);
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t founder = final_founder_of_label[rep_assignment.labels[rep_position[chunk_founder[f]]]];
    if (id_of[founder] == m) {
      id_of[founder] = result.forms.reps.size();
      result.forms.reps.push_back(representative_tokens(corpus.forms[founder].ordered_tokens));
    }
    result.forms.labels[f] = id_of[founder];
  }
  result.forms.merge_log = std::move(log);
  result.lines = propagate(result.forms, corpus);
  result.report = evaluate_lines(result.lines, gold, result.settings);
  return result;
}

std::vector<EvalReport> reference_reports(const Corpus& corpus, const GoldAlignment& gold) {
  std::vector<EvalReport> out;
  if (gold.line_indices.empty()) return out;
  auto restrict = [&](const ClusterAssignment& a) {
    std::vector<std::size_t> labels;
    for (const auto l : gold.line_indices) labels.push_back(a.labels[l]);
    return labels;
  };
  const std::size_t n = corpus.lines.size();
  ExperimentSettings s;
  s.model = "Baseline";
  out.push_back(evaluate(gold.labels, restrict(baseline_first_two(corpus.lines)), s));
  s.model = "m Clusters";
  out.push_back(evaluate(gold.labels, restrict(bound_singletons(n)), s));
  s.model = "One Cluster";
  out.push_back(evaluate(gold.labels, restrict(bound_one_cluster(n)), s));
  return out;
}

std::vector<FeatureRecipe> expand_grid(const std::vector<std::vector<Family>>& family_sets,
                                       const std::vector<int>& ngram_max,
                                       const std::vector<LsaSelector>& selectors,
                                       const FeatureRecipe& base) {
  std::vector<FeatureRecipe> out;
  const std::vector<int> ngrams = ngram_max.empty() ? std::vector<int>{base.ngram_max} : ngram_max;
  auto add = [&](FeatureRecipe r) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
  };
  for (const auto& families : family_sets) {
    for (const int n : ngrams) {
      FeatureRecipe r = base;
      r.families = families;
      r.ngram_max = n;
      if (!base.weights.empty() && base.weights.size() != families.size()) r.weights.clear();
      const bool bow = r.uses(Family::onehot) || r.uses(Family::tfidf) || r.uses(Family::lsa);
      if (!bow) r.ngram_max = 1;
      if (r.uses(Family::lsa) && !selectors.empty()) {
        for (const auto& sel : selectors) {
          r.lsa = sel;
          add(r);
        }
      } else {
        if (!r.uses(Family::lsa)) r.lsa.reset();
        add(r);
      }
    }
  }
  return out;
}

std::vector<SweepRow> sweep_corpus(const Corpus& corpus, const RunConfig& config,
                                   const std::vector<FeatureRecipe>& grid, FeatureContext& ctx,
                                   const std::optional<GoldAlignment>& gold, bool include_reference_rows) {
  std::vector<SweepRow> rows;
  for (const auto& recipe : grid) {
    RunConfig point = config;
    point.recipe = recipe;
    SweepRow row;
    row.settings.model = recipe.model_name();
    row.settings.families = join_families(recipe.families);
    row.settings.ngram_max = recipe.ngram_max;
    row.settings.threshold = config.threshold;
    row.settings.lsa = recipe.lsa_label();
    try {
      const RunResult r = point.chunk == ChunkMode::first_letter ? run_chunked_corpus(corpus, point, ctx, gold)
                                                                 : run_corpus(corpus, point, ctx, gold);
      row.settings = r.settings;
      row.report = r.report;
      row.n_clusters = r.forms.n_clusters();
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  if (include_reference_rows && gold) {
    for (auto& report : reference_reports(corpus, *gold)) {
      SweepRow row;
      row.settings = report.settings;
      row.n_clusters = report.n_clusters_machine;
      row.report = std::move(report);
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.settings.model != b.settings.model) return a.settings.model < b.settings.model;
    return a.settings.n_dimensions.value_or(0) < b.settings.n_dimensions.value_or(0);
  });
  return rows;
}

Corpus load_corpus(const RunConfig& config, std::size_t* n_records) {
  if (config.inputs.empty()) throw ConfigInvalid("no input files given");
  std::vector<EntityRecord> records;
  for (const auto& path : config.inputs) {
    if (!std::filesystem::exists(path)) throw InputError("input file not found: " + path.string());
    std::vector<MalformedField> malformed;
    auto part = read_records(path, config.format, config.tags, &malformed);
    for (const auto& m : malformed) std::cerr << "warning: " << path.string() << ": " << m.what() << '\n';
    records.insert(records.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (n_records) *n_records = records.size();
  Corpus corpus = build_corpus(records);
  if (!corpus.dropped_records.empty()) {
    std::cerr << "warning: " << corpus.dropped_records.size() << " record(s) had no tokens after cleaning\n";
  }
  return corpus;
}

namespace {

std::optional<GoldAlignment> load_gold(const RunConfig& config, const Corpus& corpus) {
  if (!config.gold) return std::nullopt;
  if (!std::filesystem::exists(*config.gold)) throw InputError("gold file not found: " + config.gold->string());
  GoldAlignment gold = align_gold(corpus, read_gold_csv(*config.gold));
  if (gold.missing > 0) {
    std::cerr << "warning: " << gold.missing << " unique line(s) missing from gold file; excluded from evaluation\n";
  }
  return gold;
}

template <typename Runner>
RunResult run_to_files(const RunConfig& config, std::string_view command, Runner runner) {
  config.validate();
  std::size_t n_records = 0;
  const Corpus corpus = load_corpus(config, &n_records);
  const auto gold = load_gold(config, corpus);
  FeatureContext ctx(config.threads, config.cache_dir);
  RunResult result = runner(corpus, ctx, gold);

  std::filesystem::create_directories(config.out_dir);
  write_text_file(config.out_dir / "clusters.csv", clusters_csv(corpus, result.lines));
  write_text_file(config.out_dir / "metrics.json", metrics_json(result, corpus));
  write_text_file(config.out_dir / "manifest.json", manifest_json(command, config, ctx.stats(), corpus, n_records));
  if (config.write_provenance) write_provenance_csv(corpus, n_records, config.out_dir / "provenance.csv");
  return result;
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (config.chunk == ChunkMode::first_letter) return run_chunked(config);
  return run_to_files(config, "run", [&](const Corpus& c, FeatureContext& ctx, const auto& gold) {
    return run_corpus(c, config, ctx, gold);
  });
}

RunResult run_chunked(const RunConfig& config) {
  RunConfig chunked = config;
  chunked.chunk = ChunkMode::first_letter;
  return run_to_files(chunked, "chunked-run", [&](const Corpus& c, FeatureContext& ctx, const auto& gold) {
    return run_chunked_corpus(c, chunked, ctx, gold);
  });
}

std::vector<SweepRow> sweep(const RunConfig& config, const std::vector<FeatureRecipe>& grid,
                            bool include_reference_rows) {
  if (!(config.threshold > 0.0 && config.threshold <= 1.0)) throw ConfigInvalid("threshold must lie in (0, 1]");
  std::size_t n_records = 0;
  const Corpus corpus = load_corpus(config, &n_records);
  const auto gold = load_gold(config, corpus);
  FeatureContext ctx(config.threads, config.cache_dir);
  auto rows = sweep_corpus(corpus, config, grid, ctx, gold, include_reference_rows);

  std::filesystem::create_directories(config.out_dir);
  write_text_file(config.out_dir / "sweep.csv", sweep_csv(rows));
  write_text_file(config.out_dir / "manifest.json", manifest_json("sweep", config, ctx.stats(), corpus, n_records, grid));
  return rows;
}

}  // namespace swiftnorm
