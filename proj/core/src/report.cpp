#include "swiftnorm/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "swiftnorm/error.hpp"
#include "swiftnorm/similarity.hpp"

namespace swiftnorm {

using Json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + '"';
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json settings_json(const ExperimentSettings& s) {
  Json j;
  j["model"] = s.model;
  j["explained_variance"] = optional_json(s.explained_variance);
  j["n_dimensions"] = optional_json(s.n_dimensions);
  j["families"] = s.families;
  j["ngram_max"] = s.ngram_max;
  j["threshold"] = optional_json(s.threshold);
  j["lsa"] = s.lsa;
  return j;
}

Json report_json(const EvalReport& r) {
  Json j;
  j["ami"] = r.ami;
  j["recall"] = r.recall_hm;
  j["precision"] = r.precision_hm;
  j["n_clusters_machine"] = r.n_clusters_machine;
  j["n_clusters_gold"] = r.n_clusters_gold;
  return j;
}

Json recipe_to_json(const FeatureRecipe& r) {
  Json j;
  j["families"] = join_families(r.families);
  j["ngram_max"] = r.ngram_max;
  if (r.lsa) {
    if (const auto* k = std::get_if<ComponentCount>(&*r.lsa)) j["lsa"] = Json{{"k", k->k}};
    else j["lsa"] = Json{{"variance", std::get<VarianceTarget>(*r.lsa).ratio}};
  } else {
    j["lsa"] = nullptr;
  }
  j["lsa_base"] = std::string(to_string(r.lsa_base));
  j["weights"] = r.weights;
  j["l2_normalize"] = r.l2_normalize;
  return j;
}

FeatureRecipe recipe_from(const Json& j) {
  FeatureRecipe r;
  r.families = parse_families(j.at("families").get<std::string>());
  r.ngram_max = j.value("ngram_max", 1);
  if (j.contains("lsa") && !j["lsa"].is_null()) {
    const auto& l = j["lsa"];
    if (l.contains("k")) r.lsa = ComponentCount{l["k"].get<long long>()};
    else r.lsa = VarianceTarget{l.at("variance").get<double>()};
  }
  r.lsa_base = parse_family(j.value("lsa_base", std::string("tfidf")));
  r.weights = j.value("weights", std::vector<double>{});
  r.l2_normalize = j.value("l2_normalize", false);
  return r;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  std::vector<std::string> inputs;
  for (const auto& p : c.inputs) inputs.push_back(p.string());
  j["inputs"] = inputs;
  j["format"] = std::string(to_string(c.format));
  j["tags"] = std::vector<std::string>(c.tags.begin(), c.tags.end());
  j["recipe"] = recipe_to_json(c.recipe);
  j["threshold"] = c.threshold;
  j["linkage"] = std::string(to_string(c.linkage));
  j["gate_mode"] = std::string(to_string(c.gate_mode));
  j["stop_rule"] = std::string(to_string(c.stop_rule));
  j["max_distance"] = optional_json(c.max_distance);
  j["chunk"] = std::string(to_string(c.chunk));
  j["gold"] = c.gold ? Json(c.gold->string()) : Json(nullptr);
  j["out_dir"] = c.out_dir.string();
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["cache_dir"] = c.cache_dir ? Json(c.cache_dir->string()) : Json(nullptr);
  j["provenance"] = c.write_provenance;
  return j;
}

RunConfig config_from(const Json& j) {
  RunConfig c;
  for (const auto& p : j.at("inputs")) c.inputs.emplace_back(p.get<std::string>());
  c.format = parse_input_format(j.value("format", std::string("plain")));
  if (j.contains("tags")) {
    c.tags.clear();
    for (const auto& t : j["tags"]) c.tags.insert(t.get<std::string>());
  }
  if (j.contains("recipe")) c.recipe = recipe_from(j["recipe"]);
  c.threshold = j.value("threshold", 0.75);
  c.linkage = parse_linkage(j.value("linkage", std::string("average")));
  c.gate_mode = parse_gate_mode(j.value("gate_mode", std::string("representative")));
  c.stop_rule = parse_stop_rule(j.value("stop_rule", std::string("exhaust")));
  if (j.contains("max_distance") && !j["max_distance"].is_null()) c.max_distance = j["max_distance"].get<double>();
  c.chunk = parse_chunk_mode(j.value("chunk", std::string("off")));
  if (j.contains("gold") && !j["gold"].is_null()) c.gold = j["gold"].get<std::string>();
  c.out_dir = j.value("out_dir", std::string("out"));
  c.seed = j.value("seed", std::uint64_t{42});
  c.threads = j.value("threads", std::size_t{1});
  if (j.contains("cache_dir") && !j["cache_dir"].is_null()) c.cache_dir = j["cache_dir"].get<std::string>();
  c.write_provenance = j.value("provenance", false);
  return c;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file: " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::map<std::string, std::string> read_gold_csv(const std::filesystem::path& path) {
  const auto lines = split_lines(read_text_file(path));
  std::map<std::string, std::string> gold;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split_csv_record(lines[i]);
    if (i == 0 && fields.size() >= 2 && fields[0] == "unique_line_text") continue;
    if (fields.size() < 2) {
      throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected unique_line_text,gold_id");
    }
    gold[fields[0]] = fields[1];
  }
  return gold;
}

void write_gold_csv(const std::filesystem::path& path, const std::vector<GoldEntry>& gold) {
  std::string out = "unique_line_text,gold_id\n";
  for (const auto& g : gold) out += csv_field(g.unique_line_text) + ',' + std::to_string(g.gold_id) + '\n';
  write_text_file(path, out);
}

LabelFile read_label_file(const std::filesystem::path& path) {
  const auto lines = split_lines(read_text_file(path));
  LabelFile out;
  if (lines.empty()) return out;
  if (lines[0].find(',') == std::string::npos) {
    for (const auto& l : lines) {
      if (!l.empty()) out.labels.push_back(l);
    }
    return out;
  }
  const auto header = split_csv_record(lines[0]);
  std::size_t key_col = 0;
  std::size_t label_col = header.size() - 1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "unique_line_text") key_col = c;
  }
  for (const char* name : {"label", "cluster_id", "gold_id"}) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == name) label_col = c;
    }
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto f = split_csv_record(lines[i]);
    if (f.size() <= std::max(key_col, label_col)) {
      throw InputError(path.string() + ":" + std::to_string(i + 1) + ": too few columns");
    }
    out.keys.push_back(f[key_col]);
    out.labels.push_back(f[label_col]);
  }
  return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> align_label_files(const LabelFile& gold,
                                                                                  const LabelFile& machine) {
  auto densify = [](std::unordered_map<std::string, std::size_t>& ids, const std::string& label) {
    return ids.try_emplace(label, ids.size()).first->second;
  };
  std::unordered_map<std::string, std::size_t> gold_ids, machine_ids;
  std::vector<std::size_t> g, m;
  if (!gold.keys.empty() && !machine.keys.empty()) {
    std::unordered_map<std::string, std::string> machine_by_key;
    for (std::size_t i = 0; i < machine.keys.size(); ++i) machine_by_key[machine.keys[i]] = machine.labels[i];
    for (std::size_t i = 0; i < gold.keys.size(); ++i) {
      const auto it = machine_by_key.find(gold.keys[i]);
      if (it == machine_by_key.end()) throw Error("key missing from machine labels: " + gold.keys[i]);
      g.push_back(densify(gold_ids, gold.labels[i]));
      m.push_back(densify(machine_ids, it->second));
    }
    return {g, m};
  }
  if (gold.labels.size() != machine.labels.size()) throw LengthMismatch(gold.labels.size(), machine.labels.size());
  for (std::size_t i = 0; i < gold.labels.size(); ++i) {
    g.push_back(densify(gold_ids, gold.labels[i]));
    m.push_back(densify(machine_ids, machine.labels[i]));
  }
  return {g, m};
}

std::string clusters_csv(const Corpus& corpus, const ClusterAssignment& lines) {
  const auto sizes = lines.cluster_sizes();
  std::string out = "canonical_id,unique_line_text,cluster_id,cluster_rep_tokens,cluster_size\n";
  for (std::size_t l = 0; l < corpus.lines.size(); ++l) {
    const std::size_t c = lines.labels[l];
    out += std::to_string(corpus.lines[l].canonical_index);
    out += ',';
    out += csv_field(corpus.lines[l].text);
    out += ',';
    out += std::to_string(c);
    out += ',';
    out += csv_field(lines.reps[c].joined());
    out += ',';
    out += std::to_string(sizes[c]);
    out += '\n';
  }
  return out;
}

std::string metrics_json(const RunResult& result, const Corpus& corpus) {
  Json j;
  j["model"] = result.settings.model;
  j["settings"] = settings_json(result.settings);
  j["n_canonical_forms"] = corpus.size();
  j["n_unique_lines"] = corpus.lines.size();
  j["n_clusters"] = result.forms.n_clusters();
  j["evaluation"] = result.report ? report_json(*result.report) : Json(nullptr);
  return j.dump(2) + '\n';
}

std::string eval_report_json(const EvalReport& report) {
  Json j = report_json(report);
  j["settings"] = settings_json(report.settings);
  return j.dump(2) + '\n';
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "model,explained_variance,n_dimensions,n_clusters,recall,precision,ami,families,ngram_max,lsa,threshold,error\n";
  for (const auto& r : rows) {
    const auto& s = r.settings;
    out += csv_field(s.model) + ',';
    out += (s.explained_variance ? format_double(*s.explained_variance) : "") + ',';
    out += (s.n_dimensions ? std::to_string(*s.n_dimensions) : "") + ',';
    out += (r.error.empty() ? std::to_string(r.n_clusters) : "") + ',';
    out += (r.report ? format_double(r.report->recall_hm) : "") + ',';
    out += (r.report ? format_double(r.report->precision_hm) : "") + ',';
    out += (r.report ? format_double(r.report->ami) : "") + ',';
    out += csv_field(s.families) + ',';
    out += (s.families.empty() ? "" : std::to_string(s.ngram_max)) + ',';
    out += csv_field(s.lsa) + ',';
    out += (s.threshold ? format_double(*s.threshold) : "") + ',';
    out += csv_field(r.error) + '\n';
  }
  return out;
}

std::string recipe_json(const FeatureRecipe& recipe) { return recipe_to_json(recipe).dump(); }

FeatureRecipe recipe_from_json(std::string_view json) { return recipe_from(parse_json(json)); }

std::vector<FeatureRecipe> recipes_from_json(std::string_view json) {
  const Json root = parse_json(json);
  const Json& j = root.is_object() && root.contains("grid") ? root["grid"] : root;
  if (!j.is_array()) throw ConfigInvalid("grid must be a JSON array of recipes");
  std::vector<FeatureRecipe> out;
  try {
    for (const auto& r : j) out.push_back(recipe_from(r));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("invalid grid: ") + e.what());
  }
  return out;
}

std::string run_config_json(const RunConfig& config) { return config_to_json(config).dump(2) + '\n'; }

RunConfig run_config_from_json(std::string_view json) {
  const Json j = parse_json(json);
  try {
    return config_from(j.contains("config") ? j["config"] : j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("invalid run configuration: ") + e.what());
  }
}

std::string manifest_json(std::string_view command, const RunConfig& config, const RunStats& stats,
                          const Corpus& corpus, std::size_t n_records, const std::vector<FeatureRecipe>& grid) {
  Json j;
  j["tool"] = "swiftnorm";
  j["version"] = "0.1.0";
  j["command"] = std::string(command);
  j["config"] = config_to_json(config);
  if (!grid.empty()) {
    Json g = Json::array();
    for (const auto& r : grid) g.push_back(recipe_to_json(r));
    j["grid"] = g;
  }
  j["corpus"] = Json{{"records", n_records},
                     {"unique_lines", corpus.lines.size()},
                     {"canonical_forms", corpus.size()},
                     {"fingerprint", corpus_fingerprint(corpus)}};
  j["stats"] = Json{{"similarity_seconds", stats.similarity_seconds},
                    {"features_seconds", stats.features_seconds},
                    {"cluster_seconds", stats.cluster_seconds},
                    {"similarity_cache_hits", stats.similarity_cache_hits},
                    {"similarity_computations", stats.similarity_computations}};
  return j.dump(2) + '\n';
}

std::string synth_config_json(const SynthConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["n_entities"] = c.n_entities;
  j["variation_weights"] = c.variation_weights;
  j["typo_rate"] = c.typo_rate;
  std::vector<std::string> ops;
  for (const auto op : c.operators) ops.emplace_back(to_string(op));
  j["operators"] = ops;
  j["company_fraction"] = c.company_fraction;
  j["salutation_rate"] = c.salutation_rate;
  j["middle_name_rate"] = c.middle_name_rate;
  j["suffix_abbrev_rate"] = c.suffix_abbrev_rate;
  j["address_drop_rate"] = c.address_drop_rate;
  j["account_prefix_rate"] = c.account_prefix_rate;
  j["token_shuffle_rate"] = c.token_shuffle_rate;
  j["shared_name_rate"] = c.shared_name_rate;
  j["name_pool_size"] = c.name_pool_size;
  j["address_pool_size"] = c.address_pool_size;
  j["street_pool_path"] = c.street_pool_path ? Json(c.street_pool_path->string()) : Json(nullptr);
  j["city_pool_path"] = c.city_pool_path ? Json(c.city_pool_path->string()) : Json(nullptr);
  return j.dump(2) + '\n';
}

SynthConfig synth_config_from_json(std::string_view json) {
  const Json root = parse_json(json);
  const Json& j = root.contains("config") ? root["config"] : root;
  SynthConfig c;
  try {
    c.seed = j.value("seed", c.seed);
    c.n_entities = j.value("n_entities", c.n_entities);
    if (j.contains("variation_weights")) c.variation_weights = j["variation_weights"].get<std::array<double, 6>>();
    c.typo_rate = j.value("typo_rate", c.typo_rate);
    if (j.contains("operators")) {
      c.operators.clear();
      for (const auto& op : j["operators"]) c.operators.insert(parse_operator(op.get<std::string>()));
    }
    c.company_fraction = j.value("company_fraction", c.company_fraction);
    c.salutation_rate = j.value("salutation_rate", c.salutation_rate);
    c.middle_name_rate = j.value("middle_name_rate", c.middle_name_rate);
    c.suffix_abbrev_rate = j.value("suffix_abbrev_rate", c.suffix_abbrev_rate);
    c.address_drop_rate = j.value("address_drop_rate", c.address_drop_rate);
    c.account_prefix_rate = j.value("account_prefix_rate", c.account_prefix_rate);
    c.token_shuffle_rate = j.value("token_shuffle_rate", c.token_shuffle_rate);
    c.shared_name_rate = j.value("shared_name_rate", c.shared_name_rate);
    c.name_pool_size = j.value("name_pool_size", c.name_pool_size);
    c.address_pool_size = j.value("address_pool_size", c.address_pool_size);
    if (j.contains("street_pool_path") && !j["street_pool_path"].is_null()) c.street_pool_path = j["street_pool_path"].get<std::string>();
    if (j.contains("city_pool_path") && !j["city_pool_path"].is_null()) c.city_pool_path = j["city_pool_path"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("invalid synth configuration: ") + e.what());
  }
  return c;
}

std::string synth_manifest_json(const SynthConfig& config, const SynthCorpus& corpus) {
  Json j;
  j["tool"] = "swiftnorm";
  j["version"] = "0.1.0";
  j["command"] = "synth";
  j["seed"] = config.seed;
  j["config"] = Json::parse(synth_config_json(config));
  j["raw_values"] = corpus.values.size();
  j["unique_lines"] = corpus.gold.size();
  j["gold_clusters"] = corpus.n_gold_clusters;
  return j.dump(2) + '\n';
}

}  // namespace swiftnorm
