#include "swiftnorm/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "swiftnorm/error.hpp"
#include "swiftnorm/preprocess.hpp"
#include "swiftnorm/similarity.hpp"

namespace swiftnorm {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(seed);
  for (const auto p : parts) h = mix64(h ^ p);
  return h;
}

// mt19937_64 output is fixed by the standard; the distributions below are
// written out so the stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }
  bool chance(double p) { return uniform() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 engine_;
};

enum Stream : std::uint64_t { kNames = 1, kEntities = 2, kVariation = 3, kTypo = 4 };

const std::vector<std::string> kSalutations{"MR", "MRS", "MS", "DR"};
const std::vector<std::string> kStreetTypes{"ROAD", "LANE", "AVENUE", "CLOSE", "SQUARE", "WAY", "PLACE", "TERRACE"};
const std::vector<std::pair<std::string, std::string>> kSuffixes{
    {"LIMITED", "LTD"}, {"CORPORATION", "CORP"}, {"INCORPORATED", "INC"}, {"COMPANY", "CO"}};

const std::vector<std::string> kOnsets{"B", "C", "D", "F", "G", "H", "J", "K", "L", "M", "N", "P", "R", "S",
                                       "T", "V", "W", "Z", "BR", "CH", "DR", "GR", "KR", "PR", "SH", "ST",
                                       "TR", "VL", "ZH", "FL"};
const std::vector<std::string> kVowels{"A", "E", "I", "O", "U", "AU", "EI", "IA"};
const std::vector<std::string> kCodas{"", "", "", "N", "R", "L", "S", "K", "M", "X"};

// Name tokens of different entities stay below this similarity, leaving room
// for a typo before the 0.75 merge gate can link them.
constexpr double kNameSeparation = 0.65;

std::vector<std::string> read_pool(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot read word pool: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    std::string w = clean(line);
    if (!w.empty()) words.push_back(std::move(w));
  }
  if (words.empty()) throw ConfigInvalid("word pool is empty: " + path.string());
  return words;
}

std::vector<std::string> generate_name_pool(std::size_t count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, {kNames}));
  std::vector<std::string> reserved{kSalutations};
  for (const auto& [full, abbr] : kSuffixes) {
    reserved.push_back(full);
    reserved.push_back(abbr);
  }

  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  const std::size_t max_attempts = 400 * count + 1000;
  for (std::size_t attempt = 0; attempt < max_attempts && pool.size() < count; ++attempt) {
    std::string word;
    const std::size_t syllables = 2 + rng.below(2);
    for (std::size_t s = 0; s < syllables; ++s) {
      word += rng.pick(kOnsets);
      word += rng.pick(kVowels);
      word += rng.pick(kCodas);
    }
    if (word.size() < 5 || word.size() > 10 || seen.contains(word)) continue;
    seen.insert(word);
    const auto too_close = [&](const std::string& other) {
      return ratcliff_obershelp(word, other) >= kNameSeparation;
    };
    if (std::any_of(pool.begin(), pool.end(), too_close)) continue;
    if (std::any_of(reserved.begin(), reserved.end(), too_close)) continue;
    pool.push_back(std::move(word));
  }
  if (pool.empty()) throw ConfigInvalid("could not generate any name tokens");
  return pool;
}

struct Entity {
  bool company = false;
  std::string first;
  std::string second;
  std::string middle;       // persons only
  std::size_t suffix = 0;   // companies only
  std::string street;
  std::string street_type;
  unsigned number = 1;
  std::string city;
  std::size_t gold_id = 0;
};

void apply_typo(std::string& token, Rng& rng, bool fire) {
  // Draws are made whether or not the typo fires so the stream is shared
  // across typo rates.
  const std::size_t kind = rng.below(4);
  const std::size_t pos = rng.below(std::max<std::size_t>(token.size(), 1));
  const char letter = static_cast<char>('A' + rng.below(26));
  if (!fire || token.size() < 3) return;
  switch (kind) {
    case 0:
      token[pos] = (token[pos] == letter) ? static_cast<char>('A' + (letter - 'A' + 1) % 26) : letter;
      break;
    case 1:
      token.erase(pos, 1);
      break;
    case 2: {
      const std::size_t p = std::min(pos, token.size() - 2);
      if (token[p] != token[p + 1]) std::swap(token[p], token[p + 1]);
      else token[p] = (token[p] == letter) ? static_cast<char>('A' + (letter - 'A' + 1) % 26) : letter;
      break;
    }
    default:
      token.insert(pos, 1, letter);
      break;
  }
}

std::string render_variation(const Entity& e, const SynthConfig& cfg, Rng& rng, Rng& typo_rng) {
  // Structural draws always happen; enabled operators decide whether they apply.
  const bool salutation = rng.chance(cfg.salutation_rate) && cfg.enabled(VariationOperator::salutation);
  const std::string& title = rng.pick(kSalutations);
  const bool middle = rng.chance(cfg.middle_name_rate) && cfg.enabled(VariationOperator::middle_name);
  const bool abbreviate = rng.chance(cfg.suffix_abbrev_rate) && cfg.enabled(VariationOperator::suffix_abbrev);
  const bool shuffle = rng.chance(cfg.token_shuffle_rate) && cfg.enabled(VariationOperator::token_shuffle);
  const bool drop = rng.chance(cfg.address_drop_rate) && cfg.enabled(VariationOperator::address_drop);
  const bool drop_all = rng.chance(0.5);
  const bool account = rng.chance(cfg.account_prefix_rate) && cfg.enabled(VariationOperator::account_prefix);
  const std::size_t account_number = 10000000 + rng.below(90000000);

  std::vector<std::string> name{e.first, e.second};
  if (e.company) {
    name.push_back(abbreviate ? kSuffixes[e.suffix].second : kSuffixes[e.suffix].first);
  } else if (middle) {
    name.insert(name.begin() + 1, e.middle);
  }
  if (shuffle) std::swap(name[0], name[name.size() > 2 && !e.company ? 2 : 1]);

  std::vector<std::string> address;
  if (!drop || !drop_all) {
    if (!drop) {
      address.push_back(std::to_string(e.number));
      address.push_back(e.street);
      address.push_back(e.street_type);
    }
    for (auto& t : tokenize(e.city)) address.push_back(std::move(t));
  }

  const double rate = cfg.enabled(VariationOperator::typo) ? cfg.typo_rate : 0.0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const double p = i == 0 ? 0.5 * rate : rate;
    apply_typo(name[i], typo_rng, typo_rng.uniform() < p);
  }
  for (auto& token : address) {
    if (token.front() >= '0' && token.front() <= '9') continue;
    apply_typo(token, typo_rng, typo_rng.uniform() < rate);
  }

  std::string out;
  auto append = [&](const std::string& t) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  };
  if (account) append("/" + std::to_string(account_number));
  if (salutation && !e.company) append(title);
  for (const auto& t : name) append(t);
  for (const auto& t : address) append(t);
  return out;
}

}  // namespace

VariationOperator parse_operator(std::string_view name) {
  for (const auto op : all_operators()) {
    if (to_string(op) == name) return op;
  }
  throw ConfigInvalid("unknown variation operator '" + std::string(name) + "'");
}

std::string_view to_string(VariationOperator op) {
  switch (op) {
    case VariationOperator::typo: return "typo";
    case VariationOperator::salutation: return "salutation";
    case VariationOperator::middle_name: return "middle_name";
    case VariationOperator::suffix_abbrev: return "suffix_abbrev";
    case VariationOperator::address_drop: return "address_drop";
    case VariationOperator::account_prefix: return "account_prefix";
    case VariationOperator::token_shuffle: return "token_shuffle";
  }
  return "typo";
}

std::set<VariationOperator> all_operators() {
  return {VariationOperator::typo,          VariationOperator::salutation,   VariationOperator::middle_name,
          VariationOperator::suffix_abbrev, VariationOperator::address_drop, VariationOperator::account_prefix,
          VariationOperator::token_shuffle};
}

void SynthConfig::validate() const {
  if (n_entities < 1) throw ConfigInvalid("n_entities must be at least 1");
  const double rates[] = {typo_rate,          company_fraction,   salutation_rate,     middle_name_rate,
                          suffix_abbrev_rate, address_drop_rate,  account_prefix_rate, token_shuffle_rate,
                          shared_name_rate};
  for (const double r : rates) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigInvalid("synthetic corpus probabilities must lie in [0, 1]");
  }
  double total = 0.0;
  for (const double w : variation_weights) {
    if (!(w >= 0.0)) throw ConfigInvalid("variation weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigInvalid("variation weights must not all be zero");
}

std::vector<std::string> SynthCorpus::raw_lines() const {
  std::vector<std::string> lines;
  lines.reserve(values.size());
  for (const auto& v : values) lines.push_back(v.raw_text);
  return lines;
}

SynthCorpus generate(const SynthConfig& cfg) {
  cfg.validate();

  std::vector<std::string> streets = cfg.street_pool_path ? read_pool(*cfg.street_pool_path) : builtin_streets();
  const std::vector<std::string> cities = cfg.city_pool_path ? read_pool(*cfg.city_pool_path) : builtin_cities();
  if (cfg.address_pool_size > 0 && cfg.address_pool_size < streets.size()) streets.resize(cfg.address_pool_size);

  // Each entity needs two name tokens plus a middle name for persons.
  const std::size_t pool_size = cfg.name_pool_size > 0 ? cfg.name_pool_size : 3 * cfg.n_entities;
  const std::vector<std::string> names = generate_name_pool(pool_size, cfg.seed);
  std::size_t next_name = 0;
  auto take_name = [&] { return names[next_name++ % names.size()]; };

  Rng rng(derive_seed(cfg.seed, {kEntities}));
  std::vector<Entity> entities;
  entities.reserve(cfg.n_entities);
  for (std::size_t i = 0; i < cfg.n_entities; ++i) {
    Entity e;
    e.company = rng.chance(cfg.company_fraction);
    e.first = take_name();
    e.second = take_name();
    if (e.company) e.suffix = rng.below(kSuffixes.size());
    else e.middle = take_name();
    e.street = rng.pick(streets);
    e.street_type = rng.pick(kStreetTypes);
    e.number = 1 + static_cast<unsigned>(rng.below(200));
    e.city = rng.pick(cities);
    e.gold_id = entities.size();
    const bool twin = rng.chance(cfg.shared_name_rate);
    const std::size_t twin_city = rng.below(cities.size());
    entities.push_back(e);
    if (twin) {
      Entity t = e;
      t.city = cities[twin_city] == e.city ? cities[(twin_city + 1) % cities.size()] : cities[twin_city];
      t.gold_id = entities.size();
      entities.push_back(std::move(t));
    }
  }

  const double weight_total = std::accumulate(cfg.variation_weights.begin(), cfg.variation_weights.end(), 0.0);
  SynthCorpus out;
  std::unordered_map<std::string, std::size_t> gold_of_line;

  for (const auto& e : entities) {
    Rng count_rng(derive_seed(cfg.seed, {kVariation, e.gold_id, ~0ULL}));
    double u = count_rng.uniform() * weight_total;
    std::size_t count = 1;
    for (std::size_t k = 0; k < cfg.variation_weights.size(); ++k) {
      if (u < cfg.variation_weights[k]) {
        count = k + 1;
        break;
      }
      u -= cfg.variation_weights[k];
      count = k + 1;
    }

    for (std::size_t v = 0; v < count; ++v) {
      for (std::uint64_t attempt = 0; attempt < 8; ++attempt) {
        Rng var_rng(derive_seed(cfg.seed, {kVariation, e.gold_id, v, attempt}));
        Rng typo_rng(derive_seed(cfg.seed, {kTypo, e.gold_id, v, attempt}));
        std::string raw = render_variation(e, cfg, var_rng, typo_rng);
        std::string line = clean(raw);
        if (line.empty()) continue;
        const auto [it, inserted] = gold_of_line.try_emplace(line, e.gold_id);
        if (!inserted && it->second != e.gold_id) continue;  // would belong to two gold clusters
        if (inserted) out.gold.push_back(GoldEntry{line, e.gold_id});
        out.values.push_back(LabeledValue{std::move(raw), e.gold_id});
        break;
      }
    }
  }
  std::set<std::size_t> emitted;
  for (const auto& g : out.gold) emitted.insert(g.gold_id);
  out.n_gold_clusters = emitted.size();
  return out;
}

}  // namespace swiftnorm
