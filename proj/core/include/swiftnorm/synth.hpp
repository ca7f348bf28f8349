#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace swiftnorm {

enum class VariationOperator {
  typo,
  salutation,
  middle_name,
  suffix_abbrev,
  address_drop,
  account_prefix,
  token_shuffle,
};

VariationOperator parse_operator(std::string_view name);
std::string_view to_string(VariationOperator op);
std::set<VariationOperator> all_operators();

struct SynthConfig {
  std::uint64_t seed = 42;
  std::size_t n_entities = 1000;
  /// Relative weights for 1..6 variations per gold cluster (mean ~2.6).
  std::array<double, 6> variation_weights{0.30, 0.25, 0.20, 0.12, 0.08, 0.05};
  /// Per-token typo probability; first tokens get half of it.
  double typo_rate = 0.05;
  std::set<VariationOperator> operators = all_operators();

  double company_fraction = 0.4;
  double salutation_rate = 0.15;
  double middle_name_rate = 0.15;
  double suffix_abbrev_rate = 0.5;
  double address_drop_rate = 0.15;
  double account_prefix_rate = 0.6;
  double token_shuffle_rate = 0.08;
  /// Probability that an entity also appears at a second location, which is
  /// a separate gold cluster.
  double shared_name_rate = 0.0;

  /// Distinct generated name tokens; 0 means three per entity.
  std::size_t name_pool_size = 0;
  /// Street names drawn from; 0 uses the whole street list.
  std::size_t address_pool_size = 0;
  std::optional<std::filesystem::path> street_pool_path;
  std::optional<std::filesystem::path> city_pool_path;

  /// Throws ConfigInvalid.
  void validate() const;
  bool enabled(VariationOperator op) const { return operators.contains(op); }
};

/// One emitted raw tag value and its gold cluster.
struct LabeledValue {
  std::string raw_text;
  std::size_t gold_id = 0;
};

struct GoldEntry {
  std::string unique_line_text;
  std::size_t gold_id = 0;
};

struct SynthCorpus {
  std::vector<LabeledValue> values;
  /// Cleaned unique line -> gold id, in first-appearance order.
  std::vector<GoldEntry> gold;
  std::size_t n_gold_clusters = 0;

  std::vector<std::string> raw_lines() const;
};

/// Deterministic for a given config.
SynthCorpus generate(const SynthConfig& config);

/// Built-in word lists, used unless overridden by path.
const std::vector<std::string>& builtin_streets();
const std::vector<std::string>& builtin_cities();

}  // namespace swiftnorm
