#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "swiftnorm/matrix.hpp"
#include "swiftnorm/preprocess.hpp"

namespace swiftnorm {

/// Column range [begin, end) of a feature matrix owned by one family.
struct FamilySpan {
  std::string family;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const FamilySpan&) const = default;
};

struct FeatureMatrix {
  Matrix values;
  std::vector<FamilySpan> family_spans;
  /// Cumulative explained-variance ratios, one per retained LSA component.
  std::optional<std::vector<double>> explained_variance;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
};

/// Wraps a matrix as a single-family feature matrix.
FeatureMatrix make_family(std::string family, Matrix values);

class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> df, int ngram_max);

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  int ngram_max() const noexcept { return ngram_max_; }
  std::size_t df(std::size_t term) const { return df_.at(term); }
  std::optional<std::size_t> index_of(const std::string& term) const;

 private:
  std::vector<std::string> terms_;  // ascending
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::size_t> index_;
  int ngram_max_ = 1;
};

/// Distinct terms of one canonical form: unigrams of sorted_text and, for
/// ngram_max == 2, adjacent pairs of ordered_tokens joined by a space.
std::vector<std::string> form_terms(const CanonicalForm& form, int ngram_max);

/// Throws ConfigInvalid unless ngram_max is 1 or 2.
Vocabulary build_vocabulary(const Corpus& corpus, int ngram_max);

/// Binary term presence.
FeatureMatrix one_hot_matrix(const Corpus& corpus, const Vocabulary& vocab);

/// Binary TF times smoothed IDF: ln((1 + N) / (1 + df)) + 1. Rows are not
/// normalized.
FeatureMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocab);

/// Scales every nonzero row to unit Euclidean length.
void l2_normalize_rows(FeatureMatrix& matrix);

/// Column-wise concatenation with optional per-family scalar weights
/// (default 1). Throws RowMismatch when row counts differ.
FeatureMatrix assemble(const std::vector<const FeatureMatrix*>& families,
                       const std::vector<double>& weights = {});

}  // namespace swiftnorm
