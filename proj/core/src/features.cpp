#include "swiftnorm/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "swiftnorm/error.hpp"

namespace swiftnorm {

FeatureMatrix make_family(std::string family, Matrix values) {
  FeatureMatrix out;
  const auto cols = static_cast<std::size_t>(values.cols());
  out.values = std::move(values);
  out.family_spans.push_back(FamilySpan{std::move(family), 0, cols});
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> df, int ngram_max)
    : terms_(std::move(terms)), df_(std::move(df)), ngram_max_(ngram_max) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> form_terms(const CanonicalForm& form, int ngram_max) {
  std::vector<std::string> terms = tokenize(form.sorted_text);
  if (ngram_max >= 2) {
    const auto& toks = form.ordered_tokens;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) terms.push_back(toks[i] + ' ' + toks[i + 1]);
  }
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

Vocabulary build_vocabulary(const Corpus& corpus, int ngram_max) {
  if (ngram_max != 1 && ngram_max != 2) {
    throw ConfigInvalid("ngram_max must be 1 or 2, got " + std::to_string(ngram_max));
  }
  std::map<std::string, std::size_t> df;
  for (const auto& form : corpus.forms) {
    for (auto& term : form_terms(form, ngram_max)) ++df[std::move(term)];
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  terms.reserve(df.size());
  counts.reserve(df.size());
  for (auto& [term, count] : df) {
    terms.push_back(term);
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts), ngram_max);
}

namespace {

template <typename Weight>
FeatureMatrix bag_of_words(const Corpus& corpus, const Vocabulary& vocab, std::string family,
                           Weight weight) {
  Matrix values = Matrix::Zero(static_cast<Eigen::Index>(corpus.size()),
                               static_cast<Eigen::Index>(vocab.size()));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& term : form_terms(corpus.forms[i], vocab.ngram_max())) {
      if (const auto t = vocab.index_of(term)) {
        values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(*t)) = weight(*t);
      }
    }
  }
  return make_family(std::move(family), std::move(values));
}

}  // namespace

FeatureMatrix one_hot_matrix(const Corpus& corpus, const Vocabulary& vocab) {
  return bag_of_words(corpus, vocab, "onehot", [](std::size_t) { return 1.0; });
}

FeatureMatrix tfidf_matrix(const Corpus& corpus, const Vocabulary& vocab) {
  const double n = static_cast<double>(corpus.size());
  std::vector<double> idf(vocab.size());
  for (std::size_t t = 0; t < vocab.size(); ++t) {
    idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(vocab.df(t)))) + 1.0;
  }
  return bag_of_words(corpus, vocab, "tfidf", [&](std::size_t t) { return idf[t]; });
}

void l2_normalize_rows(FeatureMatrix& matrix) {
  for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
    const double norm = matrix.values.row(i).norm();
    if (norm > 0.0) matrix.values.row(i) /= norm;
  }
}

FeatureMatrix assemble(const std::vector<const FeatureMatrix*>& families,
                       const std::vector<double>& weights) {
  if (families.empty()) throw ConfigInvalid("assemble needs at least one feature family");
  if (!weights.empty() && weights.size() != families.size()) {
    throw ConfigInvalid("expected one weight per feature family");
  }
  const Eigen::Index rows = families.front()->values.rows();
  Eigen::Index cols = 0;
  for (const auto* f : families) {
    if (f->values.rows() != rows) {
      throw RowMismatch("feature family has " + std::to_string(f->values.rows()) +
                        " rows, expected " + std::to_string(rows));
    }
    cols += f->values.cols();
  }

  FeatureMatrix out;
  out.values.resize(rows, cols);
  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < families.size(); ++k) {
    const auto& f = *families[k];
    const double w = weights.empty() ? 1.0 : weights[k];
    if (w == 1.0) out.values.middleCols(offset, f.values.cols()) = f.values;
    else out.values.middleCols(offset, f.values.cols()) = w * f.values;
    for (const auto& span : f.family_spans) {
      out.family_spans.push_back(FamilySpan{span.family, span.begin + static_cast<std::size_t>(offset),
                                            span.end + static_cast<std::size_t>(offset)});
    }
    if (f.explained_variance && !out.explained_variance) out.explained_variance = f.explained_variance;
    offset += f.values.cols();
  }
  return out;
}

}  // namespace swiftnorm
