#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "swiftnorm/ingest.hpp"

namespace swiftnorm {

/// Uppercases, drops digits, maps every other non-letter to a space and
/// collapses whitespace. Non-ASCII bytes count as special characters.
std::string clean(std::string_view raw);

std::vector<std::string> tokenize(std::string_view cleaned);

/// Deduplicated, sorted tokens joined by single spaces.
/// Throws EmptyEntity for an empty token sequence.
std::string canonicalize(std::vector<std::string> tokens);

struct UniqueLine {
  std::string text;
  std::vector<std::size_t> member_record_ids;  // ascending
  std::size_t canonical_index = 0;
};

struct CanonicalForm {
  std::string sorted_text;
  /// Original-order tokens of the lexicographically smallest member line.
  std::vector<std::string> ordered_tokens;
  std::vector<std::size_t> member_line_indices;  // ascending
};

/// Two-level dedup of records: cleaned text -> unique line -> canonical form.
/// Unique lines keep first-appearance order; canonical forms are ordered by
/// sorted_text, so index order equals lexicographic order.
struct Corpus {
  std::vector<UniqueLine> lines;
  std::vector<CanonicalForm> forms;
  /// Indices of records that cleaned to nothing.
  std::vector<std::size_t> dropped_records;

  std::size_t size() const noexcept { return forms.size(); }
};

/// Throws EmptyCorpus when no record survives cleaning.
Corpus build_corpus(const std::vector<EntityRecord>& records);

/// Builds a corpus directly from already-cleaned unique lines.
Corpus build_corpus_from_lines(const std::vector<std::string>& cleaned_lines);

/// Restricts a corpus to a subset of canonical forms (ascending indices).
/// Member lines are carried over and renumbered.
Corpus subset_corpus(const Corpus& corpus, const std::vector<std::size_t>& form_indices);

/// record_id, unique_line_id, canonical_id
void write_provenance_csv(const Corpus& corpus, std::size_t n_records,
                          const std::filesystem::path& path);

}  // namespace swiftnorm
