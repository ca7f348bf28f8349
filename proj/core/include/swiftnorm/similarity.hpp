#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "swiftnorm/matrix.hpp"
#include "swiftnorm/preprocess.hpp"

namespace swiftnorm {

/// Number of characters covered by the Ratcliff/Obershelp matching blocks:
/// take the longest common substring (earliest in `a`, then earliest in `b`
/// among equal lengths), then recurse on the pieces to its left and right.
std::size_t matching_characters(std::string_view a, std::string_view b);

/// 2K / (|a| + |b|); two empty strings score 1.
double ratcliff_obershelp(std::string_view a, std::string_view b);

/// Symmetric m x m matrix of ratcliff_obershelp over the forms' sorted_text.
/// Each unordered pair is computed once and mirrored; the diagonal is 1.
/// Output does not depend on `threads`.
Matrix similarity_matrix(const Corpus& corpus, std::size_t threads);

/// FNV-1a 64 hash of the sorted_text list, as 16 hex digits.
std::string corpus_fingerprint(const Corpus& corpus);

/// On-disk layout: 8-byte magic "SWNSIM01", m as little-endian u64, then
/// m*m little-endian f64 values in row-major order.
inline constexpr std::string_view kSimilarityCacheMagic = "SWNSIM01";

void write_similarity_cache(const std::filesystem::path& path, const Matrix& matrix);

/// Returns nullopt when the file is missing; throws Error when it exists but
/// is not a valid cache file.
std::optional<Matrix> read_similarity_cache(const std::filesystem::path& path);

/// Cache file for a corpus inside `cache_dir`.
std::filesystem::path similarity_cache_path(const std::filesystem::path& cache_dir,
                                            const Corpus& corpus);

}  // namespace swiftnorm
