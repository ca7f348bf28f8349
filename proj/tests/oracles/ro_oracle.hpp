#pragma once

// Brute-force matching blocks: every (i, j) start is extended as far as it
// goes, the longest wins (earliest i, then earliest j), and the pieces to the
// left and right are handled the same way.

#include <cstddef>
#include <string>

namespace oracle {

inline std::size_t matching_blocks_total(const std::string& a, const std::string& b) {
  std::size_t best_len = 0, best_i = 0, best_j = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      if (k > best_len) {
        best_len = k;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best_len == 0) return 0;
  return best_len + matching_blocks_total(a.substr(0, best_i), b.substr(0, best_j)) +
         matching_blocks_total(a.substr(best_i + best_len), b.substr(best_j + best_len));
}

inline double ratio(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  return 2.0 * static_cast<double>(matching_blocks_total(a, b)) / static_cast<double>(a.size() + b.size());
}

}  // namespace oracle
