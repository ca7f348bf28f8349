#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "swiftnorm/features.hpp"

namespace swiftnorm {

struct ComponentCount {
  long long k = 0;
  bool operator==(const ComponentCount&) const = default;
};
struct VarianceTarget {
  double ratio = 0.0;
  bool operator==(const VarianceTarget&) const = default;
};
using LsaSelector = std::variant<ComponentCount, VarianceTarget>;

/// Full (uncentered) singular spectrum of a feature matrix, kept so that many
/// truncations can be taken from one decomposition.
///
/// Components are sorted by decreasing energy (squared singular value).
/// Components below numerical rank carry zero energy and zero projections.
/// Sign convention: the largest-magnitude entry of each right singular vector
/// is nonnegative.
struct LsaDecomposition {
  Matrix projections;          ///< m x r, left singular vectors times singular values
  std::vector<double> energy;  ///< r squared singular values
  double total_energy = 0.0;   ///< squared Frobenius norm of the input
  std::size_t rank = 0;

  std::size_t components() const noexcept { return energy.size(); }
  /// r(j) = sum_{i<=j} energy_i / total_energy, for j = 1..r.
  std::vector<double> cumulative_explained_variance() const;
};

LsaDecomposition decompose(const Matrix& input);

/// Smallest j with cumulative[j-1] >= ratio (within 1e-12); the full length
/// when the target is never reached.
std::size_t select_component_count(const std::vector<double>& cumulative, double ratio);

/// Resolves a selector against a decomposition; throws InvalidSelector for
/// k <= 0, k > min(m, d) or ratio outside (0, 1].
std::size_t resolve_selector(const LsaDecomposition& lsa, const LsaSelector& selector);

/// Truncated projection with k columns and the first k cumulative ratios.
FeatureMatrix lsa_project(const LsaDecomposition& lsa, const LsaSelector& selector,
                          std::string family = "lsa");

FeatureMatrix lsa_project(const FeatureMatrix& input, const LsaSelector& selector,
                          std::string family = "lsa");

}  // namespace swiftnorm
