#include "swiftnorm/lsa.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <limits>

#include "swiftnorm/error.hpp"

namespace swiftnorm {

namespace {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Index of the first entry with the largest magnitude.
Eigen::Index argmax_abs(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return best;
}

}  // namespace

std::vector<double> LsaDecomposition::cumulative_explained_variance() const {
  std::vector<double> out(energy.size(), 1.0);
  if (total_energy <= 0.0) return out;
  double running = 0.0;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    running += energy[i];
    out[i] = running / total_energy;
  }
  return out;
}

// The spectrum comes from the eigendecomposition of the smaller Gram matrix.
// Bag-of-words inputs are very sparse, so the Gram product is formed sparsely.
LsaDecomposition decompose(const Matrix& input) {
  const Eigen::Index m = input.rows();
  const Eigen::Index d = input.cols();
  LsaDecomposition out;
  const Eigen::Index r = std::min(m, d);
  out.projections = Matrix::Zero(m, r);
  out.energy.assign(static_cast<std::size_t>(r), 0.0);
  out.total_energy = input.squaredNorm();
  if (r == 0 || out.total_energy == 0.0) return out;

  const SparseRows a = input.sparseView();
  const bool rows_side = m <= d;
  Eigen::MatrixXd gram;
  if (rows_side) {
    gram = Eigen::MatrixXd(a * SparseRows(a.transpose()));
  } else {
    gram = Eigen::MatrixXd(SparseRows(a.transpose()) * a);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition did not converge");
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const Eigen::MatrixXd& vecs = eig.eigenvectors();

  const double lambda_max = std::max(lambda[r - 1], 0.0);
  const double tol = lambda_max * static_cast<double>(std::max(m, d)) *
                     std::numeric_limits<double>::epsilon() * 4.0;

  for (Eigen::Index c = 0; c < r; ++c) {
    const Eigen::Index src = r - 1 - c;
    const double l = lambda[src];
    if (!(l > tol)) break;  // remaining components are numerically zero
    out.energy[static_cast<std::size_t>(c)] = l;
    ++out.rank;

    Eigen::VectorXd proj;
    Eigen::VectorXd right;
    if (rows_side) {
      const Eigen::VectorXd u = vecs.col(src);
      proj = u * std::sqrt(l);
      right = a.transpose() * u;
    } else {
      right = vecs.col(src);
      proj = a * right;
    }
    if (right[argmax_abs(right)] < 0.0) proj = -proj;
    out.projections.col(c) = proj;
  }
  return out;
}

std::size_t select_component_count(const std::vector<double>& cumulative, double ratio) {
  for (std::size_t j = 0; j < cumulative.size(); ++j) {
    if (cumulative[j] >= ratio - 1e-12) return j + 1;
  }
  return cumulative.size();
}

std::size_t resolve_selector(const LsaDecomposition& lsa, const LsaSelector& selector) {
  if (const auto* count = std::get_if<ComponentCount>(&selector)) {
    if (count->k <= 0 || static_cast<std::size_t>(count->k) > lsa.components()) {
      throw InvalidSelector("LSA component count " + std::to_string(count->k) +
                            " outside [1, " + std::to_string(lsa.components()) + "]");
    }
    return static_cast<std::size_t>(count->k);
  }
  const double ratio = std::get<VarianceTarget>(selector).ratio;
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw InvalidSelector("LSA variance target must lie in (0, 1], got " + std::to_string(ratio));
  }
  if (lsa.components() == 0) throw InvalidSelector("cannot select components of an empty matrix");
  const auto cumulative = lsa.cumulative_explained_variance();
  return std::max<std::size_t>(1, select_component_count(cumulative, ratio));
}

FeatureMatrix lsa_project(const LsaDecomposition& lsa, const LsaSelector& selector,
                          std::string family) {
  const std::size_t k = resolve_selector(lsa, selector);
  FeatureMatrix out = make_family(std::move(family), lsa.projections.leftCols(static_cast<Eigen::Index>(k)));
  auto cumulative = lsa.cumulative_explained_variance();
  cumulative.resize(k);
  out.explained_variance = std::move(cumulative);
  return out;
}

FeatureMatrix lsa_project(const FeatureMatrix& input, const LsaSelector& selector,
                          std::string family) {
  if (input.values.size() == 0) throw InvalidSelector("LSA input matrix is empty");
  // Validate cheap selector errors before paying for the decomposition.
  if (const auto* count = std::get_if<ComponentCount>(&selector)) {
    const auto limit = std::min(input.values.rows(), input.values.cols());
    if (count->k <= 0 || count->k > limit) {
      throw InvalidSelector("LSA component count " + std::to_string(count->k) +
                            " outside [1, " + std::to_string(limit) + "]");
    }
  } else {
    const double ratio = std::get<VarianceTarget>(selector).ratio;
    if (!(ratio > 0.0 && ratio <= 1.0)) {
      throw InvalidSelector("LSA variance target must lie in (0, 1], got " + std::to_string(ratio));
    }
  }
  return lsa_project(decompose(input.values), selector, std::move(family));
}

}  // namespace swiftnorm
