#ifndef SNTG_PCA_HPP
#define SNTG_PCA_HPP

#include <cstddef>
#include <vector>

#include "sntg/matrix.hpp"

namespace sntg {

// Principal axes of a point cloud. `components` holds one axis per row
// (dims x p), ordered by decreasing explained variance. Axes follow the
// sign convention that the first nonzero loading is positive.
struct Pca {
  Matrix components;
  std::vector<double> mean;
  std::vector<double> explained_variance;
};

Pca pca_fit(const Matrix& points, std::size_t dims);

// (points - mean) * components^T
Matrix pca_transform(const Pca& pca, const Matrix& points);

// coords * components + mean
Matrix pca_inverse_transform(const Pca& pca, const Matrix& coords);

Matrix pca_project(const Matrix& points, std::size_t dims);

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Returns pairs sorted by decreasing eigenvalue; eigenvectors are the
// rows of `vectors`.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

}  // namespace sntg

#endif
