#include "sntg/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sntg {

SymmetricEigen symmetric_eigen(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen: matrix not square");
  const std::size_t n = a.rows();
  Matrix d = a;
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(d(i, j)));
  const double tol = scale > 0.0 ? scale * 1e-15 : 0.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(d(p, q)));
    if (off <= tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = d(p, q);
        if (std::abs(apq) <= tol) continue;
        const double theta = (d(q, q) - d(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double dkp = d(k, p);
          const double dkq = d(k, q);
          d(k, p) = c * dkp - s * dkq;
          d(k, q) = s * dkp + c * dkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double dpk = d(p, k);
          const double dqk = d(q, k);
          d(p, k) = c * dpk - s * dqk;
          d(q, k) = s * dpk + c * dqk;
          const double vpk = v(p, k);
          const double vqk = v(q, k);
          v(p, k) = c * vpk - s * vqk;
          v(q, k) = s * vpk + c * vqk;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d(i, i) > d(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.values[r] = d(order[r], order[r]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = v(order[r], k);
  }
  return out;
}

Pca pca_fit(const Matrix& points, std::size_t dims) {
  const std::size_t n = points.rows();
  const std::size_t p = points.cols();
  if (n < 2) throw std::invalid_argument("pca_fit: need at least 2 points");
  if (dims > p) throw std::invalid_argument("pca_fit: dims exceeds feature count");

  Pca out;
  out.mean.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) out.mean[j] += points(i, j);
  for (double& m : out.mean) m /= static_cast<double>(n);

  Matrix centered = points;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) centered(i, j) -= out.mean[j];

  Matrix cov = matmul_tn(centered, centered);
  for (double& v : cov.data()) v /= static_cast<double>(n - 1);

  SymmetricEigen eig = symmetric_eigen(cov);

  out.components = Matrix(dims, p);
  out.explained_variance.resize(dims);
  for (std::size_t r = 0; r < dims; ++r) {
    out.explained_variance[r] = std::max(eig.values[r], 0.0);
    double flip = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double load = eig.vectors(r, j);
      if (std::abs(load) > 1e-12) {
        flip = load > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (std::size_t j = 0; j < p; ++j) out.components(r, j) = flip * eig.vectors(r, j);
  }
  return out;
}

Matrix pca_transform(const Pca& pca, const Matrix& points) {
  if (points.cols() != pca.components.cols())
    throw std::invalid_argument("pca_transform: feature count mismatch");
  Matrix centered = points;
  for (std::size_t i = 0; i < centered.rows(); ++i)
    for (std::size_t j = 0; j < centered.cols(); ++j) centered(i, j) -= pca.mean[j];
  return matmul_nt(centered, pca.components);
}

Matrix pca_inverse_transform(const Pca& pca, const Matrix& coords) {
  if (coords.cols() != pca.components.rows())
    throw std::invalid_argument("pca_inverse_transform: component count mismatch");
  Matrix out = matmul(coords, pca.components);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += pca.mean[j];
  return out;
}

Matrix pca_project(const Matrix& points, std::size_t dims) {
  return pca_transform(pca_fit(points, dims), points);
}

}  // namespace sntg
