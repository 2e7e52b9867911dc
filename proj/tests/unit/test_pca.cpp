#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sntg/matrix.hpp"
#include "sntg/pca.hpp"
#include "sntg/rng.hpp"

using sntg::Matrix;

TEST_CASE("symmetric_eigen on an analytic 2x2") {
  // [[2,1],[1,2]] has eigenvalues 3 and 1 with axes (1,1)/sqrt2, (1,-1)/sqrt2
  const Matrix a = Matrix::from_rows({{2, 1}, {1, 2}});
  const auto eig = sntg::symmetric_eigen(a);
  CHECK(eig.values[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eig.vectors(0, 0)) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  CHECK(std::abs(eig.vectors(0, 1)) == doctest::Approx(inv_sqrt2).epsilon(1e-10));
  // eigenvector property: A v = lambda v
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t i = 0; i < 2; ++i) {
      const double av = a(i, 0) * eig.vectors(r, 0) + a(i, 1) * eig.vectors(r, 1);
      CHECK(av == doctest::Approx(eig.values[r] * eig.vectors(r, i)).epsilon(1e-10));
    }
}

TEST_CASE("pca recovers known variances along orthogonal directions") {
  // 5 points built as mean + a*u + b*v with orthonormal u, v and
  // uncorrelated coefficients of sample variance 2.5 and 0.025.
  const double u[3] = {1.0, 0.0, 0.0};
  const double v[3] = {0.0, 3.0 / 5.0, 4.0 / 5.0};
  const double a_coef[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  const double b_coef[5] = {0.1, -0.2, 0.0, 0.2, -0.1};
  Matrix pts(5, 3);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 3; ++j) pts(i, j) = 7.0 + a_coef[i] * u[j] + b_coef[i] * v[j];

  const sntg::Pca pca = sntg::pca_fit(pts, 3);
  CHECK(pca.explained_variance[0] == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(pca.explained_variance[1] == doctest::Approx(0.025).epsilon(1e-10));
  CHECK(pca.explained_variance[2] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(pca.explained_variance[0] >= pca.explained_variance[1]);

  // axis 0 is +/-u; the sign convention forces the first loading positive
  CHECK(pca.components(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(pca.components(0, 1)) < 1e-9);

  // projections along the top axis are the a coefficients
  const Matrix proj = sntg::pca_transform(pca, pts);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(proj(i, 0) == doctest::Approx(a_coef[i]).epsilon(1e-10));
}

TEST_CASE("rank-1 line embedded in 3-D has a null second component") {
  Matrix pts(6, 3);
  for (std::size_t i = 0; i < 6; ++i) {
    const double t = static_cast<double>(i) - 2.5;
    pts(i, 0) = 1.0 + 2.0 * t;
    pts(i, 1) = -1.0 + 0.5 * t;
    pts(i, 2) = 3.0 - t;
  }
  const Matrix proj = sntg::pca_project(pts, 2);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(proj(i, 1)) < 1e-9);
}

TEST_CASE("projection then back-projection recovers rank-2 data") {
  sntg::Rng rng(17);
  Matrix coeffs(40, 2);
  for (double& c : coeffs.data()) c = rng.normal();
  Matrix basis = Matrix::from_rows({{1, 0, 2, -1, 0.5}, {0, 1, -1, 0.5, 2}});
  Matrix pts = matmul(coeffs, basis);
  for (std::size_t i = 0; i < pts.rows(); ++i)
    for (std::size_t j = 0; j < pts.cols(); ++j) pts(i, j) += static_cast<double>(j);

  const sntg::Pca pca = sntg::pca_fit(pts, 2);
  const Matrix rec = sntg::pca_inverse_transform(pca, sntg::pca_transform(pca, pts));
  REQUIRE(rec.same_shape(pts));
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK(std::abs(rec.data()[i] - pts.data()[i]) < 1e-8);
}

TEST_CASE("degenerate zero-variance data projects to zero") {
  Matrix pts(4, 3, 2.5);
  const Matrix proj = sntg::pca_project(pts, 2);
  for (double v : proj.data()) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("pca preconditions") {
  Matrix one(1, 3, 0.0);
  CHECK_THROWS_AS(sntg::pca_fit(one, 1), std::invalid_argument);
  Matrix ok(3, 2, 0.0);
  CHECK_THROWS_AS(sntg::pca_fit(ok, 3), std::invalid_argument);
}
