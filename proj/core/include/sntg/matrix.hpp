#ifndef SNTG_MATRIX_HPP
#define SNTG_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sntg {

// Dense row-major matrix of doubles. The single numeric carrier used for
// inputs, activations, probabilities and parameters.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T * B without forming the transpose
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// C = A * B^T without forming the transpose
Matrix matmul_nt(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// Sum of each column, as a length-cols vector.
std::vector<double> column_sums(const Matrix& a);

bool all_finite(const Matrix& a);
// Throws NumericError naming `context` if any entry is NaN or infinite.
void require_finite(const Matrix& a, const char* context);

}  // namespace sntg

#endif
