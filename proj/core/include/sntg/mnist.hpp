#ifndef SNTG_MNIST_HPP
#define SNTG_MNIST_HPP

#include <string>

#include "sntg/dataset.hpp"
#include "sntg/errors.hpp"
#include "sntg/matrix.hpp"

namespace sntg {

class MnistError : public DataError {
 public:
  enum class Kind { Io, BadMagic, Truncated, CountMismatch };

  MnistError(Kind kind, const std::string& what) : DataError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Global scalar standardization: one mean and one stddev over every entry.
struct Standardizer {
  double mean = 0.0;
  double stddev = 1.0;
};

Standardizer fit_standardizer(const Matrix& features);
void apply_standardizer(Matrix& features, const Standardizer& s);

// Raw IDX ingestion; pixels kept as 0..255 doubles, every row labeled, K=10.
Dataset load_mnist_raw(const std::string& images_path, const std::string& labels_path);

// load_mnist_raw followed by standardization over the loaded set itself.
Dataset load_mnist(const std::string& images_path, const std::string& labels_path);

}  // namespace sntg

#endif
