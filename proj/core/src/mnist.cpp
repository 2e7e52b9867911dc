#include "sntg/mnist.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace sntg {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw MnistError(MnistError::Kind::Io, "mnist: cannot open " + path);
  f.seekg(0, std::ios::end);
  const auto len = f.tellg();
  f.seekg(0, std::ios::beg);
  std::vector<unsigned char> buf(static_cast<std::size_t>(len));
  f.read(reinterpret_cast<char*>(buf.data()), len);
  if (!f) throw MnistError(MnistError::Kind::Io, "mnist: read failed for " + path);
  return buf;
}

std::uint32_t read_be32(const std::vector<unsigned char>& buf, std::size_t off) {
  return (static_cast<std::uint32_t>(buf[off]) << 24) |
         (static_cast<std::uint32_t>(buf[off + 1]) << 16) |
         (static_cast<std::uint32_t>(buf[off + 2]) << 8) |
         static_cast<std::uint32_t>(buf[off + 3]);
}

}  // namespace

Standardizer fit_standardizer(const Matrix& features) {
  const std::size_t n = features.size();
  if (n == 0) throw DataError("fit_standardizer: empty features");
  double sum = 0.0;
  for (double v : features.data()) sum += v;
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double v : features.data()) sq += (v - mean) * (v - mean);
  const double var = sq / static_cast<double>(n);
  Standardizer s;
  s.mean = mean;
  s.stddev = var > 0.0 ? std::sqrt(var) : 1.0;
  return s;
}

void apply_standardizer(Matrix& features, const Standardizer& s) {
  for (double& v : features.data()) v = (v - s.mean) / s.stddev;
}

Dataset load_mnist_raw(const std::string& images_path, const std::string& labels_path) {
  const auto img = read_file(images_path);
  const auto lab = read_file(labels_path);

  if (img.size() < 16) throw MnistError(MnistError::Kind::Truncated, "mnist: image header truncated");
  if (lab.size() < 8) throw MnistError(MnistError::Kind::Truncated, "mnist: label header truncated");

  if (read_be32(img, 0) != kImageMagic)
    throw MnistError(MnistError::Kind::BadMagic, "mnist: bad image magic in " + images_path);
  if (read_be32(lab, 0) != kLabelMagic)
    throw MnistError(MnistError::Kind::BadMagic, "mnist: bad label magic in " + labels_path);

  const std::size_t n_img = read_be32(img, 4);
  const std::size_t rows = read_be32(img, 8);
  const std::size_t cols = read_be32(img, 12);
  const std::size_t n_lab = read_be32(lab, 4);

  if (n_img != n_lab)
    throw MnistError(MnistError::Kind::CountMismatch, "mnist: image/label count mismatch");
  if (img.size() != 16 + n_img * rows * cols)
    throw MnistError(MnistError::Kind::Truncated, "mnist: image payload truncated");
  if (lab.size() != 8 + n_lab)
    throw MnistError(MnistError::Kind::Truncated, "mnist: label payload truncated");

  const std::size_t d = rows * cols;
  Dataset ds;
  ds.features = Matrix(n_img, d);
  ds.labels.resize(n_img);
  ds.labeled_mask.assign(n_img, 1);
  ds.num_classes = 10;
  for (std::size_t i = 0; i < n_img; ++i) {
    const unsigned char* px = img.data() + 16 + i * d;
    for (std::size_t j = 0; j < d; ++j) ds.features(i, j) = static_cast<double>(px[j]);
    const unsigned char y = lab[8 + i];
    if (y > 9) throw MnistError(MnistError::Kind::Io, "mnist: label byte out of range");
    ds.labels[i] = static_cast<int>(y);
  }
  return ds;
}

Dataset load_mnist(const std::string& images_path, const std::string& labels_path) {
  Dataset ds = load_mnist_raw(images_path, labels_path);
  apply_standardizer(ds.features, fit_standardizer(ds.features));
  return ds;
}

}  // namespace sntg
