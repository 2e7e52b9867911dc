#include "sntg/checkpoint.hpp"

#include <cstdint>
#include <fstream>

#include "sntg/errors.hpp"

namespace sntg {

namespace {

constexpr std::uint64_t kMagic = 0x53'4e'54'47'43'4b'50'54ull;  // "SNTGCKPT"
constexpr std::uint64_t kVersion = 1;

void put_u64(std::ostream& f, std::uint64_t v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::ostream& f, double v) { f.write(reinterpret_cast<const char*>(&v), sizeof(v)); }

void put_doubles(std::ostream& f, const std::vector<double>& v) {
  put_u64(f, v.size());
  f.write(reinterpret_cast<const char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::uint64_t get_u64(std::istream& f) {
  std::uint64_t v = 0;
  f.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!f) throw DataError("checkpoint: truncated file");
  return v;
}

double get_f64(std::istream& f) {
  double v = 0.0;
  f.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!f) throw DataError("checkpoint: truncated file");
  return v;
}

std::vector<double> get_doubles(std::istream& f) {
  std::vector<double> v(get_u64(f));
  f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!f) throw DataError("checkpoint: truncated file");
  return v;
}

void put_matrix(std::ostream& f, const Matrix& m) {
  put_u64(f, m.rows());
  put_u64(f, m.cols());
  f.write(reinterpret_cast<const char*>(m.data().data()),
          static_cast<std::streamsize>(m.size() * sizeof(double)));
}

Matrix get_matrix(std::istream& f) {
  const std::uint64_t rows = get_u64(f);
  const std::uint64_t cols = get_u64(f);
  Matrix m(rows, cols);
  f.read(reinterpret_cast<char*>(m.data().data()),
         static_cast<std::streamsize>(m.size() * sizeof(double)));
  if (!f) throw DataError("checkpoint: truncated file");
  return m;
}

void put_model(std::ostream& f, const MlpModel& m) {
  put_f64(f, m.leaky_slope);
  put_u64(f, m.num_layers());
  for (std::size_t l = 0; l < m.num_layers(); ++l) {
    put_matrix(f, m.weights[l]);
    put_doubles(f, m.biases[l]);
  }
}

MlpModel get_model(std::istream& f) {
  MlpModel m;
  m.leaky_slope = get_f64(f);
  const std::uint64_t layers = get_u64(f);
  for (std::uint64_t l = 0; l < layers; ++l) {
    m.weights.push_back(get_matrix(f));
    m.biases.push_back(get_doubles(f));
  }
  return m;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("checkpoint: cannot open " + path);
  put_u64(f, kMagic);
  put_u64(f, kVersion);
  put_model(f, ckpt.model);
  put_u64(f, static_cast<std::uint64_t>(ckpt.teacher.variant));
  switch (ckpt.teacher.variant) {
    case TeacherVariant::SharedNoisy:
      break;
    case TeacherVariant::TemporalEnsemble:
      put_f64(f, ckpt.teacher.tempens_alpha);
      put_u64(f, ckpt.teacher.epochs_accumulated);
      put_matrix(f, ckpt.teacher.accumulator);
      break;
    case TeacherVariant::MeanTeacher:
      put_model(f, ckpt.teacher.ema_model);
      break;
  }
  if (!f) throw DataError("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("checkpoint: cannot open " + path);
  if (get_u64(f) != kMagic) throw DataError("checkpoint: bad magic in " + path);
  if (get_u64(f) != kVersion) throw DataError("checkpoint: unsupported version in " + path);
  Checkpoint ckpt;
  ckpt.model = get_model(f);
  const std::uint64_t variant = get_u64(f);
  if (variant > static_cast<std::uint64_t>(TeacherVariant::MeanTeacher))
    throw DataError("checkpoint: unknown teacher variant");
  ckpt.teacher.variant = static_cast<TeacherVariant>(variant);
  switch (ckpt.teacher.variant) {
    case TeacherVariant::SharedNoisy:
      break;
    case TeacherVariant::TemporalEnsemble:
      ckpt.teacher.tempens_alpha = get_f64(f);
      ckpt.teacher.epochs_accumulated = get_u64(f);
      ckpt.teacher.accumulator = get_matrix(f);
      break;
    case TeacherVariant::MeanTeacher:
      ckpt.teacher.ema_model = get_model(f);
      break;
  }
  return ckpt;
}

}  // namespace sntg
