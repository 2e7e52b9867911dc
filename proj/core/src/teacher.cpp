#include "sntg/teacher.hpp"

#include <cmath>
#include <stdexcept>

namespace sntg {

Teacher make_teacher(TeacherVariant variant, const MlpModel& student, std::size_t dataset_size,
                     double tempens_alpha) {
  Teacher t;
  t.variant = variant;
  if (variant == TeacherVariant::TemporalEnsemble) {
    if (tempens_alpha < 0.0 || tempens_alpha >= 1.0)
      throw std::invalid_argument("make_teacher: tempens_alpha outside [0, 1)");
    t.accumulator = Matrix(dataset_size, student.num_classes());
    t.tempens_alpha = tempens_alpha;
  } else if (variant == TeacherVariant::MeanTeacher) {
    t.ema_model = student;
  }
  return t;
}

TeacherTargets teacher_targets(const Teacher& teacher, const MlpModel& student,
                               const Matrix& x_batch, const std::vector<std::size_t>& indices,
                               const Perturbation& pert, Rng& rng) {
  TeacherTargets out;
  switch (teacher.variant) {
    case TeacherVariant::SharedNoisy:
      out.targets = forward(student, x_batch, pert, rng).probs;
      break;
    case TeacherVariant::MeanTeacher:
      out.targets = forward(teacher.ema_model, x_batch, pert, rng).probs;
      break;
    case TeacherVariant::TemporalEnsemble: {
      if (indices.size() != x_batch.rows())
        throw std::invalid_argument("teacher_targets: index count does not match batch");
      const std::size_t k = teacher.accumulator.cols();
      out.targets = Matrix(x_batch.rows(), k);
      if (teacher.epochs_accumulated == 0) {
        out.warmup = true;
        const double u = 1.0 / static_cast<double>(k);
        for (double& v : out.targets.data()) v = u;
        break;
      }
      const double debias =
          1.0 - std::pow(teacher.tempens_alpha, static_cast<double>(teacher.epochs_accumulated));
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= teacher.accumulator.rows())
          throw std::invalid_argument("teacher_targets: dataset index out of range");
        for (std::size_t c = 0; c < k; ++c)
          out.targets(i, c) = teacher.accumulator(indices[i], c) / debias;
      }
      break;
    }
  }
  return out;
}

void tempens_epoch_update(Teacher& teacher, const Matrix& epoch_predictions) {
  if (teacher.variant != TeacherVariant::TemporalEnsemble)
    throw std::invalid_argument("tempens_epoch_update: wrong teacher variant");
  if (!epoch_predictions.same_shape(teacher.accumulator))
    throw std::invalid_argument("tempens_epoch_update: prediction shape mismatch");
  const double a = teacher.tempens_alpha;
  for (std::size_t i = 0; i < teacher.accumulator.size(); ++i)
    teacher.accumulator.data()[i] =
        a * teacher.accumulator.data()[i] + (1.0 - a) * epoch_predictions.data()[i];
  ++teacher.epochs_accumulated;
}

void mean_teacher_update(Teacher& teacher, const MlpModel& student, double alpha) {
  if (teacher.variant != TeacherVariant::MeanTeacher)
    throw std::invalid_argument("mean_teacher_update: wrong teacher variant");
  if (alpha < 0.0 || alpha > 1.0) throw std::invalid_argument("mean_teacher_update: alpha outside [0, 1]");
  if (teacher.ema_model.num_layers() != student.num_layers())
    throw std::invalid_argument("mean_teacher_update: layer count mismatch");
  for (std::size_t l = 0; l < student.num_layers(); ++l) {
    if (!teacher.ema_model.weights[l].same_shape(student.weights[l]))
      throw std::invalid_argument("mean_teacher_update: weight shape mismatch");
    auto& ew = teacher.ema_model.weights[l].data();
    const auto& sw = student.weights[l].data();
    for (std::size_t i = 0; i < ew.size(); ++i) ew[i] = alpha * ew[i] + (1.0 - alpha) * sw[i];
    auto& eb = teacher.ema_model.biases[l];
    const auto& sb = student.biases[l];
    for (std::size_t i = 0; i < eb.size(); ++i) eb[i] = alpha * eb[i] + (1.0 - alpha) * sb[i];
  }
}

double consistency_loss(const Matrix& teacher_probs, const Matrix& student_probs,
                        bool divide_by_k) {
  if (!teacher_probs.same_shape(student_probs))
    throw std::invalid_argument("consistency_loss: shape mismatch");
  if (student_probs.rows() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < student_probs.size(); ++i) {
    const double d = teacher_probs.data()[i] - student_probs.data()[i];
    sum += d * d;
  }
  sum /= static_cast<double>(student_probs.rows());
  if (divide_by_k) sum /= static_cast<double>(student_probs.cols());
  return sum;
}

Matrix consistency_loss_grad(const Matrix& teacher_probs, const Matrix& student_probs,
                             bool divide_by_k) {
  if (!teacher_probs.same_shape(student_probs))
    throw std::invalid_argument("consistency_loss_grad: shape mismatch");
  Matrix g(student_probs.rows(), student_probs.cols());
  double scale = 2.0 / static_cast<double>(student_probs.rows());
  if (divide_by_k) scale /= static_cast<double>(student_probs.cols());
  for (std::size_t i = 0; i < g.size(); ++i)
    g.data()[i] = scale * (student_probs.data()[i] - teacher_probs.data()[i]);
  return g;
}

}  // namespace sntg
