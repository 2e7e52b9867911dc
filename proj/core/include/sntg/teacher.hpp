#ifndef SNTG_TEACHER_HPP
#define SNTG_TEACHER_HPP

#include <cstddef>
#include <vector>

#include "sntg/matrix.hpp"
#include "sntg/mlp.hpp"
#include "sntg/rng.hpp"

namespace sntg {

enum class TeacherVariant {
  SharedNoisy,        // same weights as the student, independent noise
  TemporalEnsemble,   // per-epoch EMA of predictions
  MeanTeacher,        // per-step EMA of weights
};

struct Teacher {
  TeacherVariant variant = TeacherVariant::SharedNoisy;

  // TemporalEnsemble state
  Matrix accumulator;  // N x K
  double tempens_alpha = 0.6;
  std::size_t epochs_accumulated = 0;

  // MeanTeacher state
  MlpModel ema_model;
};

Teacher make_teacher(TeacherVariant variant, const MlpModel& student, std::size_t dataset_size,
                     double tempens_alpha = 0.6);

struct TeacherTargets {
  Matrix targets;  // batch x K, constant w.r.t. the student parameters
  bool warmup = false;  // TemporalEnsemble queried before any epoch update
};

// indices map batch rows to dataset rows; only TemporalEnsemble reads them.
TeacherTargets teacher_targets(const Teacher& teacher, const MlpModel& student,
                               const Matrix& x_batch, const std::vector<std::size_t>& indices,
                               const Perturbation& pert, Rng& rng);

// accumulator <- alpha * accumulator + (1 - alpha) * epoch_predictions
void tempens_epoch_update(Teacher& teacher, const Matrix& epoch_predictions);

// theta' <- alpha * theta' + (1 - alpha) * theta, once per optimizer step
void mean_teacher_update(Teacher& teacher, const MlpModel& student, double alpha);

// Mean over the batch of the squared Euclidean distance between probability
// rows; divided by K unless the raw-sum convention is requested.
double consistency_loss(const Matrix& teacher_probs, const Matrix& student_probs,
                        bool divide_by_k = true);

// dL/dF for the loss above (teacher side constant).
Matrix consistency_loss_grad(const Matrix& teacher_probs, const Matrix& student_probs,
                             bool divide_by_k = true);

}  // namespace sntg

#endif
