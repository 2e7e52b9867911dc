#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sntg/mlp.hpp"
#include "sntg/numerics.hpp"
#include "sntg/teacher.hpp"

namespace {

sntg::Matrix random_batch(std::size_t n, std::size_t d, sntg::Rng& rng) {
  sntg::Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.normal();
  return x;
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

}  // namespace

TEST_CASE("shared-noisy teacher without noise equals the student") {
  sntg::Rng rng(51);
  const auto student = sntg::make_mlp(3, {5}, 4, 0.1, rng);
  const auto x = random_batch(6, 3, rng);
  auto teacher = sntg::make_teacher(sntg::TeacherVariant::SharedNoisy, student, 6);

  sntg::Rng noise(1);
  const sntg::Perturbation off{0.3, 0.3, 0.0, false};
  const auto t = sntg::teacher_targets(teacher, student, x, iota_indices(6), off, noise);
  const auto direct = sntg::forward(student, x);
  CHECK(t.targets == direct.probs);
  CHECK_FALSE(t.warmup);
}

TEST_CASE("mean teacher starts as a copy and decays toward the student") {
  sntg::Rng rng(52);
  const auto student0 = sntg::make_mlp(2, {3}, 2, 0.1, rng);
  auto teacher = sntg::make_teacher(sntg::TeacherVariant::MeanTeacher, student0, 4);
  CHECK(teacher.ema_model.weights[0] == student0.weights[0]);
  CHECK(teacher.ema_model.biases == student0.biases);

  // move the student, then EMA-update k times: gap shrinks by alpha each step
  auto student = student0;
  for (auto& w : student.weights)
    for (std::size_t r = 0; r < w.rows(); ++r)
      for (std::size_t c = 0; c < w.cols(); ++c) w(r, c) += 1.0;

  const double alpha = 0.9;
  for (int k = 1; k <= 20; ++k) {
    sntg::mean_teacher_update(teacher, student, alpha);
    const double expect_gap = std::pow(alpha, k);
    for (std::size_t l = 0; l < student.num_layers(); ++l)
      for (std::size_t r = 0; r < student.weights[l].rows(); ++r)
        for (std::size_t c = 0; c < student.weights[l].cols(); ++c) {
          const double gap = student.weights[l](r, c) - teacher.ema_model.weights[l](r, c);
          CHECK(gap == doctest::Approx(expect_gap).epsilon(1e-10));
        }
  }
}

TEST_CASE("mean teacher degenerate decay rates") {
  sntg::Rng rng(53);
  const auto student0 = sntg::make_mlp(2, {3}, 2, 0.1, rng);
  auto student = student0;
  student.weights[0](0, 0) += 5.0;

  auto jump = sntg::make_teacher(sntg::TeacherVariant::MeanTeacher, student0, 1);
  sntg::mean_teacher_update(jump, student, 0.0);
  CHECK(jump.ema_model.weights[0] == student.weights[0]);

  auto frozen = sntg::make_teacher(sntg::TeacherVariant::MeanTeacher, student0, 1);
  sntg::mean_teacher_update(frozen, student, 1.0);
  CHECK(frozen.ema_model.weights[0] == student0.weights[0]);
}

TEST_CASE("mean teacher targets use the ema weights") {
  sntg::Rng rng(54);
  const auto student = sntg::make_mlp(3, {4}, 3, 0.1, rng);
  auto teacher = sntg::make_teacher(sntg::TeacherVariant::MeanTeacher, student, 5);
  // disturb the ema copy so the two nets differ
  teacher.ema_model.weights[0](0, 0) += 2.0;

  const auto x = random_batch(5, 3, rng);
  sntg::Rng noise(2);
  const sntg::Perturbation off{0.0, 0.0, 0.0, false};
  const auto t = sntg::teacher_targets(teacher, student, x, iota_indices(5), off, noise);
  CHECK(t.targets == sntg::forward(teacher.ema_model, x).probs);
  CHECK_FALSE(t.targets == sntg::forward(student, x).probs);
}

TEST_CASE("temporal ensemble warms up uniform then debiases exactly") {
  sntg::Rng rng(55);
  const auto student = sntg::make_mlp(2, {3}, 4, 0.1, rng);
  const auto x = random_batch(3, 2, rng);
  const auto idx = iota_indices(3);
  const sntg::Perturbation off{0.0, 0.0, 0.0, false};

  for (double alpha : {0.3, 0.6, 0.9}) {
    auto teacher = sntg::make_teacher(sntg::TeacherVariant::TemporalEnsemble, student, 3, alpha);
    sntg::Rng noise(3);
    const auto warm = sntg::teacher_targets(teacher, student, x, idx, off, noise);
    CHECK(warm.warmup);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 4; ++c) CHECK(warm.targets(i, c) == 0.25);

    // after one accumulation of P the debiased target is exactly P
    const auto preds = sntg::forward(student, x).probs;
    sntg::tempens_epoch_update(teacher, preds);
    CHECK(teacher.epochs_accumulated == 1);
    const auto t1 = sntg::teacher_targets(teacher, student, x, idx, off, noise);
    CHECK_FALSE(t1.warmup);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t c = 0; c < 4; ++c)
        CHECK(t1.targets(i, c) == doctest::Approx(preds(i, c)).epsilon(1e-15));
  }
}

TEST_CASE("temporal ensemble with constant predictions returns them at every epoch") {
  sntg::Rng rng(56);
  const auto student = sntg::make_mlp(2, {3}, 3, 0.1, rng);
  const auto x = random_batch(4, 2, rng);
  const auto idx = iota_indices(4);
  const auto preds = sntg::forward(student, x).probs;
  const sntg::Perturbation off{0.0, 0.0, 0.0, false};

  auto teacher = sntg::make_teacher(sntg::TeacherVariant::TemporalEnsemble, student, 4, 0.6);
  for (int epoch = 1; epoch <= 10; ++epoch) {
    sntg::tempens_epoch_update(teacher, preds);
    sntg::Rng noise(4);
    const auto t = sntg::teacher_targets(teacher, student, x, idx, off, noise);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t c = 0; c < 3; ++c)
        CHECK(t.targets(i, c) == doctest::Approx(preds(i, c)).epsilon(1e-12));

    // raw accumulator rows sum to 1 - alpha^t
    const double expect = 1.0 - std::pow(0.6, epoch);
    for (std::size_t i = 0; i < 4; ++i) {
      double s = 0.0;
      for (std::size_t c = 0; c < 3; ++c) s += teacher.accumulator(i, c);
      CHECK(s == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("temporal ensemble targets pick rows through dataset indices") {
  sntg::Rng rng(57);
  const auto student = sntg::make_mlp(2, {3}, 2, 0.1, rng);
  auto teacher = sntg::make_teacher(sntg::TeacherVariant::TemporalEnsemble, student, 4, 0.6);
  sntg::Matrix preds(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    preds(i, 0) = 0.1 + 0.2 * static_cast<double>(i);
    preds(i, 1) = 1.0 - preds(i, 0);
  }
  sntg::tempens_epoch_update(teacher, preds);

  const sntg::Matrix x(2, 2);
  sntg::Rng noise(5);
  const sntg::Perturbation off{0.0, 0.0, 0.0, false};
  const auto t = sntg::teacher_targets(teacher, student, x, {3, 1}, off, noise);
  CHECK(t.targets(0, 0) == doctest::Approx(preds(3, 0)).epsilon(1e-12));
  CHECK(t.targets(1, 0) == doctest::Approx(preds(1, 0)).epsilon(1e-12));
}

TEST_CASE("consistency loss closed forms") {
  sntg::Matrix a(2, 2), b(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  b = a;
  CHECK(sntg::consistency_loss(a, b) == 0.0);

  // one row flipped: squared distance 2 on that row, mean over 2 rows, / K=2
  b(1, 0) = 1.0;
  b(1, 1) = 0.0;
  CHECK(sntg::consistency_loss(a, b, true) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sntg::consistency_loss(a, b, false) == doctest::Approx(1.0).epsilon(1e-15));

  const auto g = sntg::consistency_loss_grad(a, b, true);
  // d/dF of (1/(B K)) sum |F - T|^2 = 2 (F - T) / (B K)
  CHECK(g(1, 0) == doctest::Approx(2.0 * (1.0 - 0.0) / 4.0).epsilon(1e-15));
  CHECK(g(1, 1) == doctest::Approx(2.0 * (0.0 - 1.0) / 4.0).epsilon(1e-15));
  CHECK(g(0, 0) == 0.0);
}

TEST_CASE("expected squared prediction gap equals twice the summed variance") {
  // Monte Carlo check of the identity E||f' - f||^2 = 2 sum_k Var f_k for
  // independent noisy passes of the same input.
  sntg::Rng rng(58);
  const auto model = sntg::make_mlp(3, {6}, 3, 0.1, rng);
  sntg::Matrix x(1, 3);
  x(0, 0) = 0.4;
  x(0, 1) = -0.2;
  x(0, 2) = 1.1;
  const sntg::Perturbation pert{0.3, 0.2, 0.0, true};

  const std::size_t m = 4000;
  sntg::Rng noise(59);
  std::vector<std::array<double, 3>> samples(m);
  for (std::size_t s = 0; s < m; ++s) {
    const auto tr = sntg::forward(model, x, pert, noise);
    for (std::size_t c = 0; c < 3; ++c) samples[s][c] = tr.probs(0, c);
  }

  double var_sum = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s[c];
    mean /= static_cast<double>(m);
    double v = 0.0;
    for (const auto& s : samples) v += (s[c] - mean) * (s[c] - mean);
    var_sum += v / static_cast<double>(m - 1);
  }

  double gap = 0.0;
  for (std::size_t s = 0; s + 1 < m; s += 2)
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = samples[s][c] - samples[s + 1][c];
      gap += d * d;
    }
  gap /= static_cast<double>(m / 2);

  CHECK(gap == doctest::Approx(2.0 * var_sum).epsilon(0.15));
}
