#include "sntg/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>

#include "sntg/adam.hpp"
#include "sntg/errors.hpp"
#include "sntg/pca.hpp"
#include "sntg/schedules.hpp"

namespace sntg {

void TrainConfig::validate() const {
  if (hidden_sizes.empty()) throw ConfigError("config: need at least one hidden layer");
  for (std::size_t h : hidden_sizes)
    if (h == 0) throw ConfigError("config: zero-width hidden layer");
  if (leaky_slope < 0.0 || leaky_slope >= 1.0) throw ConfigError("config: leaky_slope outside [0, 1)");
  if (epochs == 0) throw ConfigError("config: epochs must be positive");
  if (batch_size == 0) throw ConfigError("config: batch_size must be positive");
  if (!(max_lr > 0.0)) throw ConfigError("config: max_lr must be positive");
  if (lambda1 < 0.0) throw ConfigError("config: lambda1 must be nonnegative");
  if (k_ratio < 0.0) throw ConfigError("config: k_ratio must be nonnegative");
  if (!(margin > 0.0)) throw ConfigError("config: margin must be positive");
  if (pair_count == 0) throw ConfigError("config: pair_count must be positive");
  if (rampup_length + rampdown_length > epochs)
    throw ConfigError("config: rampup_length + rampdown_length exceeds epochs");
  if (perturbation.input_noise_sd < 0.0 || perturbation.layer_noise_sd < 0.0)
    throw ConfigError("config: negative noise level");
  if (perturbation.dropout_rate < 0.0 || perturbation.dropout_rate >= 1.0)
    throw ConfigError("config: dropout_rate outside [0, 1)");
  if (entropy_weight < 0.0) throw ConfigError("config: entropy_weight must be nonnegative");
  if (tempens_alpha < 0.0 || tempens_alpha >= 1.0)
    throw ConfigError("config: tempens_alpha outside [0, 1)");
  if (mt_alpha_rampup < 0.0 || mt_alpha_rampup > 1.0 || mt_alpha_final < 0.0 ||
      mt_alpha_final > 1.0)
    throw ConfigError("config: mean-teacher alpha outside [0, 1]");
  if (knn_k == 0) throw ConfigError("config: knn_k must be positive");
  if (!(kl_threshold > 0.0)) throw ConfigError("config: kl_threshold must be positive");
  if (eval_every == 0) throw ConfigError("config: eval_every must be positive");
}

namespace {

// Independent stream tags off the master seed, so toggling one feature
// never perturbs the draws of another.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kShuffleStream = 2;
constexpr std::uint64_t kStudentPertStream = 3;
constexpr std::uint64_t kTeacherPertStream = 4;
constexpr std::uint64_t kPairStream = 5;

Matrix gather_rows(const Matrix& x, const std::vector<std::size_t>& order, std::size_t begin,
                   std::size_t end) {
  Matrix out(end - begin, x.cols());
  for (std::size_t r = begin; r < end; ++r)
    std::memcpy(out.row(r - begin), x.row(order[r]), x.cols() * sizeof(double));
  return out;
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const Dataset& train_ds, const Dataset* test_ds,
                  std::uint64_t seed, const MlpModel* frozen_model) {
  cfg.validate();
  train_ds.validate();
  const std::size_t n = train_ds.size();
  const std::size_t num_classes = train_ds.num_classes;
  if (n == 0) throw DataError("train: empty dataset");
  if (cfg.graph_mode == GraphMode::FixedFrozenPredictions && frozen_model == nullptr)
    throw ConfigError("train: frozen-prediction graph needs a frozen model");

  const Rng master(seed);
  Rng init_rng = master.child(kInitStream);

  TrainResult res;
  res.model = make_mlp(train_ds.dim(), cfg.hidden_sizes, num_classes, cfg.leaky_slope, init_rng);
  res.teacher = make_teacher(cfg.teacher, res.model, n, cfg.tempens_alpha);

  GraphSource graph;
  switch (cfg.graph_mode) {
    case GraphMode::TeacherGraph:
      break;
    case GraphMode::TeacherSoftKl:
      graph.mode = GraphMode::TeacherSoftKl;
      graph.kl_threshold = cfg.kl_threshold;
      break;
    case GraphMode::FixedKnnInput:
      graph = fixed_knn_graph(train_ds.features, cfg.knn_k);
      break;
    case GraphMode::FixedFrozenPredictions:
      graph = frozen_prediction_graph(*frozen_model, train_ds);
      break;
  }

  AdamState adam = make_adam_state(res.model);
  const std::size_t num_batches = (n + cfg.batch_size - 1) / cfg.batch_size;
  const bool tempens = cfg.teacher == TeacherVariant::TemporalEnsemble;
  // Teacher passes matter only when some unsupervised term consumes them.
  const bool need_teacher =
      cfg.use_consistency || (cfg.use_sntg && (cfg.graph_mode == GraphMode::TeacherGraph ||
                                               cfg.graph_mode == GraphMode::TeacherSoftKl));

  Matrix epoch_preds;
  if (tempens) epoch_preds = Matrix(n, num_classes);

  std::vector<std::size_t> order(n);
  std::vector<int> batch_labels;
  std::vector<std::uint8_t> batch_mask;
  std::vector<std::size_t> batch_idx;

  double last_train_error = 0.0;
  double last_test_error = 0.0;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    const double w = rampup_weight(epoch, cfg.rampup_length);
    const double lr = cfg.max_lr * w * rampdown_factor(epoch, cfg.epochs, cfg.rampdown_length);
    const double l1 = cfg.effective_lambda1();
    const double l2 = cfg.effective_lambda2();
    const double ent_w = cfg.entropy_weight * (cfg.entropy_ramped ? w : 1.0);
    const double mt_alpha = epoch < cfg.rampup_length ? cfg.mt_alpha_rampup : cfg.mt_alpha_final;

    std::iota(order.begin(), order.end(), 0);
    Rng shuffle_rng = master.child(kShuffleStream).child(epoch);
    shuffle_rng.shuffle(order);

    double sup_sum = 0.0, cons_sum = 0.0, sntg_sum = 0.0, ent_sum = 0.0, total_sum = 0.0;

    for (std::size_t b = 0; b < num_batches; ++b) {
      const std::size_t begin = b * cfg.batch_size;
      const std::size_t end = std::min(n, begin + cfg.batch_size);
      const std::size_t bs = end - begin;

      Matrix xb = gather_rows(train_ds.features, order, begin, end);
      batch_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(begin),
                       order.begin() + static_cast<std::ptrdiff_t>(end));
      batch_labels.resize(bs);
      batch_mask.resize(bs);
      for (std::size_t r = 0; r < bs; ++r) {
        batch_labels[r] = train_ds.labels[batch_idx[r]];
        batch_mask[r] = train_ds.labeled_mask[batch_idx[r]];
      }

      Rng student_rng = master.child(kStudentPertStream).child(epoch).child(b);
      const ForwardTrace trace = forward(res.model, xb, cfg.perturbation, student_rng);

      TeacherTargets targets;
      if (need_teacher) {
        Rng teacher_rng = master.child(kTeacherPertStream).child(epoch).child(b);
        targets = teacher_targets(res.teacher, res.model, xb, batch_idx, cfg.perturbation,
                                  teacher_rng);
        if (targets.warmup) ++res.warmup_batches;
      }

      if (tempens)
        for (std::size_t r = 0; r < bs; ++r)
          std::memcpy(epoch_preds.row(batch_idx[r]), trace.probs.row(r),
                      num_classes * sizeof(double));

      const SupervisedLossResult sup = supervised_loss(trace.probs, batch_labels, batch_mask);
      res.saturated_predictions += sup.saturated;
      const double cons =
          need_teacher ? consistency_loss(targets.targets, trace.probs, cfg.consistency_div_k)
                       : 0.0;
      const double ent = entropy_loss(trace.probs);

      double sntg_val = 0.0;
      Matrix dh;
      if (cfg.use_sntg && bs >= 2) {
        Rng pair_rng = master.child(kPairStream).child(epoch).child(b);
        PairBatch pairs = sample_pairs(bs, cfg.pair_count, pair_rng);
        assign_pair_weights(pairs, graph, targets.targets, batch_idx);
        if (l2 != 0.0 && w != 0.0) {
          dh = Matrix(bs, res.model.feature_dim());
          sntg_val = sntg_loss_grad(trace.h(), pairs, cfg.margin, dh);
          dh *= w * l2;
        } else {
          sntg_val = sntg_loss(trace.h(), pairs, cfg.margin);
        }
      }

      const double total = sup.value + w * (l1 * cons + l2 * sntg_val) + ent_w * ent;
      if (!std::isfinite(total))
        throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch) +
                           " batch " + std::to_string(b));

      // dL/dlogits: cross-entropy contributes (F - onehot)/|B| directly;
      // consistency and entropy arrive as dL/dF and go through the softmax.
      Matrix dlogits(bs, num_classes);
      const double inv_bs = 1.0 / static_cast<double>(bs);
      for (std::size_t r = 0; r < bs; ++r) {
        if (!batch_mask[r]) continue;
        const double* f = trace.probs.row(r);
        double* d = dlogits.row(r);
        for (std::size_t k = 0; k < num_classes; ++k) d[k] += f[k] * inv_bs;
        d[static_cast<std::size_t>(batch_labels[r])] -= inv_bs;
      }
      const bool want_cons_grad = need_teacher && l1 != 0.0 && w != 0.0;
      if (want_cons_grad || ent_w != 0.0) {
        Matrix dprobs(bs, num_classes);
        if (want_cons_grad) {
          dprobs = consistency_loss_grad(targets.targets, trace.probs, cfg.consistency_div_k);
          dprobs *= w * l1;
        }
        if (ent_w != 0.0) {
          const double scale = ent_w * inv_bs;
          for (std::size_t i = 0; i < dprobs.size(); ++i) {
            const double p = std::max(trace.probs.data()[i], 1e-12);
            dprobs.data()[i] -= scale * (std::log(p) + 1.0);
          }
        }
        dlogits += softmax_backward(trace.probs, dprobs);
      }

      const Gradients grads = backward(res.model, trace, dlogits, dh);
      adam_step(res.model, grads, adam, lr);
      if (cfg.teacher == TeacherVariant::MeanTeacher)
        mean_teacher_update(res.teacher, res.model, mt_alpha);

      sup_sum += sup.value;
      cons_sum += cons;
      sntg_sum += sntg_val;
      ent_sum += ent;
      total_sum += total;
    }

    if (tempens) tempens_epoch_update(res.teacher, epoch_preds);

    EpochMetrics em;
    em.epoch = epoch;
    const double inv_batches = 1.0 / static_cast<double>(num_batches);
    em.supervised_loss = sup_sum * inv_batches;
    em.consistency_loss = cons_sum * inv_batches;
    em.sntg_loss = sntg_sum * inv_batches;
    em.entropy_loss = ent_sum * inv_batches;
    em.total_loss = total_sum * inv_batches;
    em.lr = lr;
    em.w = w;
    if (epoch % cfg.eval_every == 0 || epoch + 1 == cfg.epochs) {
      last_train_error = evaluate(res.model, train_ds);
      last_test_error = test_ds ? evaluate(res.model, *test_ds) : last_train_error;
    }
    em.train_error = last_train_error;
    em.test_error = last_test_error;
    em.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start).count();
    res.metrics.push_back(em);
  }
  return res;
}

double evaluate(const MlpModel& model, const Dataset& ds) {
  if (ds.size() == 0) throw DataError("evaluate: empty dataset");
  // Scores against pre-corruption labels when the dataset carries them.
  const std::vector<int>& truth = ds.original_labels.empty() ? ds.labels : ds.original_labels;
  const ForwardTrace trace = forward(model, ds.features);
  const std::vector<int> pred = hard_targets(trace.probs);
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < pred.size(); ++i)
    if (pred[i] != truth[i]) ++wrong;
  return 100.0 * static_cast<double>(wrong) / static_cast<double>(pred.size());
}

void export_embeddings(const MlpModel& model, const Dataset& ds, const std::string& path) {
  const ForwardTrace trace = forward(model, ds.features);
  const Matrix coords = pca_project(trace.h(), 2);
  const std::vector<int>& truth = ds.original_labels.empty() ? ds.labels : ds.original_labels;
  std::ofstream f(path);
  if (!f) throw DataError("export_embeddings: cannot open " + path);
  f << "index,label,pc1,pc2\n";
  char buf[64];
  for (std::size_t i = 0; i < coords.rows(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g,%.17g", i, truth[i], coords(i, 0), coords(i, 1));
    f << buf << "\n";
  }
  if (!f) throw DataError("export_embeddings: write failed for " + path);
}

void write_metrics_csv(const std::vector<EpochMetrics>& metrics, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("write_metrics_csv: cannot open " + path);
  f << "epoch,supervised_loss,consistency_loss,sntg_loss,entropy_loss,total_loss,"
       "train_error,test_error,lr,w\n";
  char buf[512];
  for (const EpochMetrics& em : metrics) {
    std::snprintf(buf, sizeof(buf),
                  "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", em.epoch,
                  em.supervised_loss, em.consistency_loss, em.sntg_loss, em.entropy_loss,
                  em.total_loss, em.train_error, em.test_error, em.lr, em.w);
    f << buf << "\n";
  }
  if (!f) throw DataError("write_metrics_csv: write failed for " + path);
}

void write_timings_csv(const std::vector<EpochMetrics>& metrics, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("write_timings_csv: cannot open " + path);
  f << "epoch,wall_seconds\n";
  char buf[64];
  for (const EpochMetrics& em : metrics) {
    std::snprintf(buf, sizeof(buf), "%zu,%.6f", em.epoch, em.wall_seconds);
    f << buf << "\n";
  }
}

}  // namespace sntg
