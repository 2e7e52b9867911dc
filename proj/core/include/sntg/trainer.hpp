#ifndef SNTG_TRAINER_HPP
#define SNTG_TRAINER_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sntg/dataset.hpp"
#include "sntg/graph.hpp"
#include "sntg/mlp.hpp"
#include "sntg/teacher.hpp"
#include "sntg/train_config.hpp"

namespace sntg {

struct EpochMetrics {
  std::size_t epoch = 0;
  double supervised_loss = 0.0;
  double consistency_loss = 0.0;  // raw component, before weighting
  double sntg_loss = 0.0;         // raw component, before weighting
  double entropy_loss = 0.0;      // raw component, before weighting
  double total_loss = 0.0;        // composite as accumulated batch by batch
  double train_error = 0.0;       // percent
  double test_error = 0.0;        // percent
  double lr = 0.0;
  double w = 0.0;                 // unsupervised ramp weight
  double wall_seconds = 0.0;      // excluded from the metrics CSV
};

struct TrainResult {
  MlpModel model;
  Teacher teacher;
  std::vector<EpochMetrics> metrics;
  std::size_t warmup_batches = 0;
  std::size_t saturated_predictions = 0;
};

// Runs the full training loop. `test_ds` may be null, in which case the
// test-error column repeats the train error (synthetic sets are evaluated
// over all points). The fixed graph modes precompute their adjacency or
// frozen targets from `train_ds` (FixedFrozenPredictions needs
// `frozen_model`).
TrainResult train(const TrainConfig& cfg, const Dataset& train_ds, const Dataset* test_ds,
                  std::uint64_t seed, const MlpModel* frozen_model = nullptr);

// Noise-free argmax error as a percentage.
double evaluate(const MlpModel& model, const Dataset& ds);

// index,label,pc1,pc2 rows: the 2-D PCA projection of h(x) over `ds`.
void export_embeddings(const MlpModel& model, const Dataset& ds, const std::string& path);

void write_metrics_csv(const std::vector<EpochMetrics>& metrics, const std::string& path);
void write_timings_csv(const std::vector<EpochMetrics>& metrics, const std::string& path);

}  // namespace sntg

#endif
