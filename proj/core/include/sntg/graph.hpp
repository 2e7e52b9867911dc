#ifndef SNTG_GRAPH_HPP
#define SNTG_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sntg/dataset.hpp"
#include "sntg/matrix.hpp"
#include "sntg/mlp.hpp"
#include "sntg/rng.hpp"

namespace sntg {

// Per-row argmax; ties break toward the lowest class index.
std::vector<int> hard_targets(const Matrix& probs);

// 1 iff the hard targets agree.
inline int pair_weight(int yi, int yj) { return yi == yj ? 1 : 0; }

// Sub-sampled ordered index pairs with 0/1 similarity weights. Indices
// address rows of the current batch.
struct PairBatch {
  std::vector<std::size_t> i;
  std::vector<std::size_t> j;
  std::vector<std::uint8_t> w;

  std::size_t size() const { return i.size(); }
};

// s ordered pairs (i, j), i != j, drawn i.i.d. uniformly with replacement
// across pairs, so the subsampled mean estimates the all-pairs mean without
// bias. Weights are left zero for the caller to fill.
PairBatch sample_pairs(std::size_t n, std::size_t s, Rng& rng);

enum class GraphMode {
  TeacherGraph,            // hard targets of the current teacher batch
  FixedKnnInput,           // input-space k-NN adjacency, precomputed
  FixedFrozenPredictions,  // hard targets of a separately trained frozen model
  TeacherSoftKl,           // thresholded symmetric KL between teacher rows
};

struct GraphSource {
  GraphMode mode = GraphMode::TeacherGraph;
  // FixedKnnInput: per-row sorted neighbor lists over the dataset
  std::vector<std::vector<std::size_t>> knn;
  // FixedFrozenPredictions: hard targets over the dataset
  std::vector<int> frozen_targets;
  // TeacherSoftKl
  double kl_threshold = 0.5;
};

// Directed k-NN under Euclidean distance; (distance, index) tie-break, so
// every node has out-degree exactly k.
GraphSource fixed_knn_graph(const Matrix& x, std::size_t k);

// Noise-free hard targets of `frozen_model` over the whole dataset.
GraphSource frozen_prediction_graph(const MlpModel& frozen_model, const Dataset& ds);

// Fills pair weights. `teacher_probs` covers the current batch rows;
// `dataset_indices` maps batch rows to dataset rows (used by fixed modes).
void assign_pair_weights(PairBatch& pairs, const GraphSource& graph, const Matrix& teacher_probs,
                         const std::vector<std::size_t>& dataset_indices);

// Mean over the pair batch of the contrastive term: with the per-dimension
// averaged distance D² = (1/p)‖h_i−h_j‖², a W=1 pair contributes D² and a
// W=0 pair contributes max(0, m−D)².
double sntg_loss(const Matrix& h, const PairBatch& pairs, double margin);

// Loss as above, plus dL/dH accumulated into `dh` (same shape as h).
double sntg_loss_grad(const Matrix& h, const PairBatch& pairs, double margin, Matrix& dh);

// CSV rows (i, j, w) for inspection.
void dump_pairs_csv(const PairBatch& pairs, const std::string& path);

}  // namespace sntg

#endif
