#ifndef SNTG_DATASET_HPP
#define SNTG_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sntg/matrix.hpp"
#include "sntg/rng.hpp"

namespace sntg {

// Feature matrix plus per-row class labels and a labeled/unlabeled mask.
// Ground-truth labels are kept for every row so whole-set accuracy stays
// computable; trainers may read labels only where the mask is set.
struct Dataset {
  Matrix features;
  std::vector<int> labels;
  std::vector<std::uint8_t> labeled_mask;
  std::size_t num_classes = 0;
  // Pre-corruption labels, filled by corrupt_labels; empty otherwise.
  std::vector<int> original_labels;

  std::size_t size() const { return features.rows(); }
  std::size_t dim() const { return features.cols(); }
  std::size_t labeled_count() const;

  void validate() const;  // throws DataError on broken invariants
};

// Keeps exactly L rows labeled (L/K per class when balanced), clearing the
// mask everywhere else. Labels themselves are retained for evaluation.
Dataset split_labeled(const Dataset& ds, std::size_t num_labeled, Rng& rng, bool balanced = true);

// Resamples floor(fraction*N) uniformly chosen rows' labels uniformly over
// 0..K-1 (a resample may repeat the old label). Requires all rows labeled.
Dataset corrupt_labels(const Dataset& ds, double fraction, Rng& rng);

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows);

// CSV with header x0,...,x{d-1},label,labeled.
void export_dataset_csv(const Dataset& ds, const std::string& path);

}  // namespace sntg

#endif
