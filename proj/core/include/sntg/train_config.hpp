#ifndef SNTG_TRAIN_CONFIG_HPP
#define SNTG_TRAIN_CONFIG_HPP

#include <cstddef>
#include <vector>

#include "sntg/graph.hpp"
#include "sntg/mlp.hpp"
#include "sntg/teacher.hpp"

namespace sntg {

struct TrainConfig {
  TeacherVariant teacher = TeacherVariant::SharedNoisy;

  std::vector<std::size_t> hidden_sizes = {100, 100, 100};
  double leaky_slope = 0.1;

  std::size_t epochs = 500;
  std::size_t batch_size = 100;
  double max_lr = 0.001;

  // Unsupervised weights; lambda2 is always k_ratio * lambda1. The toggles
  // zero one term's contribution without disturbing the other, so ablation
  // arms keep the coupled-weight rule.
  double lambda1 = 100.0;
  double k_ratio = 0.4;
  bool use_consistency = true;
  bool use_sntg = true;

  double margin = 1.0;
  std::size_t pair_count = 50;

  std::size_t rampup_length = 80;
  std::size_t rampdown_length = 50;

  Perturbation perturbation{0.1, 0.1, 0.0, true};

  double entropy_weight = 0.0;
  bool entropy_ramped = true;

  double tempens_alpha = 0.6;
  double mt_alpha_rampup = 0.99;
  double mt_alpha_final = 0.999;

  GraphMode graph_mode = GraphMode::TeacherGraph;
  std::size_t knn_k = 10;
  double kl_threshold = 0.5;

  // Consistency distance divided by K (per-class mean) versus the raw sum.
  bool consistency_div_k = true;

  std::size_t eval_every = 1;

  double lambda2() const { return k_ratio * lambda1; }
  double effective_lambda1() const { return use_consistency ? lambda1 : 0.0; }
  double effective_lambda2() const { return use_sntg ? lambda2() : 0.0; }

  void validate() const;  // throws ConfigError
};

}  // namespace sntg

#endif
