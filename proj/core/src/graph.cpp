#include "sntg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "sntg/errors.hpp"

namespace sntg {

std::vector<int> hard_targets(const Matrix& probs) {
  std::vector<int> out(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const double* row = probs.row(i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < probs.cols(); ++k)
      if (row[k] > row[best]) best = k;
    out[i] = static_cast<int>(best);
  }
  return out;
}

PairBatch sample_pairs(std::size_t n, std::size_t s, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_pairs: need a batch of at least 2");
  if (s == 0) throw std::invalid_argument("sample_pairs: need at least 1 pair");
  PairBatch out;
  out.i.resize(s);
  out.j.resize(s);
  out.w.assign(s, 0);
  for (std::size_t p = 0; p < s; ++p) {
    const std::size_t a = rng.uniform_index(n);
    std::size_t b = rng.uniform_index(n - 1);
    if (b >= a) ++b;
    out.i[p] = a;
    out.j[p] = b;
  }
  return out;
}

GraphSource fixed_knn_graph(const Matrix& x, std::size_t k) {
  const std::size_t n = x.rows();
  if (k >= n) throw std::invalid_argument("fixed_knn_graph: k must be below the row count");
  GraphSource g;
  g.mode = GraphMode::FixedKnnInput;
  g.knn.resize(n);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    const double* xi = x.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* xj = x.row(j);
      double d2 = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) {
        const double d = xi[c] - xj[c];
        d2 += d * d;
      }
      dist.emplace_back(d2, j);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    auto& nbrs = g.knn[i];
    nbrs.resize(k);
    for (std::size_t r = 0; r < k; ++r) nbrs[r] = dist[r].second;
    std::sort(nbrs.begin(), nbrs.end());
  }
  return g;
}

GraphSource frozen_prediction_graph(const MlpModel& frozen_model, const Dataset& ds) {
  GraphSource g;
  g.mode = GraphMode::FixedFrozenPredictions;
  g.frozen_targets = hard_targets(forward(frozen_model, ds.features).probs);
  return g;
}

static double symmetric_kl(const double* p, const double* q, std::size_t k) {
  constexpr double kFloor = 1e-12;
  double out = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double a = std::max(p[c], kFloor);
    const double b = std::max(q[c], kFloor);
    out += 0.5 * (a - b) * (std::log(a) - std::log(b));
  }
  return out;
}

void assign_pair_weights(PairBatch& pairs, const GraphSource& graph, const Matrix& teacher_probs,
                         const std::vector<std::size_t>& dataset_indices) {
  switch (graph.mode) {
    case GraphMode::TeacherGraph: {
      const std::vector<int> y = hard_targets(teacher_probs);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        pairs.w[p] = static_cast<std::uint8_t>(pair_weight(y[pairs.i[p]], y[pairs.j[p]]));
      break;
    }
    case GraphMode::TeacherSoftKl: {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const double kl = symmetric_kl(teacher_probs.row(pairs.i[p]),
                                       teacher_probs.row(pairs.j[p]), teacher_probs.cols());
        pairs.w[p] = kl < graph.kl_threshold ? 1 : 0;
      }
      break;
    }
    case GraphMode::FixedKnnInput: {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::size_t di = dataset_indices.at(pairs.i[p]);
        const std::size_t dj = dataset_indices.at(pairs.j[p]);
        const auto& nbrs = graph.knn.at(di);
        pairs.w[p] = std::binary_search(nbrs.begin(), nbrs.end(), dj) ? 1 : 0;
      }
      break;
    }
    case GraphMode::FixedFrozenPredictions: {
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::size_t di = dataset_indices.at(pairs.i[p]);
        const std::size_t dj = dataset_indices.at(pairs.j[p]);
        pairs.w[p] = static_cast<std::uint8_t>(
            pair_weight(graph.frozen_targets.at(di), graph.frozen_targets.at(dj)));
      }
      break;
    }
  }
}

double sntg_loss(const Matrix& h, const PairBatch& pairs, double margin) {
  Matrix unused;
  return sntg_loss_grad(h, pairs, margin, unused);
}

double sntg_loss_grad(const Matrix& h, const PairBatch& pairs, double margin, Matrix& dh) {
  if (margin <= 0.0) throw std::invalid_argument("sntg_loss: margin must be positive");
  if (pairs.size() == 0) return 0.0;
  const std::size_t p = h.cols();
  const bool want_grad = !dh.empty();
  if (want_grad && !dh.same_shape(h)) throw std::invalid_argument("sntg_loss_grad: dh shape mismatch");

  const double inv_s = 1.0 / static_cast<double>(pairs.size());
  const double inv_p = 1.0 / static_cast<double>(p);
  double loss = 0.0;
  std::vector<double> diff(p);

  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const std::size_t a = pairs.i[q];
    const std::size_t b = pairs.j[q];
    const double* ha = h.row(a);
    const double* hb = h.row(b);
    double d2 = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      diff[c] = ha[c] - hb[c];
      d2 += diff[c] * diff[c];
    }
    d2 *= inv_p;

    if (pairs.w[q]) {
      loss += d2;
      if (want_grad) {
        const double scale = 2.0 * inv_p * inv_s;
        double* ga = dh.row(a);
        double* gb = dh.row(b);
        for (std::size_t c = 0; c < p; ++c) {
          ga[c] += scale * diff[c];
          gb[c] -= scale * diff[c];
        }
      }
    } else {
      const double d = std::sqrt(d2);
      if (d >= margin) continue;
      const double gap = margin - d;
      loss += gap * gap;
      // d == 0 sits at the hinge's kink; zero is a valid subgradient there
      if (want_grad && d > 0.0) {
        const double scale = -2.0 * gap / (d * static_cast<double>(p)) * inv_s;
        double* ga = dh.row(a);
        double* gb = dh.row(b);
        for (std::size_t c = 0; c < p; ++c) {
          ga[c] += scale * diff[c];
          gb[c] -= scale * diff[c];
        }
      }
    }
  }
  return loss * inv_s;
}

void dump_pairs_csv(const PairBatch& pairs, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("dump_pairs_csv: cannot open " + path);
  f << "i,j,w\n";
  for (std::size_t p = 0; p < pairs.size(); ++p)
    f << pairs.i[p] << "," << pairs.j[p] << "," << static_cast<int>(pairs.w[p]) << "\n";
}

}  // namespace sntg
