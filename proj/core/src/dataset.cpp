#include "sntg/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>

#include "sntg/errors.hpp"

namespace sntg {

std::size_t Dataset::labeled_count() const {
  std::size_t n = 0;
  for (std::uint8_t m : labeled_mask) n += m ? 1 : 0;
  return n;
}

void Dataset::validate() const {
  const std::size_t n = features.rows();
  if (labels.size() != n) throw DataError("dataset: label count does not match row count");
  if (labeled_mask.size() != n) throw DataError("dataset: mask size does not match row count");
  if (num_classes == 0) throw DataError("dataset: num_classes is zero");
  for (std::size_t i = 0; i < n; ++i) {
    if (labeled_mask[i] && (labels[i] < 0 || labels[i] >= static_cast<int>(num_classes)))
      throw DataError("dataset: labeled row has out-of-range label");
  }
  if (!original_labels.empty() && original_labels.size() != n)
    throw DataError("dataset: original_labels size does not match row count");
}

Dataset split_labeled(const Dataset& ds, std::size_t num_labeled, Rng& rng, bool balanced) {
  const std::size_t n = ds.size();
  const std::size_t k = ds.num_classes;
  if (num_labeled > n) throw DataError("split_labeled: more labels requested than rows");

  Dataset out = ds;
  out.labeled_mask.assign(n, 0);

  if (balanced) {
    if (k == 0 || num_labeled % k != 0)
      throw DataError("split_labeled: balanced split needs num_labeled divisible by num_classes");
    const std::size_t per_class = num_labeled / k;
    std::vector<std::vector<std::size_t>> by_class(k);
    for (std::size_t i = 0; i < n; ++i) by_class[static_cast<std::size_t>(ds.labels[i])].push_back(i);
    for (std::size_t c = 0; c < k; ++c) {
      auto& idx = by_class[c];
      if (idx.size() < per_class)
        throw DataError("split_labeled: class has fewer rows than the balanced quota");
      for (std::size_t i = 0; i < per_class; ++i) {
        const std::size_t j = i + rng.uniform_index(idx.size() - i);
        std::swap(idx[i], idx[j]);
        out.labeled_mask[idx[i]] = 1;
      }
    }
  } else {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < num_labeled; ++i) {
      const std::size_t j = i + rng.uniform_index(n - i);
      std::swap(idx[i], idx[j]);
      out.labeled_mask[idx[i]] = 1;
    }
  }
  return out;
}

Dataset corrupt_labels(const Dataset& ds, double fraction, Rng& rng) {
  if (fraction < 0.0 || fraction > 1.0) throw DataError("corrupt_labels: fraction outside [0, 1]");
  if (ds.labeled_count() != ds.size())
    throw DataError("corrupt_labels: requires a fully labeled dataset");

  const std::size_t n = ds.size();
  const std::size_t m = static_cast<std::size_t>(fraction * static_cast<double>(n));

  Dataset out = ds;
  out.original_labels = ds.labels;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(idx[i], idx[j]);
    out.labels[idx[i]] = static_cast<int>(rng.uniform_index(ds.num_classes));
  }
  return out;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.features = Matrix(rows.size(), ds.dim());
  out.labels.resize(rows.size());
  out.labeled_mask.resize(rows.size());
  out.num_classes = ds.num_classes;
  if (!ds.original_labels.empty()) out.original_labels.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    if (r >= ds.size()) throw DataError("subset: row index out of range");
    for (std::size_t j = 0; j < ds.dim(); ++j) out.features(i, j) = ds.features(r, j);
    out.labels[i] = ds.labels[r];
    out.labeled_mask[i] = ds.labeled_mask[r];
    if (!ds.original_labels.empty()) out.original_labels[i] = ds.original_labels[r];
  }
  return out;
}

void export_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DataError("export_dataset_csv: cannot open " + path);
  for (std::size_t j = 0; j < ds.dim(); ++j) f << "x" << j << ",";
  f << "label,labeled\n";
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.features(i, j));
      f << buf << ",";
    }
    f << ds.labels[i] << "," << (ds.labeled_mask[i] ? 1 : 0) << "\n";
  }
  if (!f) throw DataError("export_dataset_csv: write failed for " + path);
}

}  // namespace sntg
