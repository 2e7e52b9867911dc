#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sntg/checkpoint.hpp"
#include "sntg/errors.hpp"
#include "sntg/mnist.hpp"
#include "sntg/synthetic.hpp"
#include "sntg/trainer.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;

namespace sntg_cli {

namespace {

// Seed-derived streams for dataset construction; disjoint from the trainer's
// internal stream tags by construction (different child of the same master).
constexpr std::uint64_t kDataStream = 100;
constexpr std::uint64_t kCorruptStream = 101;
constexpr std::uint64_t kSplitStream = 102;

std::string join_u64(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ";";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ";";
    std::snprintf(buf, sizeof(buf), "%.17g", xs[i]);
    out += buf;
  }
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

BuiltData build_dataset(const DatasetSpec& spec, std::uint64_t seed, const std::string& mnist_dir) {
  const sntg::Rng master(seed);
  BuiltData out;

  if (spec.kind == DatasetSpec::Kind::Mnist) {
    const fs::path dir(mnist_dir);
    const fs::path images = dir / "mnist-10k-images-idx3-ubyte";
    const fs::path labels = dir / "mnist-10k-labels-idx1-ubyte";
    if (!fs::exists(images) || !fs::exists(labels))
      throw sntg::DataError(
          "digit data not found under " + dir.string() +
          "\nexpected files: mnist-10k-images-idx3-ubyte, mnist-10k-labels-idx1-ubyte"
          "\nthese are standard IDX-format digit files (a 10000-image subset);"
          "\nexport them from the original IDX training set and point SNTG_MNIST_DIR"
          "\n(or --mnist-dir) at the directory holding them");
    sntg::Dataset all = sntg::load_mnist_raw(images.string(), labels.string());
    if (spec.mnist_train == 0 || spec.mnist_train >= all.size())
      throw sntg::ConfigError("mnist_train must carve a nonempty train and test split");

    std::vector<std::size_t> train_rows(spec.mnist_train);
    for (std::size_t i = 0; i < spec.mnist_train; ++i) train_rows[i] = i;
    std::vector<std::size_t> test_rows(all.size() - spec.mnist_train);
    for (std::size_t i = 0; i < test_rows.size(); ++i) test_rows[i] = spec.mnist_train + i;

    out.train = sntg::subset(all, train_rows);
    out.test = sntg::subset(all, test_rows);
    out.has_test = true;

    const sntg::Standardizer stats = sntg::fit_standardizer(out.train.features);
    sntg::apply_standardizer(out.train.features, stats);
    sntg::apply_standardizer(out.test.features, stats);
  } else {
    sntg::Rng gen = master.child(kDataStream);
    out.train = spec.kind == DatasetSpec::Kind::TwoMoons
                    ? sntg::gen_two_moons(spec.n, spec.noise_sd, gen)
                    : sntg::gen_four_spins(spec.n, spec.noise_sd, gen);
    out.has_test = false;
  }

  if (spec.corrupt_fraction > 0.0) {
    sntg::Rng corrupt = master.child(kCorruptStream);
    out.train = sntg::corrupt_labels(out.train, spec.corrupt_fraction, corrupt);
  }
  if (spec.labels > 0 && spec.labels < out.train.size()) {
    sntg::Rng split = master.child(kSplitStream);
    out.train = sntg::split_labeled(out.train, spec.labels, split, spec.balanced);
  }
  out.train.validate();
  if (out.has_test) out.test.validate();
  return out;
}

std::vector<std::uint64_t> resolve_seeds(const Experiment& e, std::uint64_t base_seed,
                                         std::size_t repeats_override) {
  if (!e.seeds.empty() && repeats_override == 0) return e.seeds;
  const std::size_t count = repeats_override > 0 ? repeats_override : e.repeats;
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = base_seed + i;
  return seeds;
}

std::vector<VariantSummary> run_experiment(const Experiment& e, const RunOptions& opt,
                                           std::ostream& log) {
  if (opt.seeds.empty()) throw sntg::ConfigError("run: no seeds resolved");
  const fs::path out_root(opt.out_dir);
  fs::create_directories(out_root);

  // variants whose trained models feed a later frozen-graph arm
  std::map<std::string, bool> needed_as_frozen;
  for (const VariantConfig& v : e.variants)
    if (!v.frozen_from.empty()) needed_as_frozen[v.frozen_from] = true;
  std::map<std::string, std::map<std::uint64_t, sntg::MlpModel>> frozen_pool;

  std::vector<VariantSummary> summary;
  for (const VariantConfig& v : e.variants) {
    VariantSummary row;
    row.name = v.name;
    row.seeds = opt.seeds;

    const fs::path variant_dir = out_root / v.name;
    for (std::uint64_t seed : opt.seeds) {
      const auto started = std::chrono::steady_clock::now();
      const fs::path seed_dir = variant_dir / ("seed-" + std::to_string(seed));
      fs::create_directories(seed_dir);

      const BuiltData data = build_dataset(v.data, seed, opt.mnist_dir);

      const sntg::MlpModel* frozen = nullptr;
      if (!v.frozen_from.empty()) {
        const auto pool = frozen_pool.find(v.frozen_from);
        if (pool == frozen_pool.end() || pool->second.find(seed) == pool->second.end())
          throw sntg::ConfigError("run: frozen_from variant '" + v.frozen_from +
                                  "' was not trained for seed " + std::to_string(seed));
        frozen = &pool->second.at(seed);
      }

      const sntg::TrainResult res =
          sntg::train(v.train, data.train, data.has_test ? &data.test : nullptr, seed, frozen);

      sntg::write_metrics_csv(res.metrics, (seed_dir / "metrics.csv").string());
      sntg::write_timings_csv(res.metrics, (seed_dir / "timings.csv").string());
      sntg::save_checkpoint({res.model, res.teacher}, (seed_dir / "model.ckpt").string());
      const sntg::Dataset& eval_ds = data.has_test ? data.test : data.train;
      sntg::export_embeddings(res.model, eval_ds, (seed_dir / "embeddings.csv").string());
      if (data.train.dim() == 2)
        write_decision_plot(res.model, data.train, (seed_dir / "plot.svg").string());

      if (needed_as_frozen.count(v.name)) frozen_pool[v.name][seed] = res.model;

      const double err = res.metrics.back().test_error;
      row.errors.push_back(err);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      char line[160];
      std::snprintf(line, sizeof(line), "%s seed %llu: final test error %.2f%% (%.1f s)",
                    v.name.c_str(), static_cast<unsigned long long>(seed), err, secs);
      log << line << std::endl;
    }

    row.mean_error = sntg::mean(row.errors);
    row.std_error = row.errors.size() > 1 ? sntg::sample_stddev(row.errors) : 0.0;
    summary.push_back(row);
  }

  write_summary_csv(summary, (out_root / "summary.csv").string());
  for (const VariantSummary& row : summary) {
    char line[160];
    std::snprintf(line, sizeof(line), "%s: mean %.2f%% +- %.2f over %zu seeds", row.name.c_str(),
                  row.mean_error, row.std_error, row.errors.size());
    log << line << std::endl;
  }
  return summary;
}

void write_summary_csv(const std::vector<VariantSummary>& rows, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw sntg::DataError("write_summary_csv: cannot open " + path);
  f << "variant,seeds,mean_error,std_error,errors\n";
  char buf[64];
  for (const VariantSummary& r : rows) {
    f << r.name << "," << join_u64(r.seeds) << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.mean_error);
    f << buf << ",";
    std::snprintf(buf, sizeof(buf), "%.17g", r.std_error);
    f << buf << "," << join_doubles(r.errors) << "\n";
  }
  if (!f) throw sntg::DataError("write_summary_csv: write failed for " + path);
}

std::vector<VariantSummary> read_summary_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sntg::DataError("cannot open summary file " + path);
  std::string line;
  if (!std::getline(f, line) || line != "variant,seeds,mean_error,std_error,errors")
    throw sntg::DataError(path + " is not a summary file (unexpected header)");

  std::vector<VariantSummary> rows;
  std::size_t lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_on(line, ',');
    if (cells.size() != 5)
      throw sntg::DataError(path + ":" + std::to_string(lineno) + ": malformed summary row");
    VariantSummary r;
    r.name = cells[0];
    try {
      for (const auto& s : split_on(cells[1], ';')) r.seeds.push_back(std::stoull(s));
      r.mean_error = std::stod(cells[2]);
      r.std_error = std::stod(cells[3]);
      for (const auto& s : split_on(cells[4], ';')) r.errors.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw sntg::DataError(path + ":" + std::to_string(lineno) + ": malformed summary row");
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw sntg::DataError(path + " holds no summary rows");
  return rows;
}

namespace {

const VariantSummary& pick_row(const std::vector<VariantSummary>& rows, const std::string& name,
                               const std::string& path) {
  if (name.empty()) return rows.front();
  for (const VariantSummary& r : rows)
    if (r.name == name) return r;
  std::string names;
  for (const VariantSummary& r : rows) names += (names.empty() ? "" : ", ") + r.name;
  throw sntg::DataError(path + " has no variant '" + name + "' (available: " + names + ")");
}

}  // namespace

CompareReport compare_summaries(const std::string& path_a, const std::string& path_b,
                                const std::string& variant_a, const std::string& variant_b,
                                double alpha) {
  const auto rows_a = read_summary_csv(path_a);
  const auto rows_b = read_summary_csv(path_b);
  CompareReport rep;
  rep.a = pick_row(rows_a, variant_a, path_a);
  rep.b = pick_row(rows_b, variant_b, path_b);
  rep.alpha = alpha;
  rep.welch = sntg::welch_t_test(rep.a.errors, rep.b.errors);
  rep.significant = rep.welch.p < alpha;
  return rep;
}

void print_compare_report(const CompareReport& r, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "a: %s  n=%zu  mean %.4f%%  std %.4f", r.a.name.c_str(),
                r.a.errors.size(), r.a.mean_error, r.a.std_error);
  out << buf << "\n";
  std::snprintf(buf, sizeof(buf), "b: %s  n=%zu  mean %.4f%%  std %.4f", r.b.name.c_str(),
                r.b.errors.size(), r.b.mean_error, r.b.std_error);
  out << buf << "\n";
  std::snprintf(buf, sizeof(buf), "welch t = %.6g, df = %.6g, p = %.6g", r.welch.t, r.welch.df,
                r.welch.p);
  out << buf << "\n";
  out << "significant at alpha = " << r.alpha << ": " << (r.significant ? "yes" : "no") << "\n";
}

}  // namespace sntg_cli
