#ifndef SNTG_CLI_EXPERIMENT_HPP
#define SNTG_CLI_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "sntg/dataset.hpp"
#include "sntg/stats.hpp"

namespace sntg_cli {

struct BuiltData {
  sntg::Dataset train;
  sntg::Dataset test;
  bool has_test = false;
};

// Materializes a dataset recipe; the same (spec, seed) pair always yields
// bit-identical data. MNIST reads the bundled IDX pair from `mnist_dir`,
// carves spec.mnist_train leading rows for training, and standardizes both
// splits with the training statistics.
BuiltData build_dataset(const DatasetSpec& spec, std::uint64_t seed, const std::string& mnist_dir);

struct VariantSummary {
  std::string name;
  std::vector<std::uint64_t> seeds;
  std::vector<double> errors;  // final test error (%) per seed
  double mean_error = 0.0;
  double std_error = 0.0;
};

struct RunOptions {
  std::string out_dir;
  std::vector<std::uint64_t> seeds;
  std::string mnist_dir;
};

// Trains every variant for every seed, writes per-run artifacts under
// out_dir/<variant>/seed-<seed>/ and a summary.csv at the top; returns the
// summary rows in file order. `log` receives one progress line per run.
std::vector<VariantSummary> run_experiment(const Experiment& e, const RunOptions& opt,
                                           std::ostream& log);

void write_summary_csv(const std::vector<VariantSummary>& rows, const std::string& path);
std::vector<VariantSummary> read_summary_csv(const std::string& path);

struct CompareReport {
  VariantSummary a, b;
  sntg::WelchResult welch;
  double alpha = 0.01;
  bool significant = false;
};

// Welch's two-sided t-test between one variant row of each summary file.
// Empty variant names select the first row.
CompareReport compare_summaries(const std::string& path_a, const std::string& path_b,
                                const std::string& variant_a, const std::string& variant_b,
                                double alpha);
void print_compare_report(const CompareReport& r, std::ostream& out);

// List of seeds an experiment will run: the explicit config list when given,
// else repeats consecutive seeds from base_seed.
std::vector<std::uint64_t> resolve_seeds(const Experiment& e, std::uint64_t base_seed,
                                         std::size_t repeats_override);

}  // namespace sntg_cli

#endif
