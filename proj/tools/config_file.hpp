#ifndef SNTG_CLI_CONFIG_FILE_HPP
#define SNTG_CLI_CONFIG_FILE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sntg/train_config.hpp"

namespace sntg_cli {

struct DatasetSpec {
  enum class Kind { TwoMoons, FourSpins, Mnist };

  Kind kind = Kind::TwoMoons;
  std::size_t n = 6000;
  double noise_sd = 0.06;
  std::size_t labels = 12;  // 0 keeps every label
  bool balanced = true;
  double corrupt_fraction = 0.0;
  std::size_t mnist_train = 8000;  // leading rows of the bundled subset; the rest is the test split
};

// One experimental arm: a dataset recipe plus a full training config.
struct VariantConfig {
  std::string name;
  DatasetSpec data;
  sntg::TrainConfig train;
  // Names an earlier variant whose trained model supplies the frozen
  // prediction graph; requires graph = frozen.
  std::string frozen_from;
};

// A config file: file-scope keys set experiment metadata and the base
// dataset/training values; each [section] clones the base into a variant and
// applies its overrides.
struct Experiment {
  std::string name = "experiment";
  std::string description;
  std::size_t repeats = 5;
  std::vector<std::uint64_t> seeds;  // optional explicit list; overrides --seed/--repeats
  std::vector<VariantConfig> variants;
};

Experiment parse_experiment(std::istream& in, const std::string& origin);
Experiment load_experiment(const std::string& path);

// Resolved-config rendering used by --dry-run.
void print_experiment(const Experiment& e, const std::vector<std::uint64_t>& seeds,
                      const std::string& out_dir, std::ostream& out);

std::string dataset_kind_name(DatasetSpec::Kind kind);
std::string teacher_name(sntg::TeacherVariant v);
std::string graph_mode_name(sntg::GraphMode m);

}  // namespace sntg_cli

#endif
