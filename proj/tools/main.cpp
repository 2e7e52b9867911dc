#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config_file.hpp"
#include "experiment.hpp"
#include "sntg/checkpoint.hpp"
#include "sntg/errors.hpp"
#include "sntg/trainer.hpp"

#ifndef SNTG_DEFAULT_PRESET_DIR
#define SNTG_DEFAULT_PRESET_DIR "presets"
#endif
#ifndef SNTG_DEFAULT_MNIST_DIR
#define SNTG_DEFAULT_MNIST_DIR "data/mnist"
#endif

namespace fs = std::filesystem;
using sntg_cli::Experiment;

namespace {

std::string preset_dir() {
  if (const char* env = std::getenv("SNTG_PRESET_DIR")) return env;
  return SNTG_DEFAULT_PRESET_DIR;
}

std::string mnist_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SNTG_MNIST_DIR")) return env;
  return SNTG_DEFAULT_MNIST_DIR;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  const fs::path dir(preset_dir());
  if (!fs::is_directory(dir)) return names;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".cfg")
      names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

// A run target is either a config file path or the stem of presets/<name>.cfg.
std::string resolve_experiment_path(const std::string& target) {
  if (fs::is_regular_file(target)) return target;
  const fs::path candidate = fs::path(preset_dir()) / (target + ".cfg");
  if (fs::is_regular_file(candidate)) return candidate.string();
  std::string known;
  for (const auto& name : preset_names()) known += (known.empty() ? "" : ", ") + name;
  throw sntg::ConfigError("no config file or preset named '" + target +
                          "' (presets: " + (known.empty() ? "none found" : known) + ")");
}

int cmd_run(const std::string& target, const std::string& out_flag, std::uint64_t seed,
            std::size_t repeats, bool dry_run, const std::string& mnist_flag) {
  const Experiment e = sntg_cli::load_experiment(resolve_experiment_path(target));
  const std::vector<std::uint64_t> seeds = sntg_cli::resolve_seeds(e, seed, repeats);
  const std::string out_dir = out_flag.empty() ? "runs/" + e.name : out_flag;
  if (dry_run) {
    sntg_cli::print_experiment(e, seeds, out_dir, std::cout);
    return 0;
  }
  sntg_cli::RunOptions opt;
  opt.out_dir = out_dir;
  opt.seeds = seeds;
  opt.mnist_dir = mnist_dir(mnist_flag);
  sntg_cli::run_experiment(e, opt, std::cout);
  std::cout << "summary written to " << (fs::path(out_dir) / "summary.csv").string() << "\n";
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& variant_a,
                const std::string& variant_b, double alpha) {
  const sntg_cli::CompareReport rep = sntg_cli::compare_summaries(a, b, variant_a, variant_b, alpha);
  sntg_cli::print_compare_report(rep, std::cout);
  return 0;
}

int cmd_export(const std::string& target, const std::string& checkpoint,
               const std::string& variant, std::uint64_t seed, const std::string& out,
               const std::string& mnist_flag) {
  const Experiment e = sntg_cli::load_experiment(resolve_experiment_path(target));
  const sntg_cli::VariantConfig* v = variant.empty() ? &e.variants.front() : nullptr;
  if (!v) {
    for (const auto& cand : e.variants)
      if (cand.name == variant) v = &cand;
    if (!v) throw sntg::ConfigError("experiment has no variant named '" + variant + "'");
  }
  const sntg_cli::BuiltData data = sntg_cli::build_dataset(v->data, seed, mnist_dir(mnist_flag));
  const sntg::Checkpoint ckpt = sntg::load_checkpoint(checkpoint);
  sntg::export_embeddings(ckpt.model, data.has_test ? data.test : data.train, out);
  std::cout << "embeddings written to " << out << "\n";
  return 0;
}

int cmd_list_presets() {
  const fs::path dir(preset_dir());
  if (!fs::is_directory(dir))
    throw sntg::DataError("preset directory not found: " + dir.string() +
                          " (set SNTG_PRESET_DIR to the directory holding the .cfg presets)");
  for (const auto& name : preset_names()) {
    const Experiment e = sntg_cli::load_experiment((dir / (name + ".cfg")).string());
    std::cout << name;
    if (!e.description.empty()) std::cout << "  -  " << e.description;
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semi-supervised self-ensembling trainer with teacher-graph regularization"};
  app.require_subcommand(1);

  std::string target, config_flag, out_flag, mnist_flag;
  std::uint64_t seed = 1;
  std::size_t repeats = 0;
  bool dry_run = false;

  CLI::App* run = app.add_subcommand("run", "Train an experiment preset or config file");
  run->add_option("experiment", target, "Preset name or config file path");
  run->add_option("--config", config_flag, "Config file path (alternative to the positional)");
  run->add_option("--out", out_flag, "Output directory (default runs/<experiment name>)");
  run->add_option("--seed", seed, "Base seed; repeats use consecutive seeds");
  run->add_option("--repeats", repeats, "Override the number of seeded runs");
  run->add_flag("--dry-run", dry_run, "Print the resolved config and exit");
  run->add_option("--mnist-dir", mnist_flag, "Directory holding the digit IDX files");

  std::string cmp_a, cmp_b, variant_a, variant_b;
  double alpha = 0.01;
  CLI::App* compare = app.add_subcommand("compare", "Welch t-test between two run summaries");
  compare->add_option("summary_a", cmp_a, "First summary.csv")->required();
  compare->add_option("summary_b", cmp_b, "Second summary.csv")->required();
  compare->add_option("--variant-a", variant_a, "Variant row in the first file (default: first)");
  compare->add_option("--variant-b", variant_b, "Variant row in the second file (default: first)");
  compare->add_option("--alpha", alpha, "Significance level");

  std::string ckpt_path, exp_variant, emb_out = "embeddings.csv";
  CLI::App* exp = app.add_subcommand("export-embeddings",
                                     "Project a checkpoint's hidden features to 2-D");
  exp->add_option("experiment", target, "Preset name or config file path");
  exp->add_option("--config", config_flag, "Config file path (alternative to the positional)");
  exp->add_option("--checkpoint", ckpt_path, "Model checkpoint to load")->required();
  exp->add_option("--variant", exp_variant, "Variant whose dataset to rebuild (default: first)");
  exp->add_option("--seed", seed, "Seed the dataset was built with");
  exp->add_option("--out", emb_out, "Output CSV path");
  exp->add_option("--mnist-dir", mnist_flag, "Directory holding the digit IDX files");

  CLI::App* list = app.add_subcommand("list-presets", "List shipped experiment presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed() || exp->parsed()) {
      if (!config_flag.empty() && !target.empty())
        throw sntg::ConfigError("give either a positional experiment or --config, not both");
      if (!config_flag.empty()) target = config_flag;
      if (target.empty())
        throw sntg::ConfigError("no experiment given (name a preset or pass --config)");
    }
    if (run->parsed()) return cmd_run(target, out_flag, seed, repeats, dry_run, mnist_flag);
    if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, variant_a, variant_b, alpha);
    if (exp->parsed()) return cmd_export(target, ckpt_path, exp_variant, seed, emb_out, mnist_flag);
    if (list->parsed()) return cmd_list_presets();
  } catch (const sntg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const sntg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const sntg::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
