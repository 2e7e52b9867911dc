#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "doctest.h"
#include "experiment.hpp"
#include "sntg/errors.hpp"

namespace fs = std::filesystem;
using sntg_cli::DatasetSpec;
using sntg_cli::Experiment;
using sntg_cli::VariantSummary;

namespace {

Experiment parse(const std::string& text) {
  std::istringstream in(text);
  return sntg_cli::parse_experiment(in, "test.cfg");
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kTinyBase =
    "dataset = two-moons\nn = 60\nnoise_sd = 0.05\nlabels = 6\n"
    "hidden = 8\nepochs = 3\nbatch_size = 20\nmax_lr = 0.005\n"
    "lambda1 = 1\npair_count = 5\nrampup = 1\nrampdown = 1\n";

struct TempDir {
  fs::path path;
  explicit TempDir(const char* name) : path(name) { fs::remove_all(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("build_dataset is deterministic in the seed") {
  DatasetSpec spec;
  spec.n = 100;
  spec.labels = 8;
  const auto a = sntg_cli::build_dataset(spec, 5, "");
  const auto b = sntg_cli::build_dataset(spec, 5, "");
  const auto c = sntg_cli::build_dataset(spec, 6, "");
  CHECK(a.train.features == b.train.features);
  CHECK(a.train.labels == b.train.labels);
  CHECK(a.train.labeled_mask == b.train.labeled_mask);
  CHECK_FALSE(a.train.features == c.train.features);
  CHECK_FALSE(a.has_test);
  CHECK(a.train.labeled_count() == 8);
}

TEST_CASE("build_dataset corrupts before splitting") {
  DatasetSpec spec;
  spec.n = 200;
  spec.labels = 10;
  spec.corrupt_fraction = 0.5;
  const auto d = sntg_cli::build_dataset(spec, 3, "");
  CHECK(d.train.labeled_count() == 10);
  REQUIRE(d.train.original_labels.size() == 200);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < 200; ++i)
    if (d.train.labels[i] != d.train.original_labels[i]) ++changed;
  CHECK(changed > 0);
  CHECK(changed <= 100);
}

TEST_CASE("build_dataset keeps every label when asked") {
  DatasetSpec spec;
  spec.n = 80;
  spec.labels = 0;
  const auto d = sntg_cli::build_dataset(spec, 1, "");
  CHECK(d.train.labeled_count() == 80);
}

#ifdef SNTG_TEST_DATA_DIR
TEST_CASE("build_dataset carves and standardizes the digit set") {
  DatasetSpec spec;
  spec.kind = DatasetSpec::Kind::Mnist;
  spec.mnist_train = 8000;
  spec.labels = 100;
  const std::string dir = std::string(SNTG_TEST_DATA_DIR) + "/mnist";
  const auto d = sntg_cli::build_dataset(spec, 2, dir);
  REQUIRE(d.has_test);
  CHECK(d.train.size() == 8000);
  CHECK(d.test.size() == 2000);
  CHECK(d.train.dim() == 784);
  CHECK(d.train.labeled_count() == 100);
  CHECK(d.test.labeled_count() == 2000);
  // standardization statistics come from the train carve
  double s = 0.0;
  for (std::size_t i = 0; i < d.train.features.rows(); ++i)
    for (std::size_t j = 0; j < d.train.features.cols(); ++j) s += d.train.features(i, j);
  CHECK(std::abs(s / (8000.0 * 784.0)) < 1e-9);
}
#endif

TEST_CASE("missing digit files explain how to fetch them") {
  DatasetSpec spec;
  spec.kind = DatasetSpec::Kind::Mnist;
  try {
    sntg_cli::build_dataset(spec, 1, "no_such_dir_xyz");
    FAIL("expected DataError");
  } catch (const sntg::DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("mnist-10k-images-idx3-ubyte") != std::string::npos);
    CHECK(msg.find("SNTG_MNIST_DIR") != std::string::npos);
  }
}

TEST_CASE("summary csv round trips exactly") {
  TempDir tmp("test_summary_tmp");
  fs::create_directories(tmp.path);
  const std::string path = (tmp.path / "summary.csv").string();

  std::vector<VariantSummary> rows(2);
  rows[0].name = "alpha";
  rows[0].seeds = {1, 2, 3};
  rows[0].errors = {0.1, 0.2, 1.0 / 3.0};
  rows[0].mean_error = (0.1 + 0.2 + 1.0 / 3.0) / 3.0;
  rows[0].std_error = 0.33;
  rows[1].name = "beta";
  rows[1].seeds = {9};
  rows[1].errors = {51.25};
  rows[1].mean_error = 51.25;
  rows[1].std_error = 0.0;
  sntg_cli::write_summary_csv(rows, path);

  const auto back = sntg_cli::read_summary_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].name == "alpha");
  CHECK(back[0].seeds == rows[0].seeds);
  CHECK(back[0].errors == rows[0].errors);  // %.17g round trip is exact
  CHECK(back[0].mean_error == rows[0].mean_error);
  CHECK(back[1].errors == rows[1].errors);
}

TEST_CASE("summary csv rejects unrelated files") {
  TempDir tmp("test_summary_bad_tmp");
  fs::create_directories(tmp.path);
  const std::string path = (tmp.path / "bad.csv").string();
  CHECK_THROWS_AS(sntg_cli::read_summary_csv("missing_dir/none.csv"), sntg::DataError);
  {
    std::ofstream f(path);
    f << "a,b\n1,2\n";
  }
  CHECK_THROWS_AS(sntg_cli::read_summary_csv(path), sntg::DataError);
  {
    std::ofstream f(path);
    f << "variant,seeds,mean_error,std_error,errors\nonly,three,cells\n";
  }
  CHECK_THROWS_AS(sntg_cli::read_summary_csv(path), sntg::DataError);
  {
    std::ofstream f(path);
    f << "variant,seeds,mean_error,std_error,errors\nv,1;2,abc,0,1;2\n";
  }
  CHECK_THROWS_AS(sntg_cli::read_summary_csv(path), sntg::DataError);
}

TEST_CASE("comparing a run against itself is not significant") {
  TempDir tmp("test_compare_tmp");
  fs::create_directories(tmp.path);
  const std::string path = (tmp.path / "s.csv").string();
  VariantSummary row;
  row.name = "v";
  row.seeds = {1, 2, 3, 4, 5};
  row.errors = {1.0, 1.5, 0.5, 1.2, 0.9};
  sntg_cli::write_summary_csv({row}, path);

  const auto rep = sntg_cli::compare_summaries(path, path, "", "", 0.01);
  CHECK(rep.welch.t == 0.0);
  CHECK(rep.welch.p == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(rep.significant);

  std::ostringstream out;
  sntg_cli::print_compare_report(rep, out);
  CHECK(out.str().find("significant at alpha = 0.01: no") != std::string::npos);
  CHECK(out.str().find("mean") != std::string::npos);
  CHECK(out.str().find("std") != std::string::npos);
}

TEST_CASE("clearly separated samples are flagged significant") {
  TempDir tmp("test_compare_sig_tmp");
  fs::create_directories(tmp.path);
  const std::string pa = (tmp.path / "a.csv").string();
  const std::string pb = (tmp.path / "b.csv").string();
  VariantSummary a, b;
  a.name = "low";
  a.seeds = b.seeds = {1, 2, 3, 4, 5};
  a.errors = {1.0, 1.1, 0.9, 1.05, 0.95};
  b.name = "high";
  b.errors = {8.0, 8.2, 7.9, 8.1, 8.05};
  sntg_cli::write_summary_csv({a}, pa);
  sntg_cli::write_summary_csv({b}, pb);
  const auto rep = sntg_cli::compare_summaries(pa, pb, "low", "high", 0.01);
  CHECK(rep.welch.p < 0.01);
  CHECK(rep.significant);
}

TEST_CASE("compare names the missing variant") {
  TempDir tmp("test_compare_missing_tmp");
  fs::create_directories(tmp.path);
  const std::string path = (tmp.path / "s.csv").string();
  VariantSummary row;
  row.name = "v";
  row.seeds = {1, 2};
  row.errors = {1.0, 2.0};
  sntg_cli::write_summary_csv({row}, path);
  try {
    sntg_cli::compare_summaries(path, path, "w", "", 0.01);
    FAIL("expected DataError");
  } catch (const sntg::DataError& e) {
    CHECK(std::string(e.what()).find("'w'") != std::string::npos);
    CHECK(std::string(e.what()).find("v") != std::string::npos);
  }
}

TEST_CASE("resolve_seeds prefers the explicit list") {
  Experiment e = parse("seeds = 7, 8\nepochs = 4\nrampup = 1\nrampdown = 1\n");
  CHECK(sntg_cli::resolve_seeds(e, 1, 0) == std::vector<std::uint64_t>{7, 8});
  // an explicit --repeats overrides the list with consecutive seeds
  CHECK(sntg_cli::resolve_seeds(e, 10, 3) == std::vector<std::uint64_t>{10, 11, 12});
  Experiment plain = parse("repeats = 4\nepochs = 4\nrampup = 1\nrampdown = 1\n");
  CHECK(sntg_cli::resolve_seeds(plain, 2, 0) == std::vector<std::uint64_t>{2, 3, 4, 5});
}

TEST_CASE("run_experiment writes the full artifact tree") {
  TempDir tmp("test_run_tmp");
  const Experiment e = parse(kTinyBase + "[a]\nuse_sntg = false\n[b]\ngraph = frozen\nfrozen_from = a\n");
  sntg_cli::RunOptions opt;
  opt.out_dir = tmp.path.string();
  opt.seeds = {1, 2};

  std::ostringstream log;
  const auto summary = sntg_cli::run_experiment(e, opt, log);
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].name == "a");
  CHECK(summary[1].name == "b");
  CHECK(summary[0].errors.size() == 2);
  CHECK(log.str().find("seed 1") != std::string::npos);

  for (const char* variant : {"a", "b"})
    for (const char* seed : {"seed-1", "seed-2"}) {
      const fs::path dir = tmp.path / variant / seed;
      for (const char* file :
           {"metrics.csv", "timings.csv", "model.ckpt", "embeddings.csv", "plot.svg"})
        CHECK(fs::is_regular_file(dir / file));
    }

  const auto back = sntg_cli::read_summary_csv((tmp.path / "summary.csv").string());
  REQUIRE(back.size() == 2);
  CHECK(back[0].errors == summary[0].errors);
  CHECK(back[1].mean_error == summary[1].mean_error);

  // embeddings cover the evaluation set (train, for synthetic data)
  const std::string emb = slurp((tmp.path / "a" / "seed-1" / "embeddings.csv").string());
  CHECK(emb.rfind("index,label,pc1,pc2", 0) == 0);
  std::size_t lines = 0;
  for (char ch : emb)
    if (ch == '\n') ++lines;
  CHECK(lines == 61);
}

TEST_CASE("rerunning an experiment overwrites with identical metrics") {
  TempDir tmp("test_rerun_tmp");
  const Experiment e = parse(kTinyBase);
  sntg_cli::RunOptions opt;
  opt.out_dir = tmp.path.string();
  opt.seeds = {4};
  std::ostringstream log;
  sntg_cli::run_experiment(e, opt, log);
  const std::string first = slurp((tmp.path / "default" / "seed-4" / "metrics.csv").string());
  const std::string first_summary = slurp((tmp.path / "summary.csv").string());
  sntg_cli::run_experiment(e, opt, log);
  CHECK(slurp((tmp.path / "default" / "seed-4" / "metrics.csv").string()) == first);
  CHECK(slurp((tmp.path / "summary.csv").string()) == first_summary);
}

TEST_CASE("print_experiment resolves the run plan") {
  const Experiment e = parse("name = demo\n" + kTinyBase + "[a]\n[b]\nlambda1 = 3\n");
  std::ostringstream out;
  sntg_cli::print_experiment(e, {5, 6}, "outdir", out);
  const std::string s = out.str();
  CHECK(s.find("demo") != std::string::npos);
  CHECK(s.find("[a]") != std::string::npos);
  CHECK(s.find("[b]") != std::string::npos);
  CHECK(s.find("lambda1 = 3") != std::string::npos);
  CHECK(s.find("seeds: 5 6") != std::string::npos);
  CHECK(s.find("outdir") != std::string::npos);
}
