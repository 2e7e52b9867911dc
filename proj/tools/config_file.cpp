#include "config_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sntg/errors.hpp"

namespace sntg_cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& msg) {
  throw sntg::ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& origin, std::size_t line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs a number, got '" + value + "'");
  }
}

std::uint64_t parse_u64(const std::string& origin, std::size_t line, const std::string& key,
                        const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    fail(origin, line, "key '" + key + "' needs a nonnegative integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& origin, std::size_t line, const std::string& key,
                const std::string& value) {
  std::string v = value;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(origin, line, "key '" + key + "' needs a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Applies one dataset-or-training key; returns false when the key is not in
// either scope so the caller can try (or reject) experiment-scope keys.
bool apply_variant_key(VariantConfig& v, const std::string& key, const std::string& value,
                       const std::string& origin, std::size_t line) {
  DatasetSpec& d = v.data;
  sntg::TrainConfig& t = v.train;

  if (key == "dataset") {
    if (value == "two-moons")
      d.kind = DatasetSpec::Kind::TwoMoons;
    else if (value == "four-spins")
      d.kind = DatasetSpec::Kind::FourSpins;
    else if (value == "mnist")
      d.kind = DatasetSpec::Kind::Mnist;
    else
      fail(origin, line, "dataset must be two-moons, four-spins, or mnist, got '" + value + "'");
  } else if (key == "n") {
    d.n = parse_u64(origin, line, key, value);
  } else if (key == "noise_sd") {
    d.noise_sd = parse_double(origin, line, key, value);
  } else if (key == "labels") {
    d.labels = value == "all" ? 0 : parse_u64(origin, line, key, value);
  } else if (key == "balanced") {
    d.balanced = parse_bool(origin, line, key, value);
  } else if (key == "corrupt_fraction") {
    d.corrupt_fraction = parse_double(origin, line, key, value);
  } else if (key == "mnist_train") {
    d.mnist_train = parse_u64(origin, line, key, value);
  } else if (key == "teacher") {
    if (value == "pi")
      t.teacher = sntg::TeacherVariant::SharedNoisy;
    else if (value == "tempens")
      t.teacher = sntg::TeacherVariant::TemporalEnsemble;
    else if (value == "mean-teacher")
      t.teacher = sntg::TeacherVariant::MeanTeacher;
    else
      fail(origin, line, "teacher must be pi, tempens, or mean-teacher, got '" + value + "'");
  } else if (key == "hidden") {
    const auto items = split_list(value);
    if (items.empty()) fail(origin, line, "hidden needs at least one width");
    t.hidden_sizes.clear();
    for (const auto& item : items)
      t.hidden_sizes.push_back(parse_u64(origin, line, key, item));
  } else if (key == "leaky_slope") {
    t.leaky_slope = parse_double(origin, line, key, value);
  } else if (key == "epochs") {
    t.epochs = parse_u64(origin, line, key, value);
  } else if (key == "batch_size") {
    t.batch_size = parse_u64(origin, line, key, value);
  } else if (key == "max_lr") {
    t.max_lr = parse_double(origin, line, key, value);
  } else if (key == "lambda1") {
    t.lambda1 = parse_double(origin, line, key, value);
  } else if (key == "k_ratio") {
    t.k_ratio = parse_double(origin, line, key, value);
  } else if (key == "use_consistency") {
    t.use_consistency = parse_bool(origin, line, key, value);
  } else if (key == "use_sntg") {
    t.use_sntg = parse_bool(origin, line, key, value);
  } else if (key == "margin") {
    t.margin = parse_double(origin, line, key, value);
  } else if (key == "pair_count") {
    t.pair_count = parse_u64(origin, line, key, value);
  } else if (key == "rampup") {
    t.rampup_length = parse_u64(origin, line, key, value);
  } else if (key == "rampdown") {
    t.rampdown_length = parse_u64(origin, line, key, value);
  } else if (key == "input_noise") {
    t.perturbation.input_noise_sd = parse_double(origin, line, key, value);
  } else if (key == "layer_noise") {
    t.perturbation.layer_noise_sd = parse_double(origin, line, key, value);
  } else if (key == "dropout") {
    t.perturbation.dropout_rate = parse_double(origin, line, key, value);
  } else if (key == "noise_enabled") {
    t.perturbation.enabled = parse_bool(origin, line, key, value);
  } else if (key == "entropy_weight") {
    t.entropy_weight = parse_double(origin, line, key, value);
  } else if (key == "entropy_ramped") {
    t.entropy_ramped = parse_bool(origin, line, key, value);
  } else if (key == "tempens_alpha") {
    t.tempens_alpha = parse_double(origin, line, key, value);
  } else if (key == "mt_alpha_rampup") {
    t.mt_alpha_rampup = parse_double(origin, line, key, value);
  } else if (key == "mt_alpha_final") {
    t.mt_alpha_final = parse_double(origin, line, key, value);
  } else if (key == "graph") {
    if (value == "teacher")
      t.graph_mode = sntg::GraphMode::TeacherGraph;
    else if (value == "soft-kl")
      t.graph_mode = sntg::GraphMode::TeacherSoftKl;
    else if (value == "knn")
      t.graph_mode = sntg::GraphMode::FixedKnnInput;
    else if (value == "frozen")
      t.graph_mode = sntg::GraphMode::FixedFrozenPredictions;
    else
      fail(origin, line, "graph must be teacher, soft-kl, knn, or frozen, got '" + value + "'");
  } else if (key == "knn_k") {
    t.knn_k = parse_u64(origin, line, key, value);
  } else if (key == "kl_threshold") {
    t.kl_threshold = parse_double(origin, line, key, value);
  } else if (key == "consistency_div_k") {
    t.consistency_div_k = parse_bool(origin, line, key, value);
  } else if (key == "eval_every") {
    t.eval_every = parse_u64(origin, line, key, value);
  } else if (key == "frozen_from") {
    v.frozen_from = value;
  } else {
    return false;
  }
  return true;
}

}  // namespace

Experiment parse_experiment(std::istream& in, const std::string& origin) {
  Experiment e;
  VariantConfig base;
  base.name = "default";
  VariantConfig* current = nullptr;  // null while still in file scope
  std::vector<std::string> seen_names;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "unterminated section header");
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) fail(origin, line, "empty section name");
      if (std::find(seen_names.begin(), seen_names.end(), name) != seen_names.end())
        fail(origin, line, "duplicate variant '" + name + "'");
      seen_names.push_back(name);
      VariantConfig v = base;
      v.name = name;
      v.frozen_from.clear();
      e.variants.push_back(v);
      current = &e.variants.back();
      continue;
    }

    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "missing key before '='");
    if (value.empty()) fail(origin, line, "key '" + key + "' has no value");

    if (current != nullptr) {
      if (!apply_variant_key(*current, key, value, origin, line)) {
        if (key == "name" || key == "description" || key == "repeats" || key == "seeds")
          fail(origin, line, "key '" + key + "' is file-scope and cannot appear in a section");
        fail(origin, line, "unknown key '" + key + "'");
      }
      continue;
    }

    if (key == "name") {
      e.name = value;
    } else if (key == "description") {
      e.description = value;
    } else if (key == "repeats") {
      e.repeats = parse_u64(origin, line, key, value);
      if (e.repeats == 0) fail(origin, line, "repeats must be positive");
    } else if (key == "seeds") {
      e.seeds.clear();
      for (const auto& item : split_list(value))
        e.seeds.push_back(parse_u64(origin, line, key, item));
      if (e.seeds.empty()) fail(origin, line, "seeds needs at least one entry");
    } else if (!apply_variant_key(base, key, value, origin, line)) {
      fail(origin, line, "unknown key '" + key + "'");
    }
  }

  if (e.variants.empty()) e.variants.push_back(base);

  // frozen-graph arms must point at an arm that runs before them
  for (std::size_t i = 0; i < e.variants.size(); ++i) {
    const VariantConfig& v = e.variants[i];
    const bool frozen = v.train.graph_mode == sntg::GraphMode::FixedFrozenPredictions;
    if (frozen && v.frozen_from.empty())
      throw sntg::ConfigError(origin + ": variant '" + v.name +
                              "' uses graph = frozen but names no frozen_from variant");
    if (!frozen && !v.frozen_from.empty())
      throw sntg::ConfigError(origin + ": variant '" + v.name +
                              "' sets frozen_from but graph is not frozen");
    if (frozen) {
      bool found = false;
      for (std::size_t j = 0; j < i; ++j)
        if (e.variants[j].name == v.frozen_from) found = true;
      if (!found)
        throw sntg::ConfigError(origin + ": variant '" + v.name + "' needs frozen_from '" +
                                v.frozen_from + "' to be an earlier variant in the same file");
    }
    v.train.validate();
  }
  return e;
}

Experiment load_experiment(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw sntg::ConfigError("cannot open config file " + path);
  return parse_experiment(f, path);
}

std::string dataset_kind_name(DatasetSpec::Kind kind) {
  switch (kind) {
    case DatasetSpec::Kind::TwoMoons:
      return "two-moons";
    case DatasetSpec::Kind::FourSpins:
      return "four-spins";
    case DatasetSpec::Kind::Mnist:
      return "mnist";
  }
  return "?";
}

std::string teacher_name(sntg::TeacherVariant v) {
  switch (v) {
    case sntg::TeacherVariant::SharedNoisy:
      return "pi";
    case sntg::TeacherVariant::TemporalEnsemble:
      return "tempens";
    case sntg::TeacherVariant::MeanTeacher:
      return "mean-teacher";
  }
  return "?";
}

std::string graph_mode_name(sntg::GraphMode m) {
  switch (m) {
    case sntg::GraphMode::TeacherGraph:
      return "teacher";
    case sntg::GraphMode::TeacherSoftKl:
      return "soft-kl";
    case sntg::GraphMode::FixedKnnInput:
      return "knn";
    case sntg::GraphMode::FixedFrozenPredictions:
      return "frozen";
  }
  return "?";
}

void print_experiment(const Experiment& e, const std::vector<std::uint64_t>& seeds,
                      const std::string& out_dir, std::ostream& out) {
  out << "experiment " << e.name << "\n";
  if (!e.description.empty()) out << "description: " << e.description << "\n";
  out << "out: " << out_dir << "\n";
  out << "seeds:";
  for (std::uint64_t s : seeds) out << " " << s;
  out << "\n";
  for (const VariantConfig& v : e.variants) {
    const DatasetSpec& d = v.data;
    const sntg::TrainConfig& t = v.train;
    out << "\n[" << v.name << "]\n";
    out << "  dataset = " << dataset_kind_name(d.kind) << "\n";
    if (d.kind == DatasetSpec::Kind::Mnist) {
      out << "  mnist_train = " << d.mnist_train << "\n";
    } else {
      out << "  n = " << d.n << "\n";
      out << "  noise_sd = " << d.noise_sd << "\n";
    }
    if (d.labels == 0)
      out << "  labels = all\n";
    else
      out << "  labels = " << d.labels << " (" << (d.balanced ? "balanced" : "unbalanced") << ")\n";
    if (d.corrupt_fraction > 0.0) out << "  corrupt_fraction = " << d.corrupt_fraction << "\n";

    out << "  teacher = " << teacher_name(t.teacher) << "\n";
    out << "  hidden =";
    for (std::size_t h : t.hidden_sizes) out << " " << h;
    out << "\n";
    out << "  epochs = " << t.epochs << ", batch_size = " << t.batch_size
        << ", max_lr = " << t.max_lr << "\n";
    out << "  rampup = " << t.rampup_length << ", rampdown = " << t.rampdown_length << "\n";
    out << "  lambda1 = " << t.lambda1 << ", k_ratio = " << t.k_ratio
        << " (lambda2 = " << t.lambda2() << ")\n";
    out << "  use_consistency = " << (t.use_consistency ? "true" : "false")
        << ", use_sntg = " << (t.use_sntg ? "true" : "false") << "\n";
    out << "  margin = " << t.margin << ", pair_count = " << t.pair_count << "\n";
    out << "  graph = " << graph_mode_name(t.graph_mode);
    if (t.graph_mode == sntg::GraphMode::FixedKnnInput) out << ", knn_k = " << t.knn_k;
    if (t.graph_mode == sntg::GraphMode::TeacherSoftKl)
      out << ", kl_threshold = " << t.kl_threshold;
    if (!v.frozen_from.empty()) out << ", frozen_from = " << v.frozen_from;
    out << "\n";
    out << "  noise: input = " << t.perturbation.input_noise_sd
        << ", layer = " << t.perturbation.layer_noise_sd
        << ", dropout = " << t.perturbation.dropout_rate
        << (t.perturbation.enabled ? "" : " (disabled)") << "\n";
    if (t.entropy_weight > 0.0)
      out << "  entropy_weight = " << t.entropy_weight
          << (t.entropy_ramped ? " (ramped)" : " (constant)") << "\n";
    if (t.teacher == sntg::TeacherVariant::TemporalEnsemble)
      out << "  tempens_alpha = " << t.tempens_alpha << "\n";
    if (t.teacher == sntg::TeacherVariant::MeanTeacher)
      out << "  mt_alpha = " << t.mt_alpha_rampup << " -> " << t.mt_alpha_final << "\n";
  }
}

}  // namespace sntg_cli
