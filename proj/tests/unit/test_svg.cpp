#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "sntg/mlp.hpp"
#include "sntg/rng.hpp"
#include "sntg/synthetic.hpp"
#include "svg.hpp"

namespace {

std::string temp_svg_path(const char* tag) {
  std::string p = "test_plot_";
  p += tag;
  p += ".svg";
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// Minimal well-formedness pass over the markup the plotter emits: tags
// balance, quotes pair up inside tags, and no markup characters appear loose
// in text content.
bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '>') return false;
    if (ch == '&') return false;  // the plotter never emits entities
    if (ch != '<') {
      ++i;
      continue;
    }
    const std::size_t end = text.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(i + 1, end - i - 1);
    if (tag.empty()) return false;
    std::size_t quotes = 0;
    for (char t : tag) {
      if (t == '"') ++quotes;
      if (t == '<') return false;
    }
    if (quotes % 2 != 0) return false;
    if (tag.front() == '?') {
      if (tag.back() != '?') return false;
    } else if (tag.front() == '/') {
      if (stack.empty()) return false;
      const std::string name = tag.substr(1);
      if (stack.back() != name) return false;
      stack.pop_back();
    } else if (tag.back() != '/') {
      const std::size_t sp = tag.find_first_of(" \t\n");
      stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
    }
    i = end + 1;
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("decision plot is well formed and renders every point") {
  sntg::Rng rng(404);
  sntg::Rng gen = rng.child(1);
  sntg::Dataset ds = sntg::gen_two_moons(80, 0.05, gen);
  sntg::Rng split = rng.child(2);
  ds = sntg::split_labeled(ds, 8, split);
  sntg::Rng init = rng.child(3);
  const sntg::MlpModel model = sntg::make_mlp(2, {16, 16}, 2, 0.1, init);

  const std::string path = temp_svg_path("moons");
  sntg_cli::write_decision_plot(model, ds, path);
  const std::string svg = slurp(path);
  std::remove(path.c_str());

  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg ") != std::string::npos);
  CHECK(svg.find("xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(well_formed_xml(svg));
  // one circle per dataset row, labeled rows in the ringed group
  CHECK(count_occurrences(svg, "<circle ") == ds.size());
  CHECK(count_occurrences(svg, "r=\"4.5\"") == 8);
  CHECK(count_occurrences(svg, "r=\"2.2\"") == ds.size() - 8);
  // decision regions present
  CHECK(count_occurrences(svg, "<rect ") >= 160);
}

TEST_CASE("plot rejects non planar data") {
  sntg::Dataset ds;
  ds.features = sntg::Matrix(4, 3);
  ds.labels = {0, 1, 0, 1};
  ds.labeled_mask = {1, 1, 1, 1};
  ds.num_classes = 2;
  sntg::Rng init(1);
  const sntg::MlpModel model = sntg::make_mlp(3, {4}, 2, 0.1, init);
  CHECK_THROWS_AS(sntg_cli::write_decision_plot(model, ds, temp_svg_path("bad")),
                  std::invalid_argument);
}
