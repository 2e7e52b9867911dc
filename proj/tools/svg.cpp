#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "sntg/errors.hpp"
#include "sntg/graph.hpp"

namespace sntg_cli {

namespace {

constexpr std::array<const char*, 10> kPalette = {
    "#e24a33", "#348abd", "#8eba42", "#988ed5", "#fbc15e",
    "#56b4e9", "#ffb5b8", "#777777", "#17becf", "#bcbd22"};

const char* class_color(int label) {
  return kPalette[static_cast<std::size_t>(label) % kPalette.size()];
}

struct Box {
  double xmin, xmax, ymin, ymax;
};

Box padded_bounds(const sntg::Matrix& x) {
  Box b{x(0, 0), x(0, 0), x(0, 1), x(0, 1)};
  for (std::size_t i = 0; i < x.rows(); ++i) {
    b.xmin = std::min(b.xmin, x(i, 0));
    b.xmax = std::max(b.xmax, x(i, 0));
    b.ymin = std::min(b.ymin, x(i, 1));
    b.ymax = std::max(b.ymax, x(i, 1));
  }
  const double px = std::max(1e-9, 0.08 * (b.xmax - b.xmin));
  const double py = std::max(1e-9, 0.08 * (b.ymax - b.ymin));
  return {b.xmin - px, b.xmax + px, b.ymin - py, b.ymax + py};
}

}  // namespace

void write_decision_plot(const sntg::MlpModel& model, const sntg::Dataset& ds,
                         const std::string& path) {
  if (ds.dim() != 2) throw std::invalid_argument("write_decision_plot: needs 2-D features");
  if (ds.size() == 0) throw std::invalid_argument("write_decision_plot: empty dataset");

  const double width = 640.0, height = 520.0;
  const Box b = padded_bounds(ds.features);
  const double sx = width / (b.xmax - b.xmin);
  const double sy = height / (b.ymax - b.ymin);
  const auto px = [&](double x) { return (x - b.xmin) * sx; };
  const auto py = [&](double y) { return height - (y - b.ymin) * sy; };

  std::ofstream f(path);
  if (!f) throw sntg::DataError("write_decision_plot: cannot open " + path);
  char buf[256];
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"520\" "
       "viewBox=\"0 0 640 520\">\n"
       "<rect width=\"640\" height=\"520\" fill=\"#ffffff\"/>\n";

  // decision regions: predict on a grid, merge same-class runs per row
  const std::size_t cols = 200, rows = 160;
  const double cw = width / static_cast<double>(cols);
  const double ch = height / static_cast<double>(rows);
  f << "<g fill-opacity=\"0.25\" stroke=\"none\">\n";
  sntg::Matrix grid_row(cols, 2);
  for (std::size_t r = 0; r < rows; ++r) {
    const double yc = b.ymax - (static_cast<double>(r) + 0.5) * (b.ymax - b.ymin) /
                                   static_cast<double>(rows);
    for (std::size_t c = 0; c < cols; ++c) {
      grid_row(c, 0) = b.xmin + (static_cast<double>(c) + 0.5) * (b.xmax - b.xmin) /
                                    static_cast<double>(cols);
      grid_row(c, 1) = yc;
    }
    const std::vector<int> pred = sntg::hard_targets(sntg::forward(model, grid_row).probs);
    std::size_t run_start = 0;
    for (std::size_t c = 1; c <= cols; ++c) {
      if (c == cols || pred[c] != pred[run_start]) {
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"%s\"/>\n",
                      static_cast<double>(run_start) * cw, static_cast<double>(r) * ch,
                      static_cast<double>(c - run_start) * cw, ch, class_color(pred[run_start]));
        f << buf;
        run_start = c;
      }
    }
  }
  f << "</g>\n";

  // scatter colored by prediction; labeled points get a dark ring
  const std::vector<int> pred = sntg::hard_targets(sntg::forward(model, ds.features).probs);
  f << "<g stroke=\"none\">\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.labeled_mask[i]) continue;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.2\" fill=\"%s\"/>\n",
                  px(ds.features(i, 0)), py(ds.features(i, 1)), class_color(pred[i]));
    f << buf;
  }
  f << "</g>\n<g stroke=\"#111111\" stroke-width=\"1.4\">\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds.labeled_mask[i]) continue;
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4.5\" fill=\"%s\"/>\n",
                  px(ds.features(i, 0)), py(ds.features(i, 1)), class_color(pred[i]));
    f << buf;
  }
  f << "</g>\n</svg>\n";
  if (!f) throw sntg::DataError("write_decision_plot: write failed for " + path);
}

}  // namespace sntg_cli
