#ifndef SNTG_CLI_SVG_HPP
#define SNTG_CLI_SVG_HPP

#include <string>

#include "sntg/dataset.hpp"
#include "sntg/mlp.hpp"

namespace sntg_cli {

// 2-D scatter colored by the model's noise-free prediction, labeled points
// ringed, with decision regions painted from a grid forward pass. Only
// defined for 2-D feature spaces.
void write_decision_plot(const sntg::MlpModel& model, const sntg::Dataset& ds,
                         const std::string& path);

}  // namespace sntg_cli

#endif
