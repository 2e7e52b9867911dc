#ifndef SNTG_CHECKPOINT_HPP
#define SNTG_CHECKPOINT_HPP

#include <string>

#include "sntg/mlp.hpp"
#include "sntg/teacher.hpp"

namespace sntg {

struct Checkpoint {
  MlpModel model;
  Teacher teacher;
};

// Flat binary with a shape manifest; round-trips bit-exactly, teacher state
// included.
void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace sntg

#endif
