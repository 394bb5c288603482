#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tcgan/tensor.hpp"

namespace tcgan {

struct AdamState {
  double learning_rate = 2e-4;
  double beta1 = 0.0;
  double beta2 = 0.99;
  double epsilon = 1e-8;
  long step_count = 0;
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
};

AdamState make_adam_state(std::span<const Tensor> params, double learning_rate,
                          double beta1, double beta2, double epsilon = 1e-8);

// Bias-corrected Adam update in place, reading gradients from the params'
// grad slots (missing grad slots count as zero). Increments step_count.
void adam_step(std::span<Tensor> params, AdamState& state);

}  // namespace tcgan
