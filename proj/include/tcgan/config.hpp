#pragma once

#include <cstdint>
#include <string>

#include "tcgan/data.hpp"
#include "tcgan/nets.hpp"
#include "tcgan/objective.hpp"
#include "tcgan/schedule.hpp"

namespace tcgan {

// Which lambda source drives the generator injection and the loss weighting.
enum class Mode {
  unconditional,
  conditional,
  transitional,
  no_transition,
  transition_g_only,
  transition_loss_only,
};

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);
std::string formulation_name(Formulation f);
Formulation formulation_from_name(const std::string& name);
std::string layout_name(Layout layout);
Layout layout_from_name(const std::string& name);

struct TrainingConfig {
  Mode mode = Mode::transitional;
  Formulation formulation = Formulation::additive;
  TransitionSchedule schedule;       // t_start, t_end, t_max, clip_max
  DatasetSpec dataset;               // seed comes from the master seed
  std::size_t subset_classes = 0;    // 0 = keep all
  std::size_t subset_per_class = 0;  // 0 = keep all
  ArchConfig arch;                   // num_classes/data_dim follow the dataset
  double learning_rate = 2e-4;
  double beta1 = 0.0;
  double beta2 = 0.99;
  std::size_t batch_size = 32;
  std::size_t d_steps_per_g_step = 1;
  double r1_weight = 0.1;
  long eval_every = 500;
  long sample_dump_every = 0;        // 0 = no dumps
  std::size_t n_fake_per_class = 0;  // 0 = samples_per_class
  std::size_t pr_k = 3;
  std::size_t kid_block = 0;         // 0 = min(n, m, 100)
  double coverage_radius = 3.0;
  std::uint64_t seed = 1;
  std::string output_dir;            // empty = no files written

  std::size_t effective_classes() const {
    return subset_classes ? subset_classes : dataset.num_classes;
  }
  std::size_t effective_per_class() const {
    return subset_per_class ? subset_per_class : dataset.samples_per_class;
  }
  std::size_t effective_fakes_per_class() const {
    return n_fake_per_class ? n_fake_per_class : effective_per_class();
  }
};

// Flat JSON with keys matching the field names; unknown keys are rejected.
TrainingConfig config_from_json_text(const std::string& text);
TrainingConfig load_config_file(const std::string& path);
std::string config_to_json_text(const TrainingConfig& config);

void validate_config(const TrainingConfig& config);

}  // namespace tcgan
