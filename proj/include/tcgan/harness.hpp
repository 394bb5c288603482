#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcgan/config.hpp"
#include "tcgan/metrics.hpp"

namespace tcgan {

struct LambdaPair {
  double generator = 0.0;
  double loss = 0.0;
};

// Maps the training mode onto the lambda values used by the generator
// injection and the loss combination at iteration t.
LambdaPair resolve_mode(Mode mode, const TransitionSchedule& schedule, long t);

struct TrainResult {
  std::vector<MetricsReport> log;
  MetricsReport final_report;
  long best_fid_step = -1;
  double best_fid = 0.0;
  unsigned long long real_samples_consumed = 0;
  std::string checkpoint_path;  // empty when output_dir is empty
};

// Full training run: alternating discriminator/generator updates with the
// mode-resolved lambdas, periodic evaluation rows, optional sample dumps,
// and a final checkpoint. Throws NumericalError (after writing a diagnostic
// checkpoint) if a loss goes non-finite.
TrainResult train(const TrainingConfig& config);

// Continues a checkpointed run to its configured t_max; the checkpoint's
// config echo is authoritative. output_dir_override redirects file output
// (pass "" to inherit, "-" to disable).
TrainResult resume(const std::string& checkpoint_path,
                   const std::string& output_dir_override = "");

struct EvalOptions {
  std::size_t pr_k = 3;
  std::size_t kid_block = 0;
  double coverage_radius = 3.0;
  bool with_classwise = false;
};

// Draws n_fake_per_class fresh samples per class at the given lambda and
// scores them against the dataset.
MetricsReport evaluate(const GeneratorParams& gen, const ArchConfig& arch,
                       double lambda_eval, const ClassConditionalDataset& dataset,
                       std::size_t n_fake_per_class, Rng& rng,
                       const EvalOptions& options = {});

// Same metrics computed on caller-supplied fake points (used by tests to
// score stub generators).
MetricsReport evaluate_features(const FeatureSet& fake,
                                const ClassConditionalDataset& dataset,
                                const EvalOptions& options = {});

// Loads a checkpoint, rebuilds its dataset and parameters, and evaluates the
// generator at the given lambda using the checkpoint's eval rng state.
MetricsReport eval_checkpoint(const std::string& checkpoint_path,
                              double lambda_eval, bool with_classwise = true);

enum class SweepAxis { num_classes, samples_per_class, t_start, t_end };

SweepAxis sweep_axis_from_name(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);

struct SweepRow {
  SweepAxis axis;
  double value = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  MetricsReport final_report;
  std::string error;
};

// Independent full runs per (value, seed); per-run failures are recorded in
// the output instead of aborting the sweep. t_start sweeps shift t_end along
// with t_start so the transition window keeps its length; t_end sweeps move
// only t_end.
std::vector<SweepRow> sweep(const TrainingConfig& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds);

void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& rows);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace tcgan
