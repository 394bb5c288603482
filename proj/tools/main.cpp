// Command-line front end: train / sweep / eval / metrics / schedule.
// Exit codes: 0 success, 1 contract or config error, 2 numerical abort.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcgan/errors.hpp"
#include "tcgan/harness.hpp"

namespace {

using namespace tcgan;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void print_report_row(const MetricsReport& rep) {
  std::vector<MetricsReport> one{rep};
  write_metrics_csv(std::cout, one);
}

struct TrainArgs {
  std::string config_path;
  std::string resume_path;
  std::string mode, out;
  long ts = -1, te = -1, tm = -1;
  double clip_max = -1.0;
  long classes = -1, per_class = -1;
  long long seed = -1;
};

int run_train(const TrainArgs& args) {
  TrainResult result;
  if (!args.resume_path.empty()) {
    result = resume(args.resume_path, args.out);
  } else {
    TrainingConfig cfg = load_config_file(args.config_path);
    if (!args.mode.empty()) cfg.mode = mode_from_name(args.mode);
    if (args.ts >= 0) cfg.schedule.t_start = args.ts;
    if (args.te >= 0) cfg.schedule.t_end = args.te;
    if (args.tm >= 0) cfg.schedule.t_max = args.tm;
    if (args.clip_max >= 0.0) cfg.schedule.clip_max = args.clip_max;
    if (args.classes >= 0) cfg.subset_classes = static_cast<std::size_t>(args.classes);
    if (args.per_class >= 0)
      cfg.subset_per_class = static_cast<std::size_t>(args.per_class);
    if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.out.empty()) cfg.output_dir = args.out;
    result = train(cfg);
  }
  print_report_row(result.final_report);
  std::fprintf(stderr, "best fid %.6g at step %ld; %llu real samples consumed\n",
               result.best_fid, result.best_fid_step,
               result.real_samples_consumed);
  if (!result.checkpoint_path.empty())
    std::fprintf(stderr, "checkpoint: %s\n", result.checkpoint_path.c_str());
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& axis_name,
              const std::string& values_text, const std::string& seeds_text) {
  TrainingConfig base = load_config_file(config_path);
  const SweepAxis axis = sweep_axis_from_name(axis_name);
  std::vector<double> values;
  for (const auto& v : split_list(values_text)) values.push_back(std::stod(v));
  std::vector<std::uint64_t> seeds;
  for (const auto& s : split_list(seeds_text)) seeds.push_back(std::stoull(s));
  const auto rows = sweep(base, axis, values, seeds);
  write_sweep_csv(std::cout, rows);
  if (!base.output_dir.empty()) {
    std::ofstream os(base.output_dir + "/sweep.csv");
    write_sweep_csv(os, rows);
  }
  for (const auto& row : rows)
    if (!row.ok) return 2;
  return 0;
}

int run_eval(const std::string& checkpoint_path, double lambda_eval) {
  const MetricsReport rep = eval_checkpoint(checkpoint_path, lambda_eval, true);
  print_report_row(rep);
  char buf[64];
  if (rep.classwise_fid) {
    for (std::size_t i = 0; i < rep.classwise_fid->classes.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "classwise_fid,%zu,%.17g\n",
                    rep.classwise_fid->classes[i], rep.classwise_fid->values[i]);
      std::cout << buf;
    }
    std::snprintf(buf, sizeof(buf), "classwise_fid_mean,,%.17g\n",
                  rep.classwise_fid->mean);
    std::cout << buf;
  }
  if (rep.classwise_kid) {
    for (std::size_t i = 0; i < rep.classwise_kid->classes.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "classwise_kid,%zu,%.17g\n",
                    rep.classwise_kid->classes[i], rep.classwise_kid->values[i]);
      std::cout << buf;
    }
    std::snprintf(buf, sizeof(buf), "classwise_kid_mean,,%.17g\n",
                  rep.classwise_kid->mean);
    std::cout << buf;
  }
  return 0;
}

struct MetricsArgs {
  std::string real_path, fake_path;
  bool want_fid = false, want_kid = false, want_pr = false, want_classwise = false;
  std::size_t k = 3;
  std::size_t block_size = 0;
};

int run_metrics(const MetricsArgs& args) {
  const LabeledPoints real_pts = read_points_csv_file(args.real_path);
  const LabeledPoints fake_pts = read_points_csv_file(args.fake_path);
  FeatureSet real{real_pts.dim, real_pts.points, real_pts.labels};
  FeatureSet fake{fake_pts.dim, fake_pts.points, fake_pts.labels};

  bool want_fid = args.want_fid, want_kid = args.want_kid, want_pr = args.want_pr;
  if (!want_fid && !want_kid && !want_pr && !args.want_classwise)
    want_fid = want_kid = want_pr = true;

  std::vector<std::string> names;
  std::vector<double> values;
  if (want_fid) {
    names.push_back("fid");
    values.push_back(fid(real, fake));
  }
  if (want_kid) {
    names.push_back("kid");
    values.push_back(kid(real, fake, args.block_size));
  }
  if (want_pr) {
    const auto pr = precision_recall(real, fake, args.k);
    names.push_back("precision");
    values.push_back(pr.first);
    names.push_back("recall");
    values.push_back(pr.second);
  }
  if (args.want_classwise) {
    const auto cw_fid = classwise(MetricKind::fid, real, fake);
    const auto cw_kid = classwise(MetricKind::kid, real, fake, args.block_size);
    for (std::size_t i = 0; i < cw_fid.classes.size(); ++i) {
      names.push_back("cw_fid_" + std::to_string(cw_fid.classes[i]));
      values.push_back(cw_fid.values[i]);
    }
    names.push_back("classwise_fid_mean");
    values.push_back(cw_fid.mean);
    for (std::size_t i = 0; i < cw_kid.classes.size(); ++i) {
      names.push_back("cw_kid_" + std::to_string(cw_kid.classes[i]));
      values.push_back(cw_kid.values[i]);
    }
    names.push_back("classwise_kid_mean");
    values.push_back(cw_kid.mean);
  }
  for (std::size_t i = 0; i < names.size(); ++i)
    std::cout << (i ? "," : "") << names[i];
  std::cout << "\n";
  char buf[64];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", values[i]);
    std::cout << buf;
  }
  std::cout << "\n";
  return 0;
}

int run_schedule(long ts, long te, long tm, double clip, long stride) {
  TransitionSchedule schedule{ts, te, tm, clip};
  validate_schedule(schedule);
  write_schedule_csv(std::cout, schedule, stride);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transitional class-conditional GAN laboratory"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "run one training configuration");
  train_cmd->add_option("--config", train_args.config_path, "JSON config file");
  train_cmd->add_option("--resume", train_args.resume_path,
                        "continue from a checkpoint (config echo is authoritative)");
  train_cmd->add_option("--mode", train_args.mode, "override mode");
  train_cmd->add_option("--ts", train_args.ts, "override t_start");
  train_cmd->add_option("--te", train_args.te, "override t_end");
  train_cmd->add_option("--tm", train_args.tm, "override t_max");
  train_cmd->add_option("--clip-max", train_args.clip_max, "override clip_max");
  train_cmd->add_option("--classes", train_args.classes, "subset class count");
  train_cmd->add_option("--per-class", train_args.per_class,
                        "subset samples per class");
  train_cmd->add_option("--seed", train_args.seed, "override master seed");
  train_cmd->add_option("--out", train_args.out, "override output directory");

  std::string sweep_config, sweep_axis, sweep_values, sweep_seeds;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid of training runs");
  sweep_cmd->add_option("--config", sweep_config, "JSON config file")->required();
  sweep_cmd->add_option("--axis", sweep_axis,
                        "num_classes | samples_per_class | t_start | t_end")
      ->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
      ->required();
  sweep_cmd->add_option("--seeds", sweep_seeds, "comma-separated seeds")
      ->required();

  std::string eval_checkpoint_path;
  double eval_lambda = 1.0;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpointed generator");
  eval_cmd->add_option("--checkpoint", eval_checkpoint_path, "checkpoint file")
      ->required();
  eval_cmd->add_option("--lambda", eval_lambda, "conditioning strength in [0,1]");

  MetricsArgs metrics_args;
  auto* metrics_cmd =
      app.add_subcommand("metrics", "score two labeled point CSV files");
  metrics_cmd->add_option("--real", metrics_args.real_path, "real points csv")
      ->required();
  metrics_cmd->add_option("--fake", metrics_args.fake_path, "fake points csv")
      ->required();
  metrics_cmd->add_flag("--fid", metrics_args.want_fid, "compute FID");
  metrics_cmd->add_flag("--kid", metrics_args.want_kid, "compute KID");
  metrics_cmd->add_flag("--pr", metrics_args.want_pr, "compute precision/recall");
  metrics_cmd->add_flag("--classwise", metrics_args.want_classwise,
                        "compute class-wise FID and KID");
  metrics_cmd->add_option("--k", metrics_args.k, "neighbor count for --pr");
  metrics_cmd->add_option("--block-size", metrics_args.block_size,
                          "KID block size (0 = min(n, m, 100))");

  long sched_ts = 1000, sched_te = 2000, sched_tm = 6000, sched_stride = 100;
  double sched_clip = 1.0;
  auto* sched_cmd = app.add_subcommand("schedule", "emit the lambda curve");
  sched_cmd->add_option("--ts", sched_ts, "transition start");
  sched_cmd->add_option("--te", sched_te, "transition end");
  sched_cmd->add_option("--tm", sched_tm, "max training iteration");
  sched_cmd->add_option("--clip-max", sched_clip, "lambda cap in (0,1]");
  sched_cmd->add_option("--stride", sched_stride, "row stride");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train_cmd->parsed()) {
      if (train_args.config_path.empty() && train_args.resume_path.empty())
        throw ContractError("train: provide --config or --resume");
      return run_train(train_args);
    }
    if (sweep_cmd->parsed())
      return run_sweep(sweep_config, sweep_axis, sweep_values, sweep_seeds);
    if (eval_cmd->parsed()) return run_eval(eval_checkpoint_path, eval_lambda);
    if (metrics_cmd->parsed()) return run_metrics(metrics_args);
    if (sched_cmd->parsed())
      return run_schedule(sched_ts, sched_te, sched_tm, sched_clip, sched_stride);
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
