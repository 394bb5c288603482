#include "tcgan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "tcgan/adam.hpp"
#include "tcgan/checkpoint.hpp"
#include "tcgan/errors.hpp"
#include "tcgan/ops.hpp"

namespace tcgan {

using nlohmann::json;

LambdaPair resolve_mode(Mode mode, const TransitionSchedule& schedule, long t) {
  switch (mode) {
    case Mode::unconditional:
      return {0.0, 0.0};
    case Mode::conditional:
    case Mode::no_transition:
      return {1.0, 1.0};
    case Mode::transitional: {
      const double lam = lambda_at(schedule, t);
      return {lam, lam};
    }
    case Mode::transition_g_only:
      return {lambda_at(schedule, t), 1.0};
    case Mode::transition_loss_only:
      return {1.0, lambda_at(schedule, t)};
  }
  throw ContractError("resolve_mode: unknown mode");
}

namespace {

// master-seed fan-out (streams 0 and 1 are claimed by dataset + subset)
constexpr std::uint64_t kInitStream = 2;
constexpr std::uint64_t kTrainStream = 3;
constexpr std::uint64_t kEvalStream = 4;

Tensor draw_latents(Rng& rng, std::size_t batch, std::size_t z_dim) {
  Tensor z = Tensor::zeros({batch, z_dim});
  for (double& v : z.mutable_data()) v = rng.normal();
  return z;
}

std::vector<std::size_t> draw_labels(Rng& rng, std::size_t batch,
                                     std::size_t num_classes) {
  std::vector<std::size_t> labels(batch);
  for (auto& l : labels) l = rng.uniform_index(num_classes);
  return labels;
}

std::vector<std::uint8_t> rng_blob(const Rng& rng) {
  std::vector<std::uint8_t> bytes;
  for (std::uint64_t word : rng.state())
    for (int i = 0; i < 8; ++i)
      bytes.push_back(static_cast<std::uint8_t>(word >> (8 * i)));
  return bytes;
}

void rng_from_blob(Rng& rng, const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() != 32) throw FormatError("checkpoint: bad rng state size");
  std::array<std::uint64_t, 4> state{};
  for (int w = 0; w < 4; ++w)
    for (int i = 0; i < 8; ++i)
      state[w] |= static_cast<std::uint64_t>(bytes[w * 8 + i]) << (8 * i);
  rng.set_state(state);
}

struct Trainer {
  TrainingConfig cfg;
  ClassConditionalDataset dataset;
  ArchConfig arch;
  GeneratorParams gen;
  DiscriminatorParams disc;
  std::vector<Tensor> g_params, d_params;
  AdamState adam_g, adam_d;
  Rng rng_train{0};
  Rng rng_eval{0};
  long step = 0;
  double last_d_loss = 0.0, last_g_loss = 0.0;
  std::vector<MetricsReport> log;
  unsigned long long real_consumed = 0;
  double best_fid = std::numeric_limits<double>::infinity();
  long best_fid_step = -1;

  bool output_enabled() const { return !cfg.output_dir.empty(); }
  std::filesystem::path out_path(const std::string& name) const {
    return std::filesystem::path(cfg.output_dir) / name;
  }
};

Trainer make_trainer(const TrainingConfig& config) {
  validate_config(config);
  Trainer tr;
  tr.cfg = config;
  DatasetSpec spec = config.dataset;
  spec.seed = config.seed;
  tr.dataset = make_dataset(spec);
  if (config.subset_classes || config.subset_per_class)
    tr.dataset = subset(tr.dataset, config.effective_classes(),
                        config.effective_per_class(), config.seed);
  tr.arch = config.arch;
  tr.arch.data_dim = tr.dataset.dim;
  tr.arch.num_classes = tr.dataset.num_classes;
  Rng init_rng(config.seed, kInitStream);
  tr.gen = init_generator(tr.arch, init_rng);
  tr.disc = init_discriminator(tr.arch, init_rng);
  tr.g_params = tr.gen.parameters();
  tr.d_params = tr.disc.parameters();
  tr.adam_g = make_adam_state(tr.g_params, config.learning_rate, config.beta1,
                              config.beta2);
  tr.adam_d = make_adam_state(tr.d_params, config.learning_rate, config.beta1,
                              config.beta2);
  tr.rng_train = Rng(config.seed, kTrainStream);
  tr.rng_eval = Rng(config.seed, kEvalStream);
  return tr;
}

void check_finite(double v, const char* what, Trainer& tr);

void d_step(Trainer& tr, const LambdaPair& lam) {
  const std::size_t B = tr.cfg.batch_size;
  auto [real_pts, real_labels] = minibatch(tr.dataset, B, tr.rng_train);
  tr.real_consumed += B;
  Tensor real = Tensor::from({B, tr.dataset.dim}, std::move(real_pts));
  Tensor z = draw_latents(tr.rng_train, B, tr.arch.z_dim);
  auto fake_labels = draw_labels(tr.rng_train, B, tr.arch.num_classes);

  Tensor fake;
  {
    // generate on a scratch tape; fakes enter the D pass as constants
    Tape scratch;
    Tensor out = generator_forward(scratch, tr.gen, tr.arch, z, fake_labels,
                                   lam.generator);
    fake = Tensor::from(out.shape(), {out.data().begin(), out.data().end()});
  }

  Tape tape;
  auto [ru, rc] = discriminator_forward(tape, tr.disc, tr.arch, real, real_labels);
  auto [fu, fc] = discriminator_forward(tape, tr.disc, tr.arch, fake, fake_labels);
  LossTerms terms = combined_losses(tape, ru, rc, fu, fc, lam.loss,
                                    tr.cfg.formulation);
  tr.last_d_loss = terms.d_total.value();
  check_finite(tr.last_d_loss, "discriminator loss", tr);
  for (auto& p : tr.d_params) p.zero_grad();
  tape.backward(terms.d_total);
  if (tr.cfg.r1_weight > 0.0)
    r1_apply(tr.disc, tr.arch, real, tr.cfg.r1_weight);
  adam_step(tr.d_params, tr.adam_d);
}

void g_step(Trainer& tr, const LambdaPair& lam) {
  const std::size_t B = tr.cfg.batch_size;
  Tensor z = draw_latents(tr.rng_train, B, tr.arch.z_dim);
  auto labels = draw_labels(tr.rng_train, B, tr.arch.num_classes);
  Tape tape;
  Tensor fake = generator_forward(tape, tr.gen, tr.arch, z, labels, lam.generator);
  auto [fu, fc] = discriminator_forward(tape, tr.disc, tr.arch, fake, labels);
  Tensor g_uncond = branch_g_loss(tape, fu);
  Tensor g_cond = branch_g_loss(tape, fc);
  Tensor g_total = combine_pair(tape, g_uncond, g_cond, lam.loss,
                                tr.cfg.formulation);
  tr.last_g_loss = g_total.value();
  check_finite(tr.last_g_loss, "generator loss", tr);
  for (auto& p : tr.g_params) p.zero_grad();
  tape.backward(g_total);
  adam_step(tr.g_params, tr.adam_g);
}

FeatureSet generate_labeled(const GeneratorParams& gen, const ArchConfig& arch,
                            double lambda_eval, std::size_t per_class,
                            Rng& rng) {
  FeatureSet fake;
  fake.dim = arch.data_dim;
  for (std::size_t c = 0; c < arch.num_classes; ++c) {
    Tensor z = draw_latents(rng, per_class, arch.z_dim);
    std::vector<std::size_t> labels(per_class, c);
    Tape scratch;
    Tensor out = generator_forward(scratch, gen, arch, z, labels, lambda_eval);
    fake.vectors.insert(fake.vectors.end(), out.data().begin(), out.data().end());
    fake.labels.insert(fake.labels.end(), labels.begin(), labels.end());
  }
  return fake;
}

EvalOptions eval_options(const TrainingConfig& cfg, bool with_classwise) {
  EvalOptions opt;
  opt.pr_k = cfg.pr_k;
  opt.kid_block = cfg.kid_block;
  opt.coverage_radius = cfg.coverage_radius;
  opt.with_classwise = with_classwise;
  return opt;
}

void do_eval(Trainer& tr, long t, double lambda_gen) {
  MetricsReport rep = evaluate(tr.gen, tr.arch, lambda_gen, tr.dataset,
                               tr.cfg.effective_fakes_per_class(), tr.rng_eval,
                               eval_options(tr.cfg, false));
  rep.step = t;
  rep.lambda = lambda_gen;
  rep.d_total = tr.last_d_loss;
  rep.g_total = tr.last_g_loss;
  tr.log.push_back(rep);
  if (rep.fid < tr.best_fid) {
    tr.best_fid = rep.fid;
    tr.best_fid_step = t;
  }
}

void dump_samples(Trainer& tr, long t, double lambda_gen) {
  if (!tr.output_enabled()) return;
  FeatureSet fake = generate_labeled(tr.gen, tr.arch, lambda_gen,
                                     tr.cfg.effective_fakes_per_class(),
                                     tr.rng_eval);
  std::ofstream os(tr.out_path("samples_step" + std::to_string(t) + ".csv"));
  write_points_csv(os, fake.vectors, fake.labels, fake.dim);
}

CheckpointRecord to_checkpoint(const Trainer& tr) {
  CheckpointRecord rec;
  json header;
  header["config"] = json::parse(config_to_json_text(tr.cfg));
  header["step"] = tr.step;
  header["adam_g_steps"] = tr.adam_g.step_count;
  header["adam_d_steps"] = tr.adam_d.step_count;
  rec.header_json = header.dump();

  auto push_param = [&rec](const std::string& name, const Tensor& t) {
    rec.arrays.push_back(
        {name, t.shape(), {t.data().begin(), t.data().end()}});
  };
  for (std::size_t i = 0; i < tr.gen.style_w.size(); ++i) {
    push_param("g.style_w." + std::to_string(i), tr.gen.style_w[i]);
    push_param("g.style_b." + std::to_string(i), tr.gen.style_b[i]);
  }
  push_param("g.embed_table", tr.gen.class_embedding_table);
  push_param("g.embed_proj_w", tr.gen.embed_proj_w);
  push_param("g.embed_proj_b", tr.gen.embed_proj_b);
  for (std::size_t i = 0; i < tr.gen.synth_w.size(); ++i) {
    push_param("g.synth_w." + std::to_string(i), tr.gen.synth_w[i]);
    push_param("g.synth_b." + std::to_string(i), tr.gen.synth_b[i]);
  }
  for (std::size_t i = 0; i < tr.disc.trunk_w.size(); ++i) {
    push_param("d.trunk_w." + std::to_string(i), tr.disc.trunk_w[i]);
    push_param("d.trunk_b." + std::to_string(i), tr.disc.trunk_b[i]);
  }
  push_param("d.uncond_w", tr.disc.uncond_w);
  push_param("d.uncond_b", tr.disc.uncond_b);
  push_param("d.proj_table", tr.disc.class_projection_table);
  auto push_moments = [&rec](const std::string& prefix, const AdamState& s) {
    for (std::size_t i = 0; i < s.first_moment.size(); ++i) {
      rec.arrays.push_back({prefix + ".m." + std::to_string(i),
                            {s.first_moment[i].size()},
                            s.first_moment[i]});
      rec.arrays.push_back({prefix + ".v." + std::to_string(i),
                            {s.second_moment[i].size()},
                            s.second_moment[i]});
    }
  };
  push_moments("adam_g", tr.adam_g);
  push_moments("adam_d", tr.adam_d);
  rec.blobs.push_back({"rng_train", rng_blob(tr.rng_train)});
  rec.blobs.push_back({"rng_eval", rng_blob(tr.rng_eval)});
  return rec;
}

void restore_from_checkpoint(Trainer& tr, const CheckpointRecord& rec) {
  json header;
  try {
    header = json::parse(rec.header_json);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: bad header json: ") + e.what());
  }
  tr.step = header.at("step").get<long>();
  tr.adam_g.step_count = header.at("adam_g_steps").get<long>();
  tr.adam_d.step_count = header.at("adam_d_steps").get<long>();

  std::size_t used = 0;
  auto find = [&rec, &used](const std::string& name) -> const NamedArray& {
    for (const auto& arr : rec.arrays)
      if (arr.name == name) {
        ++used;
        return arr;
      }
    throw FormatError("checkpoint: missing array '" + name + "'");
  };
  auto load_param = [&find](const std::string& name, Tensor& t) {
    const NamedArray& arr = find(name);
    if (arr.shape != t.shape())
      throw FormatError("checkpoint: array '" + name + "' has shape " +
                        shape_str(arr.shape) + ", expected " +
                        shape_str(t.shape()));
    std::copy(arr.data.begin(), arr.data.end(), t.mutable_data().begin());
  };
  for (std::size_t i = 0; i < tr.gen.style_w.size(); ++i) {
    load_param("g.style_w." + std::to_string(i), tr.gen.style_w[i]);
    load_param("g.style_b." + std::to_string(i), tr.gen.style_b[i]);
  }
  load_param("g.embed_table", tr.gen.class_embedding_table);
  load_param("g.embed_proj_w", tr.gen.embed_proj_w);
  load_param("g.embed_proj_b", tr.gen.embed_proj_b);
  for (std::size_t i = 0; i < tr.gen.synth_w.size(); ++i) {
    load_param("g.synth_w." + std::to_string(i), tr.gen.synth_w[i]);
    load_param("g.synth_b." + std::to_string(i), tr.gen.synth_b[i]);
  }
  for (std::size_t i = 0; i < tr.disc.trunk_w.size(); ++i) {
    load_param("d.trunk_w." + std::to_string(i), tr.disc.trunk_w[i]);
    load_param("d.trunk_b." + std::to_string(i), tr.disc.trunk_b[i]);
  }
  load_param("d.uncond_w", tr.disc.uncond_w);
  load_param("d.uncond_b", tr.disc.uncond_b);
  load_param("d.proj_table", tr.disc.class_projection_table);
  auto load_moments = [&find](const std::string& prefix, AdamState& s) {
    for (std::size_t i = 0; i < s.first_moment.size(); ++i) {
      const NamedArray& m = find(prefix + ".m." + std::to_string(i));
      const NamedArray& v = find(prefix + ".v." + std::to_string(i));
      if (m.data.size() != s.first_moment[i].size() ||
          v.data.size() != s.second_moment[i].size())
        throw FormatError("checkpoint: optimizer state size mismatch at " +
                          prefix + "." + std::to_string(i));
      s.first_moment[i] = m.data;
      s.second_moment[i] = v.data;
    }
  };
  load_moments("adam_g", tr.adam_g);
  load_moments("adam_d", tr.adam_d);
  if (used != rec.arrays.size())
    throw FormatError("checkpoint: unexpected extra arrays present");
  bool got_train = false, got_eval = false;
  for (const auto& blob : rec.blobs) {
    if (blob.name == "rng_train") {
      rng_from_blob(tr.rng_train, blob.bytes);
      got_train = true;
    } else if (blob.name == "rng_eval") {
      rng_from_blob(tr.rng_eval, blob.bytes);
      got_eval = true;
    } else {
      throw FormatError("checkpoint: unknown blob '" + blob.name + "'");
    }
  }
  if (!got_train || !got_eval)
    throw FormatError("checkpoint: missing rng state");
}

void check_finite(double v, const char* what, Trainer& tr) {
  if (std::isfinite(v)) return;
  if (tr.output_enabled()) {
    std::filesystem::create_directories(tr.cfg.output_dir);
    save_checkpoint(to_checkpoint(tr),
                    tr.out_path("checkpoint_diagnostic.bin").string());
  }
  throw NumericalError(std::string(what) + " went non-finite at step " +
                       std::to_string(tr.step) + "; diagnostic checkpoint " +
                       (tr.output_enabled() ? "written" : "skipped (no output dir)"));
}

void run_steps(Trainer& tr) {
  const long t_max = tr.cfg.schedule.t_max;
  for (long t = tr.step + 1; t <= t_max; ++t) {
    tr.step = t;
    const LambdaPair lam = resolve_mode(tr.cfg.mode, tr.cfg.schedule, t);
    for (std::size_t k = 0; k < tr.cfg.d_steps_per_g_step; ++k) d_step(tr, lam);
    g_step(tr, lam);
    if (tr.cfg.eval_every > 0 && t % tr.cfg.eval_every == 0)
      do_eval(tr, t, lam.generator);
    if (tr.cfg.sample_dump_every > 0 && t % tr.cfg.sample_dump_every == 0)
      dump_samples(tr, t, lam.generator);
  }
}

TrainResult finish(Trainer& tr) {
  if (tr.log.empty()) {
    const LambdaPair lam =
        resolve_mode(tr.cfg.mode, tr.cfg.schedule, tr.cfg.schedule.t_max);
    do_eval(tr, tr.cfg.schedule.t_max, lam.generator);
  }
  TrainResult result;
  result.log = tr.log;
  result.final_report = tr.log.back();
  result.best_fid = tr.best_fid;
  result.best_fid_step = tr.best_fid_step;
  result.real_samples_consumed = tr.real_consumed;
  if (tr.output_enabled()) {
    std::ofstream metrics(tr.out_path("metrics.csv"));
    write_metrics_csv(metrics, tr.log);
    const auto ckpt = tr.out_path("checkpoint_final.bin").string();
    save_checkpoint(to_checkpoint(tr), ckpt);
    result.checkpoint_path = ckpt;
    json summary;
    summary["best_fid"] = tr.best_fid;
    summary["best_fid_step"] = tr.best_fid_step;
    summary["real_samples_consumed"] = tr.real_consumed;
    summary["final_step"] = result.final_report.step;
    summary["final_fid"] = result.final_report.fid;
    summary["final_mode_coverage"] = result.final_report.mode_coverage;
    summary["final_class_fidelity"] = result.final_report.class_fidelity;
    std::ofstream sm(tr.out_path("run_summary.json"));
    sm << summary.dump(2) << "\n";
  }
  return result;
}

}  // namespace

MetricsReport evaluate_features(const FeatureSet& fake,
                                const ClassConditionalDataset& dataset,
                                const EvalOptions& options) {
  FeatureSet real;
  real.dim = dataset.dim;
  real.vectors = dataset.points;
  real.labels = dataset.labels;
  MetricsReport rep;
  rep.fid = fid(real, fake);
  rep.kid = kid(real, fake, options.kid_block);
  const auto pr = precision_recall(real, fake, options.pr_k);
  rep.precision = pr.first;
  rep.recall = pr.second;
  const auto cov = mode_coverage(fake, dataset, options.coverage_radius);
  rep.mode_coverage = cov.first;
  rep.class_fidelity = cov.second;
  if (options.with_classwise) {
    rep.classwise_fid = classwise(MetricKind::fid, real, fake);
    rep.classwise_kid = classwise(MetricKind::kid, real, fake, options.kid_block);
  }
  return rep;
}

MetricsReport evaluate(const GeneratorParams& gen, const ArchConfig& arch,
                       double lambda_eval, const ClassConditionalDataset& dataset,
                       std::size_t n_fake_per_class, Rng& rng,
                       const EvalOptions& options) {
  if (n_fake_per_class < 1)
    throw ContractError("evaluate: n_fake_per_class must be >= 1");
  FeatureSet fake =
      generate_labeled(gen, arch, lambda_eval, n_fake_per_class, rng);
  MetricsReport rep = evaluate_features(fake, dataset, options);
  rep.lambda = lambda_eval;
  return rep;
}

TrainResult train(const TrainingConfig& config) {
  Trainer tr = make_trainer(config);
  if (tr.output_enabled()) {
    std::filesystem::create_directories(config.output_dir);
    std::ofstream echo(tr.out_path("config.json"));
    echo << config_to_json_text(config) << "\n";
    std::ofstream data_csv(tr.out_path("dataset.csv"));
    write_dataset_csv(data_csv, tr.dataset);
    std::ofstream centers_csv(tr.out_path("mode_centers.csv"));
    write_centers_csv(centers_csv, tr.dataset);
  }
  run_steps(tr);
  return finish(tr);
}

MetricsReport eval_checkpoint(const std::string& checkpoint_path,
                              double lambda_eval, bool with_classwise) {
  const CheckpointRecord rec = load_checkpoint(checkpoint_path);
  json header;
  try {
    header = json::parse(rec.header_json);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: bad header json: ") + e.what());
  }
  TrainingConfig cfg = config_from_json_text(header.at("config").dump());
  cfg.output_dir.clear();
  Trainer tr = make_trainer(cfg);
  restore_from_checkpoint(tr, rec);
  MetricsReport rep = evaluate(tr.gen, tr.arch, lambda_eval, tr.dataset,
                               cfg.effective_fakes_per_class(), tr.rng_eval,
                               eval_options(cfg, with_classwise));
  rep.step = tr.step;
  return rep;
}

TrainResult resume(const std::string& checkpoint_path,
                   const std::string& output_dir_override) {
  const CheckpointRecord rec = load_checkpoint(checkpoint_path);
  json header;
  try {
    header = json::parse(rec.header_json);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint: bad header json: ") + e.what());
  }
  TrainingConfig cfg = config_from_json_text(header.at("config").dump());
  if (output_dir_override == "-")
    cfg.output_dir.clear();
  else if (!output_dir_override.empty())
    cfg.output_dir = output_dir_override;
  Trainer tr = make_trainer(cfg);
  restore_from_checkpoint(tr, rec);
  if (tr.output_enabled())
    std::filesystem::create_directories(cfg.output_dir);
  run_steps(tr);
  return finish(tr);
}

SweepAxis sweep_axis_from_name(const std::string& name) {
  if (name == "num_classes") return SweepAxis::num_classes;
  if (name == "samples_per_class") return SweepAxis::samples_per_class;
  if (name == "t_start") return SweepAxis::t_start;
  if (name == "t_end") return SweepAxis::t_end;
  throw ContractError("unknown sweep axis '" + name + "'");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::num_classes: return "num_classes";
    case SweepAxis::samples_per_class: return "samples_per_class";
    case SweepAxis::t_start: return "t_start";
    case SweepAxis::t_end: return "t_end";
  }
  throw ContractError("unknown sweep axis");
}

std::vector<SweepRow> sweep(const TrainingConfig& base, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<std::uint64_t>& seeds) {
  if (values.empty()) throw ContractError("sweep: values must be non-empty");
  if (seeds.empty()) throw ContractError("sweep: seeds must be non-empty");
  std::vector<SweepRow> rows;
  for (double value : values) {
    for (std::uint64_t seed : seeds) {
      TrainingConfig cfg = base;
      cfg.seed = seed;
      switch (axis) {
        case SweepAxis::num_classes:
          cfg.subset_classes = static_cast<std::size_t>(value);
          break;
        case SweepAxis::samples_per_class:
          cfg.subset_per_class = static_cast<std::size_t>(value);
          break;
        case SweepAxis::t_start: {
          // keep the transition window length fixed while moving its start
          const long width = cfg.schedule.t_end - cfg.schedule.t_start;
          cfg.schedule.t_start = static_cast<long>(value);
          cfg.schedule.t_end = cfg.schedule.t_start + width;
          break;
        }
        case SweepAxis::t_end:
          cfg.schedule.t_end = static_cast<long>(value);
          break;
      }
      if (!base.output_dir.empty()) {
        std::ostringstream dir;
        dir << base.output_dir << "/" << sweep_axis_name(axis) << "_" << value
            << "_seed" << seed;
        cfg.output_dir = dir.str();
      }
      SweepRow row;
      row.axis = axis;
      row.value = value;
      row.seed = seed;
      try {
        TrainResult result = train(cfg);
        row.ok = true;
        row.final_report = result.final_report;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& rows) {
  os << "step,lambda,d_total,g_total,fid,kid,precision,recall,mode_coverage,"
        "class_fidelity\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.step, r.lambda, r.d_total, r.g_total, r.fid, r.kid,
                  r.precision, r.recall, r.mode_coverage, r.class_fidelity);
    os << buf;
  }
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "axis,value,seed,status,step,fid,kid,precision,recall,mode_coverage,"
        "class_fidelity,error\n";
  char buf[256];
  for (const auto& r : rows) {
    if (r.ok) {
      std::snprintf(buf, sizeof(buf),
                    "%s,%.17g,%llu,ok,%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,\n",
                    sweep_axis_name(r.axis).c_str(), r.value,
                    static_cast<unsigned long long>(r.seed), r.final_report.step,
                    r.final_report.fid, r.final_report.kid,
                    r.final_report.precision, r.final_report.recall,
                    r.final_report.mode_coverage, r.final_report.class_fidelity);
      os << buf;
    } else {
      std::string msg = r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      std::snprintf(buf, sizeof(buf), "%s,%.17g,%llu,failed,,,,,,,%s\n",
                    sweep_axis_name(r.axis).c_str(), r.value,
                    static_cast<unsigned long long>(r.seed), msg.c_str());
      os << buf;
    }
  }
}

}  // namespace tcgan
