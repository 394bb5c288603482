#include "tcgan/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tcgan/errors.hpp"

namespace tcgan {

using nlohmann::json;

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::unconditional: return "unconditional";
    case Mode::conditional: return "conditional";
    case Mode::transitional: return "transitional";
    case Mode::no_transition: return "no_transition";
    case Mode::transition_g_only: return "transition_g_only";
    case Mode::transition_loss_only: return "transition_loss_only";
  }
  throw ContractError("unknown mode");
}

Mode mode_from_name(const std::string& name) {
  if (name == "unconditional") return Mode::unconditional;
  if (name == "conditional") return Mode::conditional;
  if (name == "transitional") return Mode::transitional;
  if (name == "no_transition") return Mode::no_transition;
  if (name == "transition_g_only") return Mode::transition_g_only;
  if (name == "transition_loss_only") return Mode::transition_loss_only;
  throw ContractError("unknown mode '" + name + "'");
}

std::string formulation_name(Formulation f) {
  return f == Formulation::additive ? "additive" : "convex";
}

Formulation formulation_from_name(const std::string& name) {
  if (name == "additive") return Formulation::additive;
  if (name == "convex") return Formulation::convex;
  throw ContractError("unknown formulation '" + name + "'");
}

std::string layout_name(Layout layout) {
  return layout == Layout::ring ? "ring" : "grid";
}

Layout layout_from_name(const std::string& name) {
  if (name == "ring") return Layout::ring;
  if (name == "grid") return Layout::grid;
  throw ContractError("unknown layout '" + name + "'");
}

namespace {

const char* const kKnownKeys[] = {
    "mode",           "formulation",      "t_start",
    "t_end",          "t_max",            "clip_max",
    "num_classes",    "samples_per_class", "modes_per_class",
    "mode_sigma",     "layout",           "data_dim",
    "subset_classes", "subset_per_class", "z_dim",
    "embed_dim",      "map_hidden",       "map_layers",
    "synth_hidden",   "synth_layers",     "trunk_hidden",
    "trunk_layers",   "leaky_alpha",      "learning_rate",
    "beta1",          "beta2",            "batch_size",
    "d_steps_per_g_step", "r1_weight",    "eval_every",
    "sample_dump_every",  "n_fake_per_class", "pr_k",
    "kid_block",      "coverage_radius",  "seed",
    "output_dir",
};

TrainingConfig from_json(const json& j) {
  if (!j.is_object()) throw FormatError("config: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw FormatError("config: unknown key '" + key + "'");
    (void)value;
  }
  TrainingConfig c;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  std::string mode_str = mode_name(c.mode);
  std::string formulation_str = formulation_name(c.formulation);
  std::string layout_str = layout_name(c.dataset.layout);
  get("mode", mode_str);
  get("formulation", formulation_str);
  get("layout", layout_str);
  c.mode = mode_from_name(mode_str);
  c.formulation = formulation_from_name(formulation_str);
  c.dataset.layout = layout_from_name(layout_str);
  get("t_start", c.schedule.t_start);
  get("t_end", c.schedule.t_end);
  get("t_max", c.schedule.t_max);
  get("clip_max", c.schedule.clip_max);
  get("num_classes", c.dataset.num_classes);
  get("samples_per_class", c.dataset.samples_per_class);
  get("modes_per_class", c.dataset.modes_per_class);
  get("mode_sigma", c.dataset.mode_sigma);
  get("data_dim", c.dataset.dim);
  get("subset_classes", c.subset_classes);
  get("subset_per_class", c.subset_per_class);
  get("z_dim", c.arch.z_dim);
  get("embed_dim", c.arch.embed_dim);
  get("map_hidden", c.arch.map_hidden);
  get("map_layers", c.arch.map_layers);
  get("synth_hidden", c.arch.synth_hidden);
  get("synth_layers", c.arch.synth_layers);
  get("trunk_hidden", c.arch.trunk_hidden);
  get("trunk_layers", c.arch.trunk_layers);
  get("leaky_alpha", c.arch.leaky_alpha);
  get("learning_rate", c.learning_rate);
  get("beta1", c.beta1);
  get("beta2", c.beta2);
  get("batch_size", c.batch_size);
  get("d_steps_per_g_step", c.d_steps_per_g_step);
  get("r1_weight", c.r1_weight);
  get("eval_every", c.eval_every);
  get("sample_dump_every", c.sample_dump_every);
  get("n_fake_per_class", c.n_fake_per_class);
  get("pr_k", c.pr_k);
  get("kid_block", c.kid_block);
  get("coverage_radius", c.coverage_radius);
  get("seed", c.seed);
  get("output_dir", c.output_dir);
  c.arch.data_dim = c.dataset.dim;
  return c;
}

}  // namespace

TrainingConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: invalid JSON: ") + e.what());
  }
  try {
    return from_json(j);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: bad field type: ") + e.what());
  }
}

TrainingConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  return config_from_json_text(buffer.str());
}

std::string config_to_json_text(const TrainingConfig& c) {
  json j;
  j["mode"] = mode_name(c.mode);
  j["formulation"] = formulation_name(c.formulation);
  j["t_start"] = c.schedule.t_start;
  j["t_end"] = c.schedule.t_end;
  j["t_max"] = c.schedule.t_max;
  j["clip_max"] = c.schedule.clip_max;
  j["num_classes"] = c.dataset.num_classes;
  j["samples_per_class"] = c.dataset.samples_per_class;
  j["modes_per_class"] = c.dataset.modes_per_class;
  j["mode_sigma"] = c.dataset.mode_sigma;
  j["layout"] = layout_name(c.dataset.layout);
  j["data_dim"] = c.dataset.dim;
  j["subset_classes"] = c.subset_classes;
  j["subset_per_class"] = c.subset_per_class;
  j["z_dim"] = c.arch.z_dim;
  j["embed_dim"] = c.arch.embed_dim;
  j["map_hidden"] = c.arch.map_hidden;
  j["map_layers"] = c.arch.map_layers;
  j["synth_hidden"] = c.arch.synth_hidden;
  j["synth_layers"] = c.arch.synth_layers;
  j["trunk_hidden"] = c.arch.trunk_hidden;
  j["trunk_layers"] = c.arch.trunk_layers;
  j["leaky_alpha"] = c.arch.leaky_alpha;
  j["learning_rate"] = c.learning_rate;
  j["beta1"] = c.beta1;
  j["beta2"] = c.beta2;
  j["batch_size"] = c.batch_size;
  j["d_steps_per_g_step"] = c.d_steps_per_g_step;
  j["r1_weight"] = c.r1_weight;
  j["eval_every"] = c.eval_every;
  j["sample_dump_every"] = c.sample_dump_every;
  j["n_fake_per_class"] = c.n_fake_per_class;
  j["pr_k"] = c.pr_k;
  j["kid_block"] = c.kid_block;
  j["coverage_radius"] = c.coverage_radius;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j.dump(2);
}

void validate_config(const TrainingConfig& c) {
  if (c.batch_size < 2) throw ContractError("config: batch_size must be >= 2");
  if (c.eval_every < 1) throw ContractError("config: eval_every must be >= 1");
  if (c.d_steps_per_g_step < 1)
    throw ContractError("config: d_steps_per_g_step must be >= 1");
  if (c.schedule.t_max < 1) throw ContractError("config: t_max must be >= 1");
  if (c.schedule.t_start < 0)
    throw ContractError("config: t_start must be non-negative");
  if (!(c.schedule.clip_max > 0.0 && c.schedule.clip_max <= 1.0))
    throw ContractError("config: clip_max must lie in (0, 1]");
  if (!(c.r1_weight >= 0.0))
    throw ContractError("config: r1_weight must be >= 0");
  if (!(c.learning_rate > 0.0))
    throw ContractError("config: learning_rate must be positive");
  if (c.dataset.num_classes == 0 || c.dataset.samples_per_class == 0 ||
      c.dataset.modes_per_class == 0)
    throw ContractError("config: dataset counts must be positive");
  if (!(c.dataset.mode_sigma > 0.0))
    throw ContractError("config: mode_sigma must be positive");
  if (c.subset_classes > c.dataset.num_classes)
    throw ContractError("config: subset_classes exceeds num_classes");
  if (c.subset_per_class > c.dataset.samples_per_class)
    throw ContractError("config: subset_per_class exceeds samples_per_class");
  if (c.pr_k < 1) throw ContractError("config: pr_k must be >= 1");
  if (!(c.coverage_radius > 0.0))
    throw ContractError("config: coverage_radius must be positive");
}

}  // namespace tcgan
