#include "tcgan/nets.hpp"

#include <cmath>
#include <string>

#include "tcgan/errors.hpp"
#include "tcgan/ops.hpp"

namespace tcgan {

namespace {

Tensor normal_matrix(Rng& rng, std::size_t rows, std::size_t cols, double std) {
  Tensor t = Tensor::zeros({rows, cols}, true);
  for (double& v : t.mutable_data()) v = std * rng.normal();
  return t;
}

Tensor zero_vector(std::size_t n) { return Tensor::zeros({n}, true); }

// scaled normal init, std = 1/sqrt(fan_in)
Tensor layer_weight(Rng& rng, std::size_t fan_in, std::size_t fan_out) {
  return normal_matrix(rng, fan_in, fan_out,
                       1.0 / std::sqrt(static_cast<double>(fan_in)));
}

void validate_arch(const ArchConfig& arch) {
  if (arch.data_dim == 0 || arch.num_classes == 0 || arch.z_dim == 0 ||
      arch.embed_dim == 0 || arch.map_hidden == 0 || arch.synth_hidden == 0 ||
      arch.trunk_hidden == 0)
    throw ContractError("arch: all layer sizes must be positive");
  if (arch.map_layers < 1 || arch.synth_layers < 1 || arch.trunk_layers < 1)
    throw ContractError("arch: all layer counts must be positive");
}

}  // namespace

std::vector<Tensor> GeneratorParams::parameters() const {
  std::vector<Tensor> out;
  for (std::size_t i = 0; i < style_w.size(); ++i) {
    out.push_back(style_w[i]);
    out.push_back(style_b[i]);
  }
  out.push_back(class_embedding_table);
  out.push_back(embed_proj_w);
  out.push_back(embed_proj_b);
  for (std::size_t i = 0; i < synth_w.size(); ++i) {
    out.push_back(synth_w[i]);
    out.push_back(synth_b[i]);
  }
  return out;
}

std::vector<Tensor> DiscriminatorParams::parameters() const {
  std::vector<Tensor> out;
  for (std::size_t i = 0; i < trunk_w.size(); ++i) {
    out.push_back(trunk_w[i]);
    out.push_back(trunk_b[i]);
  }
  out.push_back(uncond_w);
  out.push_back(uncond_b);
  out.push_back(class_projection_table);
  return out;
}

GeneratorParams init_generator(const ArchConfig& arch, Rng& rng) {
  validate_arch(arch);
  GeneratorParams g;
  std::size_t in = arch.z_dim;
  for (std::size_t l = 0; l < arch.map_layers; ++l) {
    g.style_w.push_back(layer_weight(rng, in, arch.map_hidden));
    g.style_b.push_back(zero_vector(arch.map_hidden));
    in = arch.map_hidden;
  }
  g.class_embedding_table =
      normal_matrix(rng, arch.num_classes, arch.embed_dim, 1.0);
  g.embed_proj_w = layer_weight(rng, arch.embed_dim, arch.map_hidden);
  g.embed_proj_b = zero_vector(arch.map_hidden);
  in = arch.map_hidden;
  for (std::size_t l = 0; l < arch.synth_layers; ++l) {
    const bool last = l + 1 == arch.synth_layers;
    const std::size_t out = last ? arch.data_dim : arch.synth_hidden;
    g.synth_w.push_back(layer_weight(rng, in, out));
    g.synth_b.push_back(zero_vector(out));
    in = out;
  }
  return g;
}

DiscriminatorParams init_discriminator(const ArchConfig& arch, Rng& rng) {
  validate_arch(arch);
  DiscriminatorParams d;
  std::size_t in = arch.data_dim;
  for (std::size_t l = 0; l < arch.trunk_layers; ++l) {
    d.trunk_w.push_back(layer_weight(rng, in, arch.trunk_hidden));
    d.trunk_b.push_back(zero_vector(arch.trunk_hidden));
    in = arch.trunk_hidden;
  }
  d.uncond_w = layer_weight(rng, arch.trunk_hidden, 1);
  d.uncond_b = zero_vector(1);
  d.class_projection_table =
      normal_matrix(rng, arch.num_classes, arch.trunk_hidden, 1.0);
  return d;
}

std::pair<GeneratorParams, DiscriminatorParams> init_params(
    const ArchConfig& arch, std::uint64_t seed) {
  Rng rng(seed, 2);  // the harness init stream
  GeneratorParams g = init_generator(arch, rng);
  DiscriminatorParams d = init_discriminator(arch, rng);
  return {std::move(g), std::move(d)};
}

Tensor generator_preactivation(Tape& tape, const GeneratorParams& params,
                               const ArchConfig& arch, const Tensor& z,
                               const std::vector<std::size_t>& labels,
                               double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw ContractError("generator_forward: lambda " + std::to_string(lambda) +
                        " outside [0, 1]");
  if (z.shape().size() != 2 || z.shape()[1] != arch.z_dim)
    throw DimensionError("generator_forward: latent batch " +
                         shape_str(z.shape()) + " does not match z_dim " +
                         std::to_string(arch.z_dim));
  if (labels.size() != z.shape()[0])
    throw ContractError("generator_forward: " + std::to_string(labels.size()) +
                        " labels for a batch of " +
                        std::to_string(z.shape()[0]));

  Tensor pre = ops::add_bias(tape, ops::matmul(tape, z, params.style_w[0]),
                             params.style_b[0]);
  Tensor embed = ops::embed_rows(tape, params.class_embedding_table, labels);
  Tensor proj = ops::add_bias(tape, ops::matmul(tape, embed, params.embed_proj_w),
                              params.embed_proj_b);
  return ops::add(tape, pre, ops::scale(tape, proj, lambda));
}

Tensor generator_forward(Tape& tape, const GeneratorParams& params,
                         const ArchConfig& arch, const Tensor& z,
                         const std::vector<std::size_t>& labels,
                         double lambda) {
  Tensor injected = generator_preactivation(tape, params, arch, z, labels, lambda);
  Tensor h = ops::leaky_relu(tape, injected, arch.leaky_alpha);
  for (std::size_t l = 1; l < params.style_w.size(); ++l) {
    h = ops::leaky_relu(
        tape,
        ops::add_bias(tape, ops::matmul(tape, h, params.style_w[l]),
                      params.style_b[l]),
        arch.leaky_alpha);
  }
  for (std::size_t l = 0; l < params.synth_w.size(); ++l) {
    h = ops::add_bias(tape, ops::matmul(tape, h, params.synth_w[l]),
                      params.synth_b[l]);
    if (l + 1 < params.synth_w.size())
      h = ops::leaky_relu(tape, h, arch.leaky_alpha);
  }
  return h;
}

Tensor trunk_features(Tape& tape, const DiscriminatorParams& params,
                      const ArchConfig& arch, const Tensor& x) {
  if (x.shape().size() != 2 || x.shape()[1] != arch.data_dim)
    throw DimensionError("discriminator: sample batch " + shape_str(x.shape()) +
                         " does not match data_dim " +
                         std::to_string(arch.data_dim));
  Tensor h = x;
  for (std::size_t l = 0; l < params.trunk_w.size(); ++l) {
    h = ops::leaky_relu(
        tape,
        ops::add_bias(tape, ops::matmul(tape, h, params.trunk_w[l]),
                      params.trunk_b[l]),
        arch.leaky_alpha);
  }
  return h;
}

Tensor uncond_score(Tape& tape, const DiscriminatorParams& params,
                    const Tensor& features) {
  return ops::add_bias(tape, ops::matmul(tape, features, params.uncond_w),
                       params.uncond_b);
}

std::pair<Tensor, Tensor> discriminator_forward(
    Tape& tape, const DiscriminatorParams& params, const ArchConfig& arch,
    const Tensor& x, const std::vector<std::size_t>& labels) {
  if (labels.size() != x.shape()[0])
    throw ContractError("discriminator_forward: " +
                        std::to_string(labels.size()) + " labels for a batch of " +
                        std::to_string(x.shape()[0]));
  Tensor features = trunk_features(tape, params, arch, x);
  Tensor u = uncond_score(tape, params, features);
  Tensor rows = ops::embed_rows(tape, params.class_projection_table, labels);
  Tensor c = ops::rowwise_dot(tape, features, rows);
  return {std::move(u), std::move(c)};
}

}  // namespace tcgan
