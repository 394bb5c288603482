#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tcgan/rng.hpp"
#include "tcgan/tensor.hpp"

namespace tcgan {

struct ArchConfig {
  std::size_t data_dim = 2;
  std::size_t num_classes = 8;
  std::size_t z_dim = 8;
  std::size_t embed_dim = 8;
  std::size_t map_hidden = 64;
  std::size_t map_layers = 2;
  std::size_t synth_hidden = 64;
  std::size_t synth_layers = 3;
  std::size_t trunk_hidden = 64;
  std::size_t trunk_layers = 3;
  double leaky_alpha = 0.2;
};

// Mapping network (z to style code), class embedding with its projection
// layer, and the synthesis stack. The class pathway joins the mapping
// network after its first layer, scaled by the transition value.
struct GeneratorParams {
  std::vector<Tensor> style_w, style_b;
  Tensor class_embedding_table;  // [num_classes x embed_dim]
  Tensor embed_proj_w;           // [embed_dim x map_hidden]
  Tensor embed_proj_b;           // [map_hidden]
  std::vector<Tensor> synth_w, synth_b;

  std::vector<Tensor> parameters() const;
};

// Shared trunk with two score heads: an affine unconditional head and a
// bias-free projection head (feature dot class embedding).
struct DiscriminatorParams {
  std::vector<Tensor> trunk_w, trunk_b;
  Tensor uncond_w;                 // [feat x 1]
  Tensor uncond_b;                 // [1]
  Tensor class_projection_table;   // [num_classes x feat]

  std::vector<Tensor> parameters() const;
};

GeneratorParams init_generator(const ArchConfig& arch, Rng& rng);
DiscriminatorParams init_discriminator(const ArchConfig& arch, Rng& rng);
std::pair<GeneratorParams, DiscriminatorParams> init_params(
    const ArchConfig& arch, std::uint64_t seed);

// The injected first-layer pre-activation S1(z) + lambda * E(c), [B x map_hidden].
Tensor generator_preactivation(Tape& tape, const GeneratorParams& params,
                               const ArchConfig& arch, const Tensor& z,
                               const std::vector<std::size_t>& labels,
                               double lambda);

// First style pre-activation S1(z) + lambda * E(c), then the remaining
// mapping and synthesis layers. Batched: z is [B x z_dim], one label per row.
Tensor generator_forward(Tape& tape, const GeneratorParams& params,
                         const ArchConfig& arch, const Tensor& z,
                         const std::vector<std::size_t>& labels, double lambda);

// Trunk features for a batch of samples, [B x feat].
Tensor trunk_features(Tape& tape, const DiscriminatorParams& params,
                      const ArchConfig& arch, const Tensor& x);

Tensor uncond_score(Tape& tape, const DiscriminatorParams& params,
                    const Tensor& features);

// (unconditional score, conditional projection score), each [B x 1].
std::pair<Tensor, Tensor> discriminator_forward(
    Tape& tape, const DiscriminatorParams& params, const ArchConfig& arch,
    const Tensor& x, const std::vector<std::size_t>& labels);

}  // namespace tcgan
