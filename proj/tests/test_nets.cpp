#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "tcgan/errors.hpp"
#include "tcgan/nets.hpp"
#include "tcgan/objective.hpp"
#include "tcgan/ops.hpp"

using namespace tcgan;

namespace {

ArchConfig small_arch() {
  ArchConfig arch;
  arch.data_dim = 2;
  arch.num_classes = 4;
  arch.z_dim = 4;
  arch.embed_dim = 4;
  arch.map_hidden = 16;
  arch.map_layers = 2;
  arch.synth_hidden = 16;
  arch.synth_layers = 2;
  arch.trunk_hidden = 16;
  arch.trunk_layers = 2;
  return arch;
}

Tensor random_latents(Rng& rng, std::size_t batch, std::size_t z_dim) {
  Tensor z = Tensor::zeros({batch, z_dim});
  for (double& v : z.mutable_data()) v = rng.normal();
  return z;
}

bool bit_equal(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("lambda zero masks the class entirely") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 11);
  Rng rng(3);
  Tensor z = random_latents(rng, 6, arch.z_dim);
  Tape tape;
  Tensor out_a = generator_forward(tape, gen, arch, z, {0, 1, 2, 3, 0, 1}, 0.0);
  Tensor out_b = generator_forward(tape, gen, arch, z, {3, 2, 1, 0, 2, 2}, 0.0);
  CHECK(bit_equal(out_a.data(), out_b.data()));
}

TEST_CASE("lambda one separates distinct classes") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 12);
  Rng rng(4);
  Tensor z = random_latents(rng, 5, arch.z_dim);
  Tape tape;
  Tensor out_a = generator_forward(tape, gen, arch, z, {0, 0, 0, 0, 0}, 1.0);
  Tensor out_b = generator_forward(tape, gen, arch, z, {1, 1, 1, 1, 1}, 1.0);
  double linf = 0.0;
  for (std::size_t i = 0; i < out_a.size(); ++i)
    linf = std::max(linf, std::abs(out_a.data()[i] - out_b.data()[i]));
  CHECK(linf > 0.0);
}

TEST_CASE("injection is exactly linear in lambda on integer-valued params") {
  ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 13);
  // integer weights make the halves exactly representable
  auto make_integral = [](Tensor t) {
    for (double& v : t.mutable_data()) v = std::floor(4.0 * v);
  };
  make_integral(gen.style_w[0]);
  make_integral(gen.style_b[0]);
  make_integral(gen.class_embedding_table);
  make_integral(gen.embed_proj_w);
  make_integral(gen.embed_proj_b);
  Tensor z = Tensor::from({1, 4}, {1.0, 2.0, -1.0, 3.0});
  Tape tape;
  const std::vector<std::size_t> label{2};
  Tensor at0 = generator_preactivation(tape, gen, arch, z, label, 0.0);
  Tensor at1 = generator_preactivation(tape, gen, arch, z, label, 1.0);
  Tensor at_half = generator_preactivation(tape, gen, arch, z, label, 0.5);
  for (std::size_t i = 0; i < at0.size(); ++i) {
    const double lhs = at_half.data()[i] - at0.data()[i];
    const double rhs = 0.5 * (at1.data()[i] - at0.data()[i]);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("injection linearity holds to round-off on random params") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 14);
  Rng rng(5);
  Tensor z = random_latents(rng, 3, arch.z_dim);
  Tape tape;
  const std::vector<std::size_t> labels{1, 2, 3};
  Tensor at0 = generator_preactivation(tape, gen, arch, z, labels, 0.0);
  Tensor at1 = generator_preactivation(tape, gen, arch, z, labels, 1.0);
  for (const double lam : {0.25, 0.5, 0.75}) {
    Tensor at = generator_preactivation(tape, gen, arch, z, labels, lam);
    for (std::size_t i = 0; i < at.size(); ++i) {
      const double lhs = at.data()[i] - at0.data()[i];
      const double rhs = lam * (at1.data()[i] - at0.data()[i]);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("unconditional equivalence: lambda 0 equals the embedding-free path") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 15);
  Rng rng(6);
  Tensor z = random_latents(rng, 4, arch.z_dim);
  Tape tape;
  Tensor with_path =
      generator_forward(tape, gen, arch, z, {0, 1, 2, 3}, 0.0);
  // same network with the embedding pathway deleted
  Tensor h = ops::add_bias(tape, ops::matmul(tape, z, gen.style_w[0]),
                           gen.style_b[0]);
  h = ops::leaky_relu(tape, h, arch.leaky_alpha);
  for (std::size_t l = 1; l < gen.style_w.size(); ++l)
    h = ops::leaky_relu(
        tape,
        ops::add_bias(tape, ops::matmul(tape, h, gen.style_w[l]), gen.style_b[l]),
        arch.leaky_alpha);
  for (std::size_t l = 0; l < gen.synth_w.size(); ++l) {
    h = ops::add_bias(tape, ops::matmul(tape, h, gen.synth_w[l]), gen.synth_b[l]);
    if (l + 1 < gen.synth_w.size()) h = ops::leaky_relu(tape, h, arch.leaky_alpha);
  }
  CHECK(bit_equal(with_path.data(), h.data()));
}

TEST_CASE("generator output is continuous in lambda") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 16);
  Rng rng(7);
  Tensor z = random_latents(rng, 4, arch.z_dim);
  Tape tape;
  const std::vector<std::size_t> labels{0, 1, 2, 3};
  const double lam = 0.4, delta = 1e-6, probe = 1e-3;
  auto sup_diff = [&](double a, double b) {
    Tensor ya = generator_forward(tape, gen, arch, z, labels, a);
    Tensor yb = generator_forward(tape, gen, arch, z, labels, b);
    double m = 0.0;
    for (std::size_t i = 0; i < ya.size(); ++i)
      m = std::max(m, std::abs(ya.data()[i] - yb.data()[i]));
    return m;
  };
  const double slope = sup_diff(lam, lam + probe) / probe;
  CHECK(sup_diff(lam, lam + delta) <= (slope + 1.0) * delta * 10.0);
}

TEST_CASE("projection head: zero row, orthogonal feature, duplicate rows") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 17);
  Rng rng(8);
  Tensor x = random_latents(rng, 3, arch.data_dim);

  // zero embedding row scores zero for every sample
  for (std::size_t j = 0; j < arch.trunk_hidden; ++j)
    disc.class_projection_table.mutable_data()[0 * arch.trunk_hidden + j] = 0.0;
  Tape tape;
  auto [u0, c0] = discriminator_forward(tape, disc, arch, x, {0, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(c0.data()[i] == 0.0);

  // a row built to be exactly orthogonal to one feature vector
  Tensor features = trunk_features(tape, disc, arch, x);
  auto table = disc.class_projection_table.mutable_data();
  const double f0 = features.at(0, 0), f1 = features.at(0, 1);
  for (std::size_t j = 0; j < arch.trunk_hidden; ++j)
    table[1 * arch.trunk_hidden + j] = 0.0;
  table[1 * arch.trunk_hidden + 0] = f1;
  table[1 * arch.trunk_hidden + 1] = -f0;
  auto [u1, c1] = discriminator_forward(tape, disc, arch, x, {1, 1, 1});
  CHECK(c1.data()[0] == 0.0);

  // duplicate rows make the two class ids indistinguishable
  for (std::size_t j = 0; j < arch.trunk_hidden; ++j)
    table[2 * arch.trunk_hidden + j] = table[3 * arch.trunk_hidden + j];
  auto [u2, c2] = discriminator_forward(tape, disc, arch, x, {2, 2, 2});
  auto [u3, c3] = discriminator_forward(tape, disc, arch, x, {3, 3, 3});
  CHECK(bit_equal(c2.data(), c3.data()));
  CHECK(bit_equal(u2.data(), u3.data()));
}

TEST_CASE("dual-head independence: unconditional loss ignores the projection table") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 18);
  Rng rng(9);
  Tensor real = random_latents(rng, 8, arch.data_dim);
  Tensor fake = random_latents(rng, 8, arch.data_dim);
  Tape tape;
  auto [ru, rc] = discriminator_forward(tape, disc, arch, real,
                                        std::vector<std::size_t>(8, 1));
  auto [fu, fc] = discriminator_forward(tape, disc, arch, fake,
                                        std::vector<std::size_t>(8, 2));
  Tensor loss = branch_d_loss(tape, ru, fu);
  for (auto& p : disc.parameters()) p.zero_grad();
  tape.backward(loss);
  if (disc.class_projection_table.has_grad())
    for (double g : disc.class_projection_table.grad()) CHECK(g == 0.0);
  // trunk does receive gradient through the unconditional head
  bool any_nonzero = false;
  for (double g : disc.trunk_w[0].grad()) any_nonzero = any_nonzero || g != 0.0;
  CHECK(any_nonzero);
}

TEST_CASE("init: determinism, seed sensitivity, fan-in scaling") {
  const ArchConfig arch = small_arch();
  auto [g1, d1] = init_params(arch, 5);
  auto [g2, d2] = init_params(arch, 5);
  CHECK(bit_equal(g1.style_w[0].data(), g2.style_w[0].data()));
  CHECK(bit_equal(d1.class_projection_table.data(),
                  d2.class_projection_table.data()));
  auto [g3, d3] = init_params(arch, 6);
  CHECK_FALSE(bit_equal(g1.style_w[0].data(), g3.style_w[0].data()));

  ArchConfig wide = arch;
  wide.z_dim = 256;
  wide.map_hidden = 256;
  Rng rng(10, 2);
  GeneratorParams big = init_generator(wide, rng);
  double sum = 0.0, sum_sq = 0.0;
  for (double v : big.style_w[1].data()) {  // fan-in 256 layer
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(big.style_w[1].size());
  const double std = std::sqrt(sum_sq / n - (sum / n) * (sum / n));
  CHECK(std > 0.8 / 16.0);
  CHECK(std < 1.2 / 16.0);
}

TEST_CASE("contract errors: class ids and lambda range") {
  const ArchConfig arch = small_arch();
  auto [gen, disc] = init_params(arch, 19);
  Rng rng(11);
  Tensor z = random_latents(rng, 2, arch.z_dim);
  Tape tape;
  CHECK_THROWS_AS(generator_forward(tape, gen, arch, z, {0, 99}, 1.0),
                  IndexError);
  CHECK_THROWS_AS(generator_forward(tape, gen, arch, z, {0, 1}, 1.5),
                  ContractError);
  CHECK_THROWS_AS(generator_forward(tape, gen, arch, z, {0, 1}, -0.1),
                  ContractError);
  Tensor x = random_latents(rng, 2, arch.data_dim);
  CHECK_THROWS_AS(discriminator_forward(tape, disc, arch, x, {4, 0}),
                  IndexError);
}
