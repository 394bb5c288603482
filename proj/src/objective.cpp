#include "tcgan/objective.hpp"

#include <vector>

#include "tcgan/errors.hpp"
#include "tcgan/ops.hpp"

namespace tcgan {

namespace {

// Temporarily drops requires_grad on the discriminator parameters so a
// backward pass reaches only the inputs.
class ParamFreeze {
 public:
  explicit ParamFreeze(const DiscriminatorParams& params)
      : params_(params.parameters()) {
    for (auto& p : params_) p.set_requires_grad(false);
  }
  ~ParamFreeze() {
    for (auto& p : params_) p.set_requires_grad(true);
  }

 private:
  std::vector<Tensor> params_;
};

// Per-sample gradient of the unconditional score with respect to the inputs.
std::vector<double> input_score_gradient(const DiscriminatorParams& params,
                                         const ArchConfig& arch,
                                         const Tensor& real_batch) {
  ParamFreeze freeze(params);
  Tape tape;
  Tensor x = Tensor::from(real_batch.shape(),
                          {real_batch.data().begin(), real_batch.data().end()},
                          true);
  Tensor score_sum =
      ops::sum(tape, uncond_score(tape, params, trunk_features(tape, params, arch, x)));
  tape.backward(score_sum);
  return {x.grad().begin(), x.grad().end()};
}

}  // namespace

Tensor branch_d_loss(Tape& tape, const Tensor& real_scores,
                     const Tensor& fake_scores) {
  Tensor real_term =
      ops::mean(tape, ops::softplus(tape, ops::scale(tape, real_scores, -1.0)));
  Tensor fake_term = ops::mean(tape, ops::softplus(tape, fake_scores));
  return ops::add(tape, real_term, fake_term);
}

Tensor branch_g_loss(Tape& tape, const Tensor& fake_scores) {
  return ops::mean(tape,
                   ops::softplus(tape, ops::scale(tape, fake_scores, -1.0)));
}

Tensor combine_pair(Tape& tape, const Tensor& uncond, const Tensor& cond,
                    double lambda, Formulation formulation) {
  switch (formulation) {
    case Formulation::additive:
      return ops::add(tape, uncond, ops::scale(tape, cond, lambda));
    case Formulation::convex:
      return ops::add(tape, ops::scale(tape, uncond, 1.0 - lambda),
                      ops::scale(tape, cond, lambda));
  }
  throw ContractError("combine_pair: unknown formulation");
}

LossTerms combined_losses(Tape& tape, const Tensor& real_uncond,
                          const Tensor& real_cond, const Tensor& fake_uncond,
                          const Tensor& fake_cond, double lambda,
                          Formulation formulation) {
  if (real_uncond.shape() != real_cond.shape() ||
      fake_uncond.shape() != fake_cond.shape())
    throw ContractError("combined_losses: score batches disagree");
  LossTerms t;
  t.formulation = formulation;
  t.d_uncond = branch_d_loss(tape, real_uncond, fake_uncond);
  t.d_cond = branch_d_loss(tape, real_cond, fake_cond);
  t.g_uncond = branch_g_loss(tape, fake_uncond);
  t.g_cond = branch_g_loss(tape, fake_cond);
  t.d_total = combine_pair(tape, t.d_uncond, t.d_cond, lambda, formulation);
  t.g_total = combine_pair(tape, t.g_uncond, t.g_cond, lambda, formulation);
  return t;
}

double r1_penalty(const DiscriminatorParams& params, const ArchConfig& arch,
                  const Tensor& real_batch, double weight) {
  if (weight < 0.0) throw ContractError("r1_penalty: weight must be >= 0");
  if (weight == 0.0) return 0.0;
  const auto grad = input_score_gradient(params, arch, real_batch);
  const std::size_t batch = real_batch.shape()[0];
  double sum_sq = 0.0;
  for (double g : grad) sum_sq += g * g;
  return 0.5 * weight * sum_sq / static_cast<double>(batch);
}

double r1_apply(const DiscriminatorParams& params, const ArchConfig& arch,
                const Tensor& real_batch, double weight, double fd_eps) {
  if (weight < 0.0) throw ContractError("r1_apply: weight must be >= 0");
  if (weight == 0.0) return 0.0;
  const auto grad = input_score_gradient(params, arch, real_batch);
  const std::size_t batch = real_batch.shape()[0];
  double sum_sq = 0.0;
  for (double g : grad) sum_sq += g * g;
  const double value = 0.5 * weight * sum_sq / static_cast<double>(batch);

  // d(penalty)/d(theta) = weight * mean_i (d grad_i / d theta)^T grad_i,
  // realized as the theta-gradient of the centered difference of scores at
  // x +- eps*grad. The perturbed inputs are constants here.
  std::vector<double> plus(real_batch.data().begin(), real_batch.data().end());
  std::vector<double> minus = plus;
  for (std::size_t i = 0; i < plus.size(); ++i) {
    plus[i] += fd_eps * grad[i];
    minus[i] -= fd_eps * grad[i];
  }
  Tape tape;
  Tensor xp = Tensor::from(real_batch.shape(), std::move(plus));
  Tensor xm = Tensor::from(real_batch.shape(), std::move(minus));
  Tensor sp =
      ops::mean(tape, uncond_score(tape, params, trunk_features(tape, params, arch, xp)));
  Tensor sm =
      ops::mean(tape, uncond_score(tape, params, trunk_features(tape, params, arch, xm)));
  Tensor objective =
      ops::scale(tape, ops::sub(tape, sp, sm), weight / (2.0 * fd_eps));
  tape.backward(objective);
  return value;
}

}  // namespace tcgan
