#pragma once

#include "tcgan/nets.hpp"
#include "tcgan/tensor.hpp"

namespace tcgan {

// How the unconditional and conditional branch losses combine:
// additive keeps the unconditional term at full weight for the whole run,
// convex fades it out as the conditional weight ramps in.
enum class Formulation { additive, convex };

struct LossTerms {
  Tensor d_uncond, d_cond, d_total;
  Tensor g_uncond, g_cond, g_total;
  Formulation formulation = Formulation::additive;
};

// Non-saturating logistic losses, averaged over the minibatch.
Tensor branch_d_loss(Tape& tape, const Tensor& real_scores,
                     const Tensor& fake_scores);
Tensor branch_g_loss(Tape& tape, const Tensor& fake_scores);

// total = uncond + lambda * cond (additive)
//       = (1 - lambda) * uncond + lambda * cond (convex)
Tensor combine_pair(Tape& tape, const Tensor& uncond, const Tensor& cond,
                    double lambda, Formulation formulation);

// All branch terms and totals from one batch of dual scores. Scores are
// [B x 1] tensors (unconditional, conditional) for real and fake samples.
LossTerms combined_losses(Tape& tape, const Tensor& real_uncond,
                          const Tensor& real_cond, const Tensor& fake_uncond,
                          const Tensor& fake_cond, double lambda,
                          Formulation formulation);

// weight/2 * mean_i |grad_x uncond_score(x_i)|^2, computed exactly via one
// backward pass with respect to the inputs. No parameter gradients are
// touched.
double r1_penalty(const DiscriminatorParams& params, const ArchConfig& arch,
                  const Tensor& real_batch, double weight);

// r1_penalty plus accumulation of its parameter gradient into the
// discriminator's grad slots. The Hessian-vector product is taken by central
// differencing the score along the input-gradient direction; exact (up to
// kink crossings) for the piecewise-linear trunk. Returns the penalty value.
double r1_apply(const DiscriminatorParams& params, const ArchConfig& arch,
                const Tensor& real_batch, double weight, double fd_eps = 1e-4);

}  // namespace tcgan
