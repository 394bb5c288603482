#pragma once

#include <cstddef>
#include <vector>

#include "tcgan/tensor.hpp"

namespace tcgan::ops {

// Primitive differentiable ops. Each records a tape node when any input
// requires gradients; backward rules accumulate into input grad slots.

Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b);

Tensor add(Tape& tape, const Tensor& a, const Tensor& b);
Tensor sub(Tape& tape, const Tensor& a, const Tensor& b);
Tensor mul(Tape& tape, const Tensor& a, const Tensor& b);
Tensor scale(Tape& tape, const Tensor& a, double s);

// x[m x n] + b[n], broadcast over rows
Tensor add_bias(Tape& tape, const Tensor& x, const Tensor& b);

Tensor leaky_relu(Tape& tape, const Tensor& x, double alpha = 0.2);
Tensor softplus(Tape& tape, const Tensor& x);
Tensor tanh(Tape& tape, const Tensor& x);

Tensor sum(Tape& tape, const Tensor& x);
Tensor mean(Tape& tape, const Tensor& x);

// out[i] = table[ids[i]]; backward scatters into the table rows
Tensor embed_rows(Tape& tape, const Tensor& table,
                  const std::vector<std::size_t>& ids);

// out[i] = dot(a[i], b[i]) for two [m x n] tensors, result [m x 1]
Tensor rowwise_dot(Tape& tape, const Tensor& a, const Tensor& b);

// overflow-safe scalar forms shared with the backward rules
double softplus_value(double x);
double logistic_value(double x);

}  // namespace tcgan::ops
