#include "tcgan/ops.hpp"

#include <cmath>
#include <string>

#include "tcgan/errors.hpp"
#include "tcgan/kernels.hpp"

namespace tcgan::ops {

namespace {

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape())
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         shape_str(a.shape()) + " vs " + shape_str(b.shape()));
}

void require_matrix(const Tensor& t, const char* op) {
  if (t.shape().size() != 2)
    throw DimensionError(std::string(op) + ": expected a 2-D tensor, got " +
                         shape_str(t.shape()));
}

// Propagates requires_grad and records the node if anything needs gradients.
void finalize(Tape& tape, Tensor& out,
              std::vector<std::shared_ptr<TensorData>> inputs,
              std::function<void()> backward) {
  bool needs = false;
  for (const auto& in : inputs) needs = needs || in->requires_grad;
  if (!needs) return;
  out.set_requires_grad(true);
  tape.record(std::move(inputs), out.handle(), std::move(backward));
}

}  // namespace

double softplus_value(double x) {
  if (x > 30.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double logistic_value(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b) {
  require_matrix(a, "matmul");
  require_matrix(b, "matmul");
  if (a.shape()[1] != b.shape()[0])
    throw DimensionError("matmul: inner dimensions disagree, " +
                         shape_str(a.shape()) + " vs " + shape_str(b.shape()));
  const std::size_t m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
  Tensor out = Tensor::zeros({m, n});
  kernels::matmul_nn(a.data().data(), b.data().data(),
                     out.mutable_data().data(), m, k, n);
  auto ad = a.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {ad, bd}, [ad, bd, od, m, k, n] {
    if (od->grad.empty()) return;
    const double* g = od->grad.data();
    if (ad->requires_grad) {
      if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
      // dA += G * B^T
      kernels::matmul_nt(g, bd->data.data(), ad->grad.data(), m, n, k, true);
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      // dB += A^T * G
      kernels::matmul_tn(ad->data.data(), g, bd->grad.data(), k, m, n, true);
    }
  });
  return out;
}

Tensor add(Tape& tape, const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  Tensor out = Tensor::zeros(a.shape());
  const auto av = a.data(), bv = b.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] + bv[i];
  auto ad = a.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {ad, bd}, [ad, bd, od] {
    if (od->grad.empty()) return;
    const auto& g = od->grad;
    if (ad->requires_grad) {
      if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) ad->grad[i] += g[i];
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) bd->grad[i] += g[i];
    }
  });
  return out;
}

Tensor sub(Tape& tape, const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  Tensor out = Tensor::zeros(a.shape());
  const auto av = a.data(), bv = b.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] - bv[i];
  auto ad = a.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {ad, bd}, [ad, bd, od] {
    if (od->grad.empty()) return;
    const auto& g = od->grad;
    if (ad->requires_grad) {
      if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) ad->grad[i] += g[i];
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) bd->grad[i] -= g[i];
    }
  });
  return out;
}

Tensor mul(Tape& tape, const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  Tensor out = Tensor::zeros(a.shape());
  const auto av = a.data(), bv = b.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * bv[i];
  auto ad = a.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {ad, bd}, [ad, bd, od] {
    if (od->grad.empty()) return;
    const auto& g = od->grad;
    if (ad->requires_grad) {
      if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) ad->grad[i] += g[i] * bd->data[i];
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) bd->grad[i] += g[i] * ad->data[i];
    }
  });
  return out;
}

Tensor scale(Tape& tape, const Tensor& a, double s) {
  Tensor out = Tensor::zeros(a.shape());
  const auto av = a.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = av[i] * s;
  auto ad = a.handle(), od = out.handle();
  finalize(tape, out, {ad}, [ad, od, s] {
    if (od->grad.empty() || !ad->requires_grad) return;
    if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
    for (std::size_t i = 0; i < od->grad.size(); ++i)
      ad->grad[i] += od->grad[i] * s;
  });
  return out;
}

Tensor add_bias(Tape& tape, const Tensor& x, const Tensor& b) {
  require_matrix(x, "add_bias");
  if (b.shape().size() != 1 || b.shape()[0] != x.shape()[1])
    throw DimensionError("add_bias: bias " + shape_str(b.shape()) +
                         " does not match matrix " + shape_str(x.shape()));
  const std::size_t m = x.shape()[0], n = x.shape()[1];
  Tensor out = Tensor::zeros({m, n});
  const auto xv = x.data(), bv = b.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) ov[i * n + j] = xv[i * n + j] + bv[j];
  auto xd = x.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {xd, bd}, [xd, bd, od, m, n] {
    if (od->grad.empty()) return;
    const auto& g = od->grad;
    if (xd->requires_grad) {
      if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
      for (std::size_t i = 0; i < g.size(); ++i) xd->grad[i] += g[i];
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) bd->grad[j] += g[i * n + j];
    }
  });
  return out;
}

Tensor leaky_relu(Tape& tape, const Tensor& x, double alpha) {
  Tensor out = Tensor::zeros(x.shape());
  const auto xv = x.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i)
    ov[i] = xv[i] > 0.0 ? xv[i] : alpha * xv[i];
  auto xd = x.handle(), od = out.handle();
  finalize(tape, out, {xd}, [xd, od, alpha] {
    if (od->grad.empty() || !xd->requires_grad) return;
    if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
    for (std::size_t i = 0; i < od->grad.size(); ++i)
      xd->grad[i] += od->grad[i] * (xd->data[i] > 0.0 ? 1.0 : alpha);
  });
  return out;
}

Tensor softplus(Tape& tape, const Tensor& x) {
  Tensor out = Tensor::zeros(x.shape());
  const auto xv = x.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = softplus_value(xv[i]);
  auto xd = x.handle(), od = out.handle();
  finalize(tape, out, {xd}, [xd, od] {
    if (od->grad.empty() || !xd->requires_grad) return;
    if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
    for (std::size_t i = 0; i < od->grad.size(); ++i)
      xd->grad[i] += od->grad[i] * logistic_value(xd->data[i]);
  });
  return out;
}

Tensor tanh(Tape& tape, const Tensor& x) {
  Tensor out = Tensor::zeros(x.shape());
  const auto xv = x.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ov.size(); ++i) ov[i] = std::tanh(xv[i]);
  auto xd = x.handle(), od = out.handle();
  finalize(tape, out, {xd}, [xd, od] {
    if (od->grad.empty() || !xd->requires_grad) return;
    if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
    for (std::size_t i = 0; i < od->grad.size(); ++i) {
      const double t = od->data[i];
      xd->grad[i] += od->grad[i] * (1.0 - t * t);
    }
  });
  return out;
}

Tensor sum(Tape& tape, const Tensor& x) {
  double total = 0.0;
  for (double v : x.data()) total += v;
  Tensor out = Tensor::scalar(total);
  auto xd = x.handle(), od = out.handle();
  finalize(tape, out, {xd}, [xd, od] {
    if (od->grad.empty() || !xd->requires_grad) return;
    if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
    const double g = od->grad[0];
    for (double& gi : xd->grad) gi += g;
  });
  return out;
}

Tensor mean(Tape& tape, const Tensor& x) {
  double total = 0.0;
  for (double v : x.data()) total += v;
  const double inv_n = 1.0 / static_cast<double>(x.size());
  Tensor out = Tensor::scalar(total * inv_n);
  auto xd = x.handle(), od = out.handle();
  finalize(tape, out, {xd}, [xd, od, inv_n] {
    if (od->grad.empty() || !xd->requires_grad) return;
    if (xd->grad.empty()) xd->grad.assign(xd->data.size(), 0.0);
    const double g = od->grad[0] * inv_n;
    for (double& gi : xd->grad) gi += g;
  });
  return out;
}

Tensor embed_rows(Tape& tape, const Tensor& table,
                  const std::vector<std::size_t>& ids) {
  require_matrix(table, "embed_rows");
  const std::size_t rows = table.shape()[0], d = table.shape()[1];
  for (std::size_t id : ids)
    if (id >= rows)
      throw IndexError("embed_rows: id " + std::to_string(id) +
                       " out of range for table with " + std::to_string(rows) +
                       " rows");
  if (ids.empty()) throw ContractError("embed_rows: empty id list");
  Tensor out = Tensor::zeros({ids.size(), d});
  const auto tv = table.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) ov[i * d + j] = tv[ids[i] * d + j];
  auto td = table.handle(), od = out.handle();
  finalize(tape, out, {td}, [td, od, ids, d] {
    if (od->grad.empty() || !td->requires_grad) return;
    if (td->grad.empty()) td->grad.assign(td->data.size(), 0.0);
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < d; ++j)
        td->grad[ids[i] * d + j] += od->grad[i * d + j];
  });
  return out;
}

Tensor rowwise_dot(Tape& tape, const Tensor& a, const Tensor& b) {
  require_matrix(a, "rowwise_dot");
  require_same_shape(a, b, "rowwise_dot");
  const std::size_t m = a.shape()[0], n = a.shape()[1];
  Tensor out = Tensor::zeros({m, 1});
  const auto av = a.data(), bv = b.data();
  auto ov = out.mutable_data();
  for (std::size_t i = 0; i < m; ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < n; ++j) dot += av[i * n + j] * bv[i * n + j];
    ov[i] = dot;
  }
  auto ad = a.handle(), bd = b.handle(), od = out.handle();
  finalize(tape, out, {ad, bd}, [ad, bd, od, m, n] {
    if (od->grad.empty()) return;
    const auto& g = od->grad;
    if (ad->requires_grad) {
      if (ad->grad.empty()) ad->grad.assign(ad->data.size(), 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          ad->grad[i * n + j] += g[i] * bd->data[i * n + j];
    }
    if (bd->requires_grad) {
      if (bd->grad.empty()) bd->grad.assign(bd->data.size(), 0.0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
          bd->grad[i * n + j] += g[i] * ad->data[i * n + j];
    }
  });
  return out;
}

}  // namespace tcgan::ops
