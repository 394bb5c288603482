#include "tcgan/tensor.hpp"

#include <sstream>

#include "tcgan/errors.hpp"

namespace tcgan {

namespace {

std::size_t checked_numel(const std::vector<std::size_t>& shape) {
  if (shape.empty()) throw ContractError("tensor shape must be non-empty");
  std::size_t n = 1;
  for (std::size_t dim : shape) {
    if (dim == 0) throw ContractError("tensor dimensions must be positive");
    n *= dim;
  }
  return n;
}

}  // namespace

std::string shape_str(const std::vector<std::size_t>& shape) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << "x";
    os << shape[i];
  }
  os << "]";
  return os.str();
}

Tensor Tensor::zeros(std::vector<std::size_t> shape, bool requires_grad) {
  const std::size_t n = checked_numel(shape);
  auto d = std::make_shared<TensorData>();
  d->shape = std::move(shape);
  d->data.assign(n, 0.0);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::full(std::vector<std::size_t> shape, double value,
                    bool requires_grad) {
  Tensor t = zeros(std::move(shape), requires_grad);
  for (double& x : t.mutable_data()) x = value;
  return t;
}

Tensor Tensor::from(std::vector<std::size_t> shape, std::vector<double> values,
                    bool requires_grad) {
  const std::size_t n = checked_numel(shape);
  if (n != values.size())
    throw DimensionError("tensor data length " + std::to_string(values.size()) +
                         " does not match shape " + shape_str(shape));
  auto d = std::make_shared<TensorData>();
  d->shape = std::move(shape);
  d->data = std::move(values);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from({1}, {value}, requires_grad);
}

double Tensor::value() const {
  if (size() != 1)
    throw ContractError("value() requires a scalar tensor, got shape " +
                        shape_str(shape()));
  return d_->data[0];
}

void Tensor::ensure_grad() {
  if (d_->grad.empty()) d_->grad.assign(d_->data.size(), 0.0);
}

void Tensor::zero_grad() {
  if (!d_->grad.empty()) d_->grad.assign(d_->data.size(), 0.0);
}

void Tape::record(std::vector<std::shared_ptr<TensorData>> inputs,
                  std::shared_ptr<TensorData> output,
                  std::function<void()> backward) {
  nodes_.push_back(Node{std::move(inputs), std::move(output), std::move(backward)});
}

void Tape::backward(const Tensor& loss) {
  if (!loss.valid() || loss.size() != 1)
    throw ContractError("backward requires a scalar loss tensor");
  auto ld = loss.handle();
  if (ld->grad.empty()) ld->grad.assign(1, 0.0);
  ld->grad[0] += 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) it->backward();
  nodes_.clear();
}

}  // namespace tcgan
