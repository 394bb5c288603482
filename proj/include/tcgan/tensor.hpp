#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace tcgan {

struct TensorData {
  std::vector<std::size_t> shape;
  std::vector<double> data;   // row-major
  bool requires_grad = false;
  std::vector<double> grad;   // empty until first accumulation
};

// Shared handle to a dense float64 array with an attached gradient slot.
// Values are written once by the producing op; only grad mutates afterwards.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<std::size_t> shape, bool requires_grad = false);
  static Tensor full(std::vector<std::size_t> shape, double value,
                     bool requires_grad = false);
  static Tensor from(std::vector<std::size_t> shape, std::vector<double> values,
                     bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool valid() const { return static_cast<bool>(d_); }
  const std::vector<std::size_t>& shape() const { return d_->shape; }
  std::size_t size() const { return d_->data.size(); }
  std::size_t rows() const { return d_->shape[0]; }
  std::size_t cols() const { return d_->shape.size() > 1 ? d_->shape[1] : 1; }

  std::span<const double> data() const { return d_->data; }
  std::span<double> mutable_data() { return d_->data; }
  double at(std::size_t i) const { return d_->data[i]; }
  double at(std::size_t i, std::size_t j) const {
    return d_->data[i * cols() + j];
  }
  double value() const;  // scalar tensors only

  bool requires_grad() const { return d_->requires_grad; }
  void set_requires_grad(bool v) { d_->requires_grad = v; }

  bool has_grad() const { return !d_->grad.empty(); }
  std::span<const double> grad() const { return d_->grad; }
  std::span<double> mutable_grad() { return d_->grad; }
  void ensure_grad();
  void zero_grad();

  const std::shared_ptr<TensorData>& handle() const { return d_; }

 private:
  explicit Tensor(std::shared_ptr<TensorData> d) : d_(std::move(d)) {}
  std::shared_ptr<TensorData> d_;
};

// Ordered record of primitive ops. Inputs of every node precede it, so one
// reverse sweep propagates the loss gradient; backward() clears the tape.
class Tape {
 public:
  struct Node {
    std::vector<std::shared_ptr<TensorData>> inputs;
    std::shared_ptr<TensorData> output;
    std::function<void()> backward;
  };

  void record(std::vector<std::shared_ptr<TensorData>> inputs,
              std::shared_ptr<TensorData> output,
              std::function<void()> backward);

  // Seeds d(loss)/d(loss) = 1 and accumulates gradients into every
  // requires_grad tensor reachable from the loss. Throws ContractError if
  // the loss is not scalar.
  void backward(const Tensor& loss);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  void clear() { nodes_.clear(); }
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

std::string shape_str(const std::vector<std::size_t>& shape);

}  // namespace tcgan
