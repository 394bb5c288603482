#include "tcgan/adam.hpp"

#include <cmath>
#include <string>

#include "tcgan/errors.hpp"

namespace tcgan {

AdamState make_adam_state(std::span<const Tensor> params, double learning_rate,
                          double beta1, double beta2, double epsilon) {
  AdamState s;
  s.learning_rate = learning_rate;
  s.beta1 = beta1;
  s.beta2 = beta2;
  s.epsilon = epsilon;
  s.first_moment.reserve(params.size());
  s.second_moment.reserve(params.size());
  for (const Tensor& p : params) {
    s.first_moment.emplace_back(p.size(), 0.0);
    s.second_moment.emplace_back(p.size(), 0.0);
  }
  return s;
}

void adam_step(std::span<Tensor> params, AdamState& state) {
  if (params.size() != state.first_moment.size())
    throw ContractError("adam_step: state tracks " +
                        std::to_string(state.first_moment.size()) +
                        " parameters, got " + std::to_string(params.size()));
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, state.step_count);
  const double bc2 = 1.0 - std::pow(state.beta2, state.step_count);
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor& param = params[p];
    auto& m = state.first_moment[p];
    auto& v = state.second_moment[p];
    if (m.size() != param.size())
      throw ContractError("adam_step: moment size " + std::to_string(m.size()) +
                          " does not match parameter size " +
                          std::to_string(param.size()));
    auto values = param.mutable_data();
    const auto grad = param.grad();
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double g = grad.empty() ? 0.0 : grad[i];
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g;
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g * g;
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      values[i] -= state.learning_rate * m_hat / (std::sqrt(v_hat) + state.epsilon);
    }
  }
}

}  // namespace tcgan
