// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/adam.hpp"

#include <cmath>
#include <string>

#include "lumi/error.hpp"

namespace lumi {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr) {
    if (params.size() != grads.size() || params.size() != state.m.size() ||
        params.size() != state.v.size())
        throw ShapeMismatch("params " + std::to_string(params.size()) + ", grads " +
                            std::to_string(grads.size()) + ", state " +
                            std::to_string(state.m.size()));

    state.t += 1;
    const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(state.t));
    const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = kAdamBeta1 * state.m[i] + (1.0 - kAdamBeta1) * grads[i];
        state.v[i] = kAdamBeta2 * state.v[i] + (1.0 - kAdamBeta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bias1;
        const double v_hat = state.v[i] / bias2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
    }
}

}  // namespace lumi
