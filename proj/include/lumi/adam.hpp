// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lumi {

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEpsilon = 1e-8;

/// Moment buffers for one parameter tensor.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t t = 0;

    AdamState() = default;
    explicit AdamState(std::size_t size) : m(size, 0.0), v(size, 0.0) {}
};

/// One bias-corrected Adam update, in place.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               double lr);

} // namespace lumi
