// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lumi/descriptors.hpp"
#include "lumi/image.hpp"

namespace lumi {

/// Input channel count of each head branch: 8 point + 8 mesh features plus
/// the two occupancy mask channels.
inline constexpr int kHeadInputChannels = 2 * DescriptorSet::kChannels + 2;

/// Two-branch linear head: each branch maps its 18-channel feature pixel
/// through a hidden relu layer; the concatenated hidden units share one
/// linear output layer producing RGB.
struct RenderHeadParams {
    int hidden = 16;
    std::vector<double> w_fg;   // kHeadInputChannels x hidden, row-major
    std::vector<double> w_bg;   // kHeadInputChannels x hidden
    std::vector<double> w_out;  // (2 * hidden) x 3
    std::vector<double> b_out;  // 3

    RenderHeadParams() = default;
    explicit RenderHeadParams(int hidden_dim)
        : hidden(hidden_dim),
          w_fg(static_cast<std::size_t>(kHeadInputChannels) * hidden_dim, 0.0),
          w_bg(static_cast<std::size_t>(kHeadInputChannels) * hidden_dim, 0.0),
          w_out(static_cast<std::size_t>(2 * hidden_dim) * 3, 0.0),
          b_out(3, 0.0) {}
};

/// Gradients produced by backward_to_inputs: one image per branch (same
/// shape as the branch input) and one parameter-shaped accumulator.
struct HeadGradients {
    FeatureImage fg;
    FeatureImage bg;
    RenderHeadParams params;
};

/// Per pixel: rgb = [relu(fg . W_fg), relu(bg . W_bg)] . W_out + b_out.
/// Output values are unbounded; clamping happens only at image export.
Image render_head_forward(const FeatureImage& fg, const FeatureImage& bg,
                          const RenderHeadParams& params);

/// Chain rule through render_head_forward. Parameter gradients accumulate
/// over pixels in row-major order.
HeadGradients backward_to_inputs(const Image& grad_rgb, const FeatureImage& fg,
                                 const FeatureImage& bg, const RenderHeadParams& params);

} // namespace lumi
