// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lumi/adam.hpp"
#include "lumi/descriptors.hpp"
#include "lumi/geometry.hpp"
#include "lumi/image.hpp"
#include "lumi/render_head.hpp"

namespace lumi {

struct FitConfig {
    int epochs = 100;
    double lr_descriptors = 0.1;
    double lr_head = 1e-4;
    std::uint64_t seed = 0;
    double point_radius = 0.006;
    int head_hidden = 16;
    double descriptor_init_std = 0.1;
    // Zeroes every l >= 1 coefficient and its gradients, leaving the RNG
    // stream untouched so ablation runs stay seed-comparable.
    bool band0_only = false;
};

struct TrainingView {
    Camera cam;
    Image target;  // matches the camera's pixel dimensions, 3 channels
};

struct FitResult {
    DescriptorSet fg;
    DescriptorSet bg;
    RenderHeadParams head;
    SceneSplit split;
    std::vector<double> loss_trace;  // mean view loss per epoch
};

/// Joint descriptor + head optimization: one Adam step per view per epoch,
/// views visited in a seeded shuffled order, fragment buffers computed once
/// per view up front. Bitwise deterministic for a fixed seed.
FitResult fit_scene(const TriangleMesh& mesh, const SceneSplit& split,
                    std::span<const TrainingView> views, const FitConfig& config);

/// Forward-only render of one camera at its own resolution. Values are
/// unbounded; clamping happens at image export.
Image render_view(const TriangleMesh& mesh, const SceneSplit& split, const DescriptorSet& fg,
                  const DescriptorSet& bg, const RenderHeadParams& head, const Camera& cam,
                  double point_radius = 0.006);

} // namespace lumi
