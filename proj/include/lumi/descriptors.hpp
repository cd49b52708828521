// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lumi/mesh.hpp"
#include "lumi/rasterizer.hpp"
#include "lumi/sh.hpp"

namespace lumi {

/// Per-vertex view-dependent appearance: 9 SH coefficients, each an
/// 8-channel feature vector, stored row-major as vertex x coeff x channel.
struct DescriptorSet {
    static constexpr int kCoeffs = kShCoeffCount;
    static constexpr int kChannels = 8;

    int vertex_count = 0;
    std::vector<double> data;

    DescriptorSet() = default;
    explicit DescriptorSet(int n)
        : vertex_count(n),
          data(static_cast<std::size_t>(n) * kCoeffs * kChannels, 0.0) {}

    std::size_t offset(int vertex, int coeff, int channel) const {
        return (static_cast<std::size_t>(vertex) * kCoeffs + coeff) * kChannels + channel;
    }
    double at(int vertex, int coeff, int channel) const { return data[offset(vertex, coeff, channel)]; }
    double& at(int vertex, int coeff, int channel) { return data[offset(vertex, coeff, channel)]; }
};

/// Dense H x W x C image with a per-pixel occupancy mask. Wherever the mask
/// is 0 the data is 0.
struct FeatureImage {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<double> data;
    std::vector<std::uint8_t> mask;

    FeatureImage() = default;
    FeatureImage(int w, int h, int c)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, 0.0),
          mask(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t pixel(int u, int v) const { return static_cast<std::size_t>(v) * width + u; }
    double at(int u, int v, int c) const { return data[pixel(u, v) * channels + c]; }
    double& at(int u, int v, int c) { return data[pixel(u, v) * channels + c]; }
};

/// Contracts each winning point's coefficients against the SH basis of the
/// pixel's ray and scales by the splat weight. Mask mirrors buffer occupancy.
FeatureImage eval_point_features(const PointFragmentBuffer& buf, const DescriptorSet& desc,
                                 const Camera& cam);

/// Same contraction for mesh fragments, with the three corner descriptors
/// interpolated barycentrically first. `vertex_map` sends mesh vertex ids to
/// descriptor rows; empty means identity.
FeatureImage eval_mesh_features(const MeshFragmentBuffer& buf, const DescriptorSet& desc,
                                const TriangleMesh& mesh, std::span<const int> vertex_map,
                                const Camera& cam);

/// Channel-wise concatenation of the point and mesh images, with the two
/// occupancy masks appended as extra channels. Output mask is their OR.
FeatureImage concat_features(const FeatureImage& pt, const FeatureImage& mesh);

} // namespace lumi
