// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "lumi/descriptors.hpp"

namespace lumi {

/// Adjoint of the feature evaluation for one branch: scatter-accumulates the
/// 18-channel feature gradient back into a descriptor-shaped tensor.
/// Channels 0-7 flow through the point path (scaled by the splat weight),
/// channels 8-15 through the mesh path (split by barycentrics); the two mask
/// channels carry no gradient. Rasterization geometry is a constant here, so
/// nothing flows to positions or weights. Pixels accumulate in row-major
/// order.
DescriptorSet backward_to_descriptors(const FeatureImage& grad_feat,
                                      const PointFragmentBuffer& point_buf,
                                      const MeshFragmentBuffer& mesh_buf,
                                      const TriangleMesh& mesh,
                                      std::span<const int> point_vertex_map,
                                      std::span<const int> mesh_vertex_map,
                                      const Camera& cam, int descriptor_rows);

} // namespace lumi
