// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lumi/rasterizer.hpp"

namespace lumi {

/// Brute-force references: every pixel tests every primitive, no tiling, no
/// culling, independent intersection math. Slow on purpose; they exist to
/// pin down what the production rasterizers must produce.
PointFragmentBuffer oracle_rasterize_points(std::span<const Eigen::Vector3d> points, const Camera& cam,
                                            double radius, int out_width, int out_height,
                                            int tile_size = 16);

MeshFragmentBuffer oracle_rasterize_mesh(const TriangleMesh& mesh, const Camera& cam, int out_width,
                                         int out_height, int tile_size = 16);

} // namespace lumi
