// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "lumi/camera.hpp"
#include "lumi/mesh.hpp"

namespace lumi {

/// Sentinel for pixels no primitive covers.
inline constexpr int kEmptyFragment = -1;

/// Acceptance tolerances for ray-triangle intersection, shared by every
/// implementation so they agree on boundary cases.
inline constexpr double kRayEpsilon = 1e-9;
inline constexpr double kBaryEpsilon = 1e-9;
inline constexpr double kParallelEpsilon = 1e-12;
inline constexpr double kDegenerateAreaSq = 1e-36;  // squared triangle area

/// NDC convention: the shorter image side spans [-1, 1]; the longer side
/// scales proportionally. Distances (and the point radius) live here.
inline double ndc_x(double u, int width, int height) {
    return (2.0 * u - width) / static_cast<double>(std::min(width, height));
}
inline double ndc_y(double v, int width, int height) {
    return (2.0 * v - height) / static_cast<double>(std::min(width, height));
}

/// One winning point per pixel: index, splat weight in [0,1], camera depth.
struct PointFragmentBuffer {
    int width = 0;
    int height = 0;
    std::vector<int> point_index;  // kEmptyFragment where unoccupied
    std::vector<double> weight;    // 0 where unoccupied
    std::vector<double> depth;     // 0 where unoccupied

    PointFragmentBuffer() = default;
    PointFragmentBuffer(int w, int h)
        : width(w), height(h),
          point_index(static_cast<std::size_t>(w) * h, kEmptyFragment),
          weight(static_cast<std::size_t>(w) * h, 0.0),
          depth(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t pixel(int u, int v) const { return static_cast<std::size_t>(v) * width + u; }
    bool occupied(int u, int v) const { return point_index[pixel(u, v)] != kEmptyFragment; }
};

/// One winning face per pixel with the barycentrics of the ray hit.
struct MeshFragmentBuffer {
    int width = 0;
    int height = 0;
    std::vector<int> face_index;   // kEmptyFragment where unoccupied
    std::vector<double> bary;      // 3 per pixel, (alpha, beta, gamma)
    std::vector<double> depth;     // camera-space z of the hit, 0 where unoccupied

    MeshFragmentBuffer() = default;
    MeshFragmentBuffer(int w, int h)
        : width(w), height(h),
          face_index(static_cast<std::size_t>(w) * h, kEmptyFragment),
          bary(static_cast<std::size_t>(w) * h * 3, 0.0),
          depth(static_cast<std::size_t>(w) * h, 0.0) {}

    std::size_t pixel(int u, int v) const { return static_cast<std::size_t>(v) * width + u; }
    bool occupied(int u, int v) const { return face_index[pixel(u, v)] != kEmptyFragment; }
};

/// Ray-triangle hit: parameter t along the ray and barycentrics of the hit
/// with respect to (v0, v1, v2).
struct RayHit {
    double t = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

/// Moeller-Trumbore with the acceptance tolerances used across the
/// rasterizer: t > 1e-9, barycentrics >= -1e-9, triangles of area below
/// 1e-18 treated as degenerate. `dir` must be unit length.
std::optional<RayHit> ray_triangle_intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                             const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                                             const Eigen::Vector3d& v2);

/// Splats points with NDC radius `radius`; each pixel keeps the candidate
/// with the smallest camera-space depth (ties to the smallest index) and a
/// weight of 1 - d^2/r^2 in the pixel-center distance d. The tile size
/// controls internal parallel decomposition only; output is identical for
/// any value.
PointFragmentBuffer rasterize_points(std::span<const Eigen::Vector3d> points, const Camera& cam,
                                     double radius, int out_width, int out_height, int tile_size = 16);

/// Casts a ray through every pixel center and keeps the nearest face hit
/// (ties to the smallest face index). Tile size as in rasterize_points.
MeshFragmentBuffer rasterize_mesh(const TriangleMesh& mesh, const Camera& cam, int out_width,
                                  int out_height, int tile_size = 16);

} // namespace lumi
