// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/rasterizer_oracle.hpp"

#include <cmath>
#include <limits>

namespace lumi {

namespace {

// Plane intersection plus Cramer-rule barycentrics; deliberately a different
// derivation from the production Moeller-Trumbore kernel.
std::optional<RayHit> plane_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                                const Eigen::Vector3d& v0, const Eigen::Vector3d& v1,
                                const Eigen::Vector3d& v2) {
    const Eigen::Vector3d e1 = v1 - v0;
    const Eigen::Vector3d e2 = v2 - v0;
    const Eigen::Vector3d n = e1.cross(e2);
    if (0.25 * n.squaredNorm() < kDegenerateAreaSq) return std::nullopt;
    const double denom = n.dot(dir);
    if (std::abs(denom) < kParallelEpsilon) return std::nullopt;
    const double t = n.dot(v0 - origin) / denom;
    if (t <= kRayEpsilon) return std::nullopt;

    const Eigen::Vector3d w = origin + t * dir - v0;
    const double d00 = e1.dot(e1);
    const double d01 = e1.dot(e2);
    const double d11 = e2.dot(e2);
    const double d20 = w.dot(e1);
    const double d21 = w.dot(e2);
    const double det = d00 * d11 - d01 * d01;
    const double beta = (d11 * d20 - d01 * d21) / det;
    const double gamma = (d00 * d21 - d01 * d20) / det;
    const double alpha = 1.0 - beta - gamma;
    if (beta < -kBaryEpsilon || gamma < -kBaryEpsilon || alpha < -kBaryEpsilon)
        return std::nullopt;
    return RayHit{t, alpha, beta, gamma};
}

}  // namespace

PointFragmentBuffer oracle_rasterize_points(std::span<const Eigen::Vector3d> points, const Camera& cam,
                                            double radius, int out_width, int out_height, int) {
    PointFragmentBuffer buf(out_width, out_height);
    const double r2 = radius * radius;
    for (int v = 0; v < out_height; ++v) {
        for (int u = 0; u < out_width; ++u) {
            const double cx = ndc_x(u + 0.5, out_width, out_height);
            const double cy = ndc_y(v + 0.5, out_width, out_height);
            const size_t pix = buf.pixel(u, v);
            double best_z = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < points.size(); ++i) {
                const Eigen::Vector3d p_cam = cam.R * points[i] + cam.T;
                if (p_cam.z() <= kDepthEpsilon) continue;
                const double px =
                    ndc_x(cam.fx * p_cam.x() / p_cam.z() + cam.cx, out_width, out_height);
                const double py =
                    ndc_y(cam.fy * p_cam.y() / p_cam.z() + cam.cy, out_width, out_height);
                const double dx = px - cx;
                const double dy = py - cy;
                const double d2 = dx * dx + dy * dy;
                if (d2 > r2) continue;
                if (p_cam.z() >= best_z) continue;
                best_z = p_cam.z();
                buf.point_index[pix] = static_cast<int>(i);
                buf.depth[pix] = p_cam.z();
                buf.weight[pix] = std::clamp(1.0 - d2 / r2, 0.0, 1.0);
            }
        }
    }
    return buf;
}

MeshFragmentBuffer oracle_rasterize_mesh(const TriangleMesh& mesh, const Camera& cam, int out_width,
                                         int out_height, int) {
    MeshFragmentBuffer buf(out_width, out_height);
    const Eigen::Vector3d origin = cam.position();
    for (int v = 0; v < out_height; ++v) {
        for (int u = 0; u < out_width; ++u) {
            const Eigen::Vector3d dir = pixel_ray_direction(u + 0.5, v + 0.5, cam);
            const size_t pix = buf.pixel(u, v);
            double best_z = std::numeric_limits<double>::infinity();
            for (size_t f = 0; f < mesh.faces.size(); ++f) {
                const auto& face = mesh.faces[f];
                const Eigen::Vector3d& v0 = mesh.vertices[face[0]];
                const Eigen::Vector3d& v1 = mesh.vertices[face[1]];
                const Eigen::Vector3d& v2 = mesh.vertices[face[2]];
                bool any_front = false;
                for (int k = 0; k < 3; ++k)
                    if ((cam.R * mesh.vertices[face[k]] + cam.T).z() > kDepthEpsilon)
                        any_front = true;
                if (!any_front) continue;
                const auto hit = plane_hit(origin, dir, v0, v1, v2);
                if (!hit) continue;
                const Eigen::Vector3d p = origin + hit->t * dir;
                const double z = (cam.R * p + cam.T).z();
                if (z >= best_z) continue;
                best_z = z;
                buf.face_index[pix] = static_cast<int>(f);
                buf.depth[pix] = z;
                buf.bary[3 * pix + 0] = hit->alpha;
                buf.bary[3 * pix + 1] = hit->beta;
                buf.bary[3 * pix + 2] = hit->gamma;
            }
        }
    }
    return buf;
}

}  // namespace lumi
