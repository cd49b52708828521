// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/rasterizer.hpp"

#include <cmath>
#include <limits>

#include "lumi/parallel.hpp"

namespace lumi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TileGrid {
    int tile_size = 16;
    int tiles_x = 0;
    int tiles_y = 0;

    TileGrid(int width, int height, int tile_size_in)
        : tile_size(std::max(1, tile_size_in)),
          tiles_x((width + tile_size - 1) / tile_size),
          tiles_y((height + tile_size - 1) / tile_size) {}

    int count() const { return tiles_x * tiles_y; }
};

struct PixelRect {
    int u0 = 0;
    int u1 = -1;  // inclusive
    int v0 = 0;
    int v1 = -1;

    bool empty() const { return u1 < u0 || v1 < v0; }

    bool contains(int u, int v) const {
        return u >= u0 && u <= u1 && v >= v0 && v <= v1;
    }
};

PixelRect clamp_rect(double u_lo, double u_hi, double v_lo, double v_hi,
                     int width, int height) {
    PixelRect r;
    r.u0 = std::max(0, static_cast<int>(std::floor(u_lo)) - 1);
    r.u1 = std::min(width - 1, static_cast<int>(std::ceil(u_hi)) + 1);
    r.v0 = std::max(0, static_cast<int>(std::floor(v_lo)) - 1);
    r.v1 = std::min(height - 1, static_cast<int>(std::ceil(v_hi)) + 1);
    return r;
}

// Bins primitives sequentially in ascending index order so that every
// per-tile candidate list is itself ascending.  The per-pixel depth test
// uses a strict < so the first (lowest index) primitive wins ties.
void bin_rect(const TileGrid& grid, const PixelRect& rect, int index,
              std::vector<std::vector<int>>& bins) {
    if (rect.empty()) return;
    const int tx0 = rect.u0 / grid.tile_size;
    const int tx1 = rect.u1 / grid.tile_size;
    const int ty0 = rect.v0 / grid.tile_size;
    const int ty1 = rect.v1 / grid.tile_size;
    for (int ty = ty0; ty <= ty1; ++ty)
        for (int tx = tx0; tx <= tx1; ++tx)
            bins[ty * grid.tiles_x + tx].push_back(index);
}

PixelRect tile_rect(const TileGrid& grid, int tile, int width, int height) {
    const int tx = tile % grid.tiles_x;
    const int ty = tile / grid.tiles_x;
    PixelRect r;
    r.u0 = tx * grid.tile_size;
    r.v0 = ty * grid.tile_size;
    r.u1 = std::min(width - 1, r.u0 + grid.tile_size - 1);
    r.v1 = std::min(height - 1, r.v0 + grid.tile_size - 1);
    return r;
}

}  // namespace

std::optional<RayHit> ray_triangle_intersect(const Eigen::Vector3d& origin,
                                             const Eigen::Vector3d& dir,
                                             const Eigen::Vector3d& v0,
                                             const Eigen::Vector3d& v1,
                                             const Eigen::Vector3d& v2) {
    const Eigen::Vector3d e1 = v1 - v0;
    const Eigen::Vector3d e2 = v2 - v0;
    if (0.25 * e1.cross(e2).squaredNorm() < kDegenerateAreaSq) return std::nullopt;

    const Eigen::Vector3d pvec = dir.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < kParallelEpsilon) return std::nullopt;

    const double inv_det = 1.0 / det;
    const Eigen::Vector3d tvec = origin - v0;
    const double beta = tvec.dot(pvec) * inv_det;
    if (beta < -kBaryEpsilon) return std::nullopt;

    const Eigen::Vector3d qvec = tvec.cross(e1);
    const double gamma = dir.dot(qvec) * inv_det;
    if (gamma < -kBaryEpsilon) return std::nullopt;
    if (beta + gamma > 1.0 + kBaryEpsilon) return std::nullopt;

    const double t = e2.dot(qvec) * inv_det;
    if (t <= kRayEpsilon) return std::nullopt;

    return RayHit{t, 1.0 - beta - gamma, beta, gamma};
}

PointFragmentBuffer rasterize_points(std::span<const Eigen::Vector3d> points,
                                     const Camera& cam, double radius,
                                     int out_width, int out_height,
                                     int tile_size) {
    PointFragmentBuffer buf(out_width, out_height);
    if (points.empty() || out_width <= 0 || out_height <= 0) return buf;

    const int n = static_cast<int>(points.size());
    const double side = static_cast<double>(std::min(out_width, out_height));
    const double r2 = radius * radius;

    // NDC position per visible point plus its conservative pixel rectangle.
    std::vector<double> px(n), py(n), pz(n);
    std::vector<PixelRect> rects(n);
    std::vector<char> visible(n, 0);
    for (int i = 0; i < n; ++i) {
        const auto proj = project_point(points[i], cam);
        if (!proj) continue;
        visible[i] = 1;
        px[i] = ndc_x(proj->u, out_width, out_height);
        py[i] = ndc_y(proj->v, out_width, out_height);
        pz[i] = proj->z;
        // Invert u + 0.5 = (side * x + width) / 2 at the disc extremes.
        const double u_lo = 0.5 * (side * (px[i] - radius) + out_width) - 0.5;
        const double u_hi = 0.5 * (side * (px[i] + radius) + out_width) - 0.5;
        const double v_lo = 0.5 * (side * (py[i] - radius) + out_height) - 0.5;
        const double v_hi = 0.5 * (side * (py[i] + radius) + out_height) - 0.5;
        rects[i] = clamp_rect(u_lo, u_hi, v_lo, v_hi, out_width, out_height);
    }

    const TileGrid grid(out_width, out_height, tile_size);
    std::vector<std::vector<int>> bins(grid.count());
    for (int i = 0; i < n; ++i)
        if (visible[i]) bin_rect(grid, rects[i], i, bins);

    std::vector<double> best_d2(static_cast<size_t>(out_width) * out_height, 0.0);
    parallel_for(grid.count(), [&](int tile) {
        const PixelRect tr = tile_rect(grid, tile, out_width, out_height);
        for (int i : bins[tile]) {
            const PixelRect& pr = rects[i];
            const int u0 = std::max(tr.u0, pr.u0);
            const int u1 = std::min(tr.u1, pr.u1);
            const int v0 = std::max(tr.v0, pr.v0);
            const int v1 = std::min(tr.v1, pr.v1);
            for (int v = v0; v <= v1; ++v) {
                const double cy = ndc_y(v + 0.5, out_width, out_height);
                const double dy = py[i] - cy;
                for (int u = u0; u <= u1; ++u) {
                    const double cx = ndc_x(u + 0.5, out_width, out_height);
                    const double dx = px[i] - cx;
                    const double d2 = dx * dx + dy * dy;
                    if (d2 > r2) continue;
                    const size_t pix = buf.pixel(u, v);
                    if (buf.point_index[pix] != kEmptyFragment &&
                        pz[i] >= buf.depth[pix])
                        continue;
                    buf.point_index[pix] = i;
                    buf.depth[pix] = pz[i];
                    best_d2[pix] = d2;
                }
            }
        }
    });

    for (size_t pix = 0; pix < buf.point_index.size(); ++pix) {
        if (buf.point_index[pix] == kEmptyFragment) continue;
        buf.weight[pix] = std::clamp(1.0 - best_d2[pix] / r2, 0.0, 1.0);
    }
    return buf;
}

MeshFragmentBuffer rasterize_mesh(const TriangleMesh& mesh, const Camera& cam,
                                  int out_width, int out_height,
                                  int tile_size) {
    MeshFragmentBuffer buf(out_width, out_height);
    if (mesh.faces.empty() || out_width <= 0 || out_height <= 0) return buf;

    const int n = static_cast<int>(mesh.faces.size());
    const Eigen::Vector3d origin = cam.position();

    std::vector<PixelRect> rects(n);
    std::vector<char> live(n, 0);
    for (int f = 0; f < n; ++f) {
        const auto& face = mesh.faces[f];
        double u_lo = kInf, u_hi = -kInf, v_lo = kInf, v_hi = -kInf;
        bool any_front = false;
        bool all_projected = true;
        for (int k = 0; k < 3; ++k) {
            const Eigen::Vector3d p_cam =
                cam.R * mesh.vertices[face[k]] + cam.T;
            if (p_cam.z() <= kDepthEpsilon) {
                all_projected = false;
                continue;
            }
            any_front = true;
            const double u = cam.fx * p_cam.x() / p_cam.z() + cam.cx;
            const double v = cam.fy * p_cam.y() / p_cam.z() + cam.cy;
            u_lo = std::min(u_lo, u);
            u_hi = std::max(u_hi, u);
            v_lo = std::min(v_lo, v);
            v_hi = std::max(v_hi, v);
        }
        if (!any_front) continue;  // entirely behind the camera
        live[f] = 1;
        if (all_projected) {
            rects[f] = clamp_rect(u_lo, u_hi, v_lo, v_hi, out_width, out_height);
        } else {
            // A vertex crosses the image plane; the safe bound is the full image.
            rects[f] = PixelRect{0, out_width - 1, 0, out_height - 1};
        }
    }

    const TileGrid grid(out_width, out_height, tile_size);
    std::vector<std::vector<int>> bins(grid.count());
    for (int f = 0; f < n; ++f)
        if (live[f]) bin_rect(grid, rects[f], f, bins);

    parallel_for(grid.count(), [&](int tile) {
        const PixelRect tr = tile_rect(grid, tile, out_width, out_height);
        for (int v = tr.v0; v <= tr.v1; ++v) {
            for (int u = tr.u0; u <= tr.u1; ++u) {
                const Eigen::Vector3d dir =
                    pixel_ray_direction(u + 0.5, v + 0.5, cam);
                const size_t pix = buf.pixel(u, v);
                double best_z = kInf;
                for (int f : bins[tile]) {
                    if (!rects[f].contains(u, v)) continue;
                    const auto& face = mesh.faces[f];
                    const auto hit = ray_triangle_intersect(
                        origin, dir, mesh.vertices[face[0]],
                        mesh.vertices[face[1]], mesh.vertices[face[2]]);
                    if (!hit) continue;
                    const Eigen::Vector3d p = origin + hit->t * dir;
                    const double z = (cam.R * p + cam.T).z();
                    if (z >= best_z) continue;
                    best_z = z;
                    buf.face_index[pix] = f;
                    buf.depth[pix] = z;
                    buf.bary[3 * pix + 0] = hit->alpha;
                    buf.bary[3 * pix + 1] = hit->beta;
                    buf.bary[3 * pix + 2] = hit->gamma;
                }
            }
        }
    });
    return buf;
}

}  // namespace lumi
