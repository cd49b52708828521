// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "lumi/error.hpp"
#include "lumi/rasterizer.hpp"

namespace lumi::testing {

namespace {

Eigen::Vector3d cube_albedo(const Eigen::Vector3d& p) {
    return {0.5 + 0.45 * std::sin(7.0 * p.x() + 1.0),
            0.5 + 0.45 * std::sin(6.0 * p.y() + 2.0),
            0.5 + 0.45 * std::sin(5.0 * p.z() + 3.0)};
}

double cube_shade(const Eigen::Vector3d& normal) {
    const Eigen::Vector3d light = Eigen::Vector3d(1.0, 2.0, 0.5).normalized();
    return 0.35 + 0.65 * std::max(0.0, normal.dot(light));
}

Eigen::Vector3d sky_color(const Eigen::Vector3d& p, double half_side) {
    const double t = (p.y() + half_side) / (2.0 * half_side);
    const Eigen::Vector3d bottom(0.20, 0.25, 0.35);
    const Eigen::Vector3d top(0.90, 0.95, 1.00);
    return bottom + t * (top - bottom);
}

// Axis-aligned box with every side subdivided grid x grid. Vertices are
// duplicated per side, so flat shading stays exact under barycentric
// interpolation and no vertex is shared between sides with different view
// geometry. The color callback receives position and outward side normal.
void append_box(ColoredMesh& out, double half, int grid,
                const std::function<Eigen::Vector3d(const Eigen::Vector3d&,
                                                    const Eigen::Vector3d&)>& color) {
    const Eigen::Vector3d axes[6][3] = {
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},   {{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
        {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},   {{0, -1, 0}, {0, 0, 1}, {-1, 0, 0}},
        {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},   {{0, 0, -1}, {1, 0, 0}, {0, -1, 0}}};
    for (const auto& side : axes) {
        const Eigen::Vector3d n = side[0], u = side[1], v = side[2];
        const int base = static_cast<int>(out.mesh.vertices.size());
        for (int j = 0; j <= grid; ++j)
            for (int i = 0; i <= grid; ++i) {
                const double a = -half + 2.0 * half * i / grid;
                const double b = -half + 2.0 * half * j / grid;
                const Eigen::Vector3d p = n * half + u * a + v * b;
                out.mesh.vertices.push_back(p);
                out.colors.push_back(color(p, n).cwiseMax(0.0).cwiseMin(1.0));
            }
        for (int j = 0; j < grid; ++j)
            for (int i = 0; i < grid; ++i) {
                const int a = base + j * (grid + 1) + i;
                const int b = a + 1;
                const int c = a + (grid + 1);
                const int d = c + 1;
                out.mesh.faces.push_back({a, b, d});
                out.mesh.faces.push_back({a, d, c});
            }
    }
}

}  // namespace

std::vector<Camera> orbit_cameras(int count, double radius, int width, int height, double focal) {
    const double elevations[3] = {70.0, 90.0, 110.0};
    std::vector<Camera> cams;
    cams.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double theta = elevations[i % 3] * M_PI / 180.0;
        const double phi = 2.0 * M_PI * i / count;
        const Eigen::Vector3d pos =
            radius * Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::cos(theta),
                                     std::sin(theta) * std::sin(phi));
        Camera cam;
        cam.R = look_at(pos, Eigen::Vector3d::Zero(), Eigen::Vector3d(0.0, 1.0, 0.0));
        cam.T = -cam.R * pos;
        cam.fx = cam.fy = focal;
        cam.cx = width / 2.0;
        cam.cy = height / 2.0;
        cam.width = width;
        cam.height = height;
        cams.push_back(cam);
    }
    return cams;
}

ColoredMesh cube_and_sky(int cube_grid, int sky_grid) {
    ColoredMesh out;
    const double cube_half = 0.5;
    append_box(out, cube_half, cube_grid,
               [&](const Eigen::Vector3d& p, const Eigen::Vector3d& n) {
                   return Eigen::Vector3d(cube_shade(n) * cube_albedo(p / cube_half));
               });
    append_box(out, 10.0, sky_grid, [](const Eigen::Vector3d& p, const Eigen::Vector3d&) {
        return sky_color(p, 10.0);
    });
    out.mesh.validate();
    return out;
}

Image shade_vertex_colors(const ColoredMesh& cm, const Camera& cam) {
    const MeshFragmentBuffer buf = rasterize_mesh(cm.mesh, cam, cam.width, cam.height);
    Image img(cam.width, cam.height, 3);
    for (int v = 0; v < cam.height; ++v)
        for (int u = 0; u < cam.width; ++u) {
            const std::size_t pix = buf.pixel(u, v);
            const int f = buf.face_index[pix];
            if (f == kEmptyFragment) continue;
            const auto& face = cm.mesh.faces[f];
            const Eigen::Vector3d c = buf.bary[3 * pix + 0] * cm.colors[face[0]] +
                                      buf.bary[3 * pix + 1] * cm.colors[face[1]] +
                                      buf.bary[3 * pix + 2] * cm.colors[face[2]];
            for (int ch = 0; ch < 3; ++ch)
                img.at(u, v, ch) = std::clamp(c[ch], 0.0, 1.0);
        }
    return img;
}

SyntheticScene cube_scene(int view_count, int size) {
    const ColoredMesh cm = cube_and_sky();
    SyntheticScene scene;
    scene.mesh = cm.mesh;
    const auto cams = orbit_cameras(view_count, 2.5, size, size, 1.1 * size);
    scene.views.reserve(cams.size());
    for (const auto& cam : cams) {
        TrainingView view;
        view.cam = cam;
        view.target = shade_vertex_colors(cm, cam);
        scene.views.push_back(std::move(view));
    }
    return scene;
}

SyntheticScene specular_scene(int view_count, int size) {
    const int cube_grid = 4;
    const ColoredMesh cm = cube_and_sky(cube_grid, 2);
    const int cube_faces = 6 * cube_grid * cube_grid * 2;
    SyntheticScene scene;
    scene.mesh = cm.mesh;
    const auto cams = orbit_cameras(view_count, 2.5, size, size, 1.1 * size);
    scene.views.reserve(cams.size());
    for (const auto& cam : cams) {
        const Eigen::Vector3d eye = cam.position();
        TrainingView view;
        view.cam = cam;
        view.target = Image(size, size, 3);
        const MeshFragmentBuffer buf = rasterize_mesh(cm.mesh, cam, size, size);
        for (int v = 0; v < size; ++v)
            for (int u = 0; u < size; ++u) {
                const std::size_t pix = buf.pixel(u, v);
                const int f = buf.face_index[pix];
                if (f == kEmptyFragment) continue;
                if (f >= cube_faces) {
                    view.target.at(u, v, 0) = 0.55;
                    view.target.at(u, v, 1) = 0.60;
                    view.target.at(u, v, 2) = 0.68;
                    continue;
                }
                const auto& face = cm.mesh.faces[f];
                const Eigen::Vector3d p = buf.bary[3 * pix + 0] * cm.mesh.vertices[face[0]] +
                                          buf.bary[3 * pix + 1] * cm.mesh.vertices[face[1]] +
                                          buf.bary[3 * pix + 2] * cm.mesh.vertices[face[2]];
                Eigen::Vector3d n =
                    (cm.mesh.vertices[face[1]] - cm.mesh.vertices[face[0]])
                        .cross(cm.mesh.vertices[face[2]] - cm.mesh.vertices[face[0]])
                        .normalized();
                const Eigen::Vector3d toward = (eye - p).normalized();
                if (n.dot(toward) < 0.0) n = -n;
                const double lobe = std::pow(std::max(0.0, n.dot(toward)), 4.0);
                const double glow = 0.30 + 0.65 * lobe;
                view.target.at(u, v, 0) = glow;
                view.target.at(u, v, 1) = 0.95 * glow;
                view.target.at(u, v, 2) = 0.90 * glow;
            }
        scene.views.push_back(std::move(view));
    }
    return scene;
}

TriangleMesh random_mesh(Rng& rng, int vertex_count, int face_count, double scale) {
    TriangleMesh mesh;
    mesh.vertices.reserve(vertex_count);
    for (int i = 0; i < vertex_count; ++i)
        mesh.vertices.push_back(
            {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)});
    // Coincident faces would make the depth winner a floating-point
    // coin flip, so every unordered vertex triple appears at most once.
    const long n = vertex_count;
    const long distinct = n * (n - 1) * (n - 2) / 6;
    face_count = static_cast<int>(std::min<long>(face_count, distinct));
    std::set<std::array<int, 3>> used;
    mesh.faces.reserve(face_count);
    while (static_cast<int>(mesh.faces.size()) < face_count) {
        const int a = static_cast<int>(rng.uniform_index(vertex_count));
        const int b = static_cast<int>(rng.uniform_index(vertex_count));
        const int c = static_cast<int>(rng.uniform_index(vertex_count));
        if (a == b || b == c || a == c) continue;
        std::array<int, 3> key = {a, b, c};
        std::sort(key.begin(), key.end());
        if (!used.insert(key).second) continue;
        mesh.faces.push_back({a, b, c});
    }
    return mesh;
}

std::vector<Eigen::Vector3d> random_points(Rng& rng, int count, double scale) {
    std::vector<Eigen::Vector3d> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i)
        points.push_back(
            {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)});
    return points;
}

Camera random_camera(Rng& rng, int width, int height) {
    Camera cam;
    while (true) {
        const double theta = std::acos(std::clamp(rng.uniform(-0.95, 0.95), -1.0, 1.0));
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double radius = rng.uniform(2.0, 3.5);
        const Eigen::Vector3d pos =
            radius * Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::cos(theta),
                                     std::sin(theta) * std::sin(phi));
        try {
            cam.R = look_at(pos, Eigen::Vector3d::Zero(), Eigen::Vector3d(0.0, 1.0, 0.0));
        } catch (const Error&) {
            continue;
        }
        cam.T = -cam.R * pos;
        break;
    }
    cam.fx = (0.6 + rng.uniform() * 0.6) * std::min(width, height);
    cam.fy = cam.fx * (0.95 + 0.1 * rng.uniform());
    cam.cx = width / 2.0 + rng.uniform(-2.0, 2.0);
    cam.cy = height / 2.0 + rng.uniform(-2.0, 2.0);
    cam.width = width;
    cam.height = height;
    return cam;
}

SceneSplit median_split(const TriangleMesh& mesh) {
    SceneSplit split;
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& v : mesh.vertices) centroid += v;
    if (!mesh.vertices.empty()) centroid /= static_cast<double>(mesh.vertices.size());
    split.center = centroid;

    std::vector<double> dists;
    dists.reserve(mesh.faces.size());
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d c =
            (mesh.vertices[f[0]] + mesh.vertices[f[1]] + mesh.vertices[f[2]]) / 3.0;
        dists.push_back((c - centroid).norm());
    }
    if (dists.empty()) {
        split.radius = 1.0;
        return split;
    }
    std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
    split.radius = dists[dists.size() / 2] + 1e-12;
    return split;
}

}  // namespace lumi::testing
