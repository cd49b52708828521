// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "lumi/error.hpp"

namespace lumi {

SceneSplit compute_scene_split(std::span<const Camera> cameras) {
    if (cameras.size() < 2) {
        throw DegenerateSplit("need at least two cameras, got " + std::to_string(cameras.size()));
    }
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    for (const Camera& cam : cameras) {
        center += cam.position();
    }
    center /= static_cast<double>(cameras.size());

    double max_dist = 0.0;
    for (const Camera& cam : cameras) {
        max_dist = std::max(max_dist, (cam.position() - center).norm());
    }
    if (max_dist < 1e-9) {
        throw DegenerateSplit("all cameras coincide");
    }
    return SceneSplit{center, 1.1 * max_dist};
}

MeshPartition partition_mesh(const TriangleMesh& mesh, const SceneSplit& split) {
    mesh.validate();
    MeshPartition out;

    std::vector<char> face_is_fg(mesh.faces.size());
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
        const auto& face = mesh.faces[f];
        const Eigen::Vector3d centroid =
            (mesh.vertices[face[0]] + mesh.vertices[face[1]] + mesh.vertices[face[2]]) / 3.0;
        face_is_fg[f] = (centroid - split.center).norm() <= split.radius;
    }

    auto build = [&](bool take_fg) {
        SubMesh sub;
        // Referenced vertices, renumbered in ascending original order.
        std::vector<int> remap(mesh.vertices.size(), -1);
        for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
            if (static_cast<bool>(face_is_fg[f]) != take_fg) {
                continue;
            }
            for (int k = 0; k < 3; ++k) {
                remap[mesh.faces[f][k]] = 0;
            }
        }
        for (std::size_t v = 0; v < remap.size(); ++v) {
            if (remap[v] == 0) {
                remap[v] = static_cast<int>(sub.vertex_map.size());
                sub.vertex_map.push_back(static_cast<int>(v));
                sub.mesh.vertices.push_back(mesh.vertices[v]);
            }
        }
        for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
            if (static_cast<bool>(face_is_fg[f]) != take_fg) {
                continue;
            }
            const auto& face = mesh.faces[f];
            sub.mesh.faces.push_back({remap[face[0]], remap[face[1]], remap[face[2]]});
        }
        return sub;
    };

    out.fg = build(true);
    out.bg = build(false);
    return out;
}

Eigen::Matrix3d look_at(const Eigen::Vector3d& position, const Eigen::Vector3d& target,
                        const Eigen::Vector3d& up) {
    const Eigen::Vector3d offset = target - position;
    if (offset.norm() < 1e-9) {
        throw DegenerateLookAt("position coincides with target");
    }
    const Eigen::Vector3d forward = offset.normalized();
    if (std::abs(forward.dot(up.normalized())) > 1.0 - 1e-9) {
        throw DegenerateLookAt("up axis is parallel to the view direction");
    }
    // Camera axes in world coordinates: x right, y down (image v grows
    // downward), z forward.
    const Eigen::Vector3d right = forward.cross(up).normalized();
    const Eigen::Vector3d down = forward.cross(right);
    Eigen::Matrix3d rot;
    rot.row(0) = right;
    rot.row(1) = down;
    rot.row(2) = forward;
    return rot;
}

CameraStats compute_camera_stats(std::span<const Camera> cameras, const Eigen::Vector3d& center,
                                 const Eigen::Vector3d& up) {
    CameraStats stats;
    stats.up = up.normalized();
    if (cameras.empty()) {
        return stats;
    }
    std::vector<double> elevations;
    elevations.reserve(cameras.size());
    for (const Camera& cam : cameras) {
        const Eigen::Vector3d offset = cam.position() - center;
        const double norm = offset.norm();
        if (norm < 1e-12) {
            elevations.push_back(0.0);
            continue;
        }
        const double c = std::clamp(offset.dot(stats.up) / norm, -1.0, 1.0);
        elevations.push_back(std::acos(c));
    }
    double mean = 0.0;
    for (double e : elevations) {
        mean += e;
    }
    mean /= static_cast<double>(elevations.size());
    double var = 0.0;
    for (double e : elevations) {
        var += (e - mean) * (e - mean);
    }
    var /= static_cast<double>(elevations.size());
    stats.mean_elevation = mean;
    stats.std_elevation = std::sqrt(var);
    return stats;
}

Eigen::Vector3d augmented_camera_position(const Eigen::Vector3d& center, const Eigen::Vector3d& up,
                                          double radius, double theta, double phi) {
    const Eigen::Vector3d pole = up.normalized();
    // Orthonormal basis with the given pole; reduces to the world axes for
    // up = (0,1,0) so the offset is r*[sin(t)sin(p), cos(t), sin(t)cos(p)].
    Eigen::Vector3d helper(1.0, 0.0, 0.0);
    if (std::abs(pole.dot(helper)) > 0.9) {
        helper = Eigen::Vector3d(0.0, 0.0, 1.0);
    }
    const Eigen::Vector3d b1 = (helper - helper.dot(pole) * pole).normalized();
    const Eigen::Vector3d b2 = b1.cross(pole);
    const double st = std::sin(theta);
    return center + radius * (st * std::sin(phi) * b1 + std::cos(theta) * pole + st * std::cos(phi) * b2);
}

CameraPose sample_augmented_camera(const SceneSplit& split, const CameraStats& stats, Rng& rng) {
    const double r = rng.uniform(0.6 * split.radius, split.radius);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const double half_window = 1.5 * stats.std_elevation;
    double theta = rng.uniform(stats.mean_elevation - half_window, stats.mean_elevation + half_window);
    theta = std::clamp(theta, 1e-6, M_PI - 1e-6);

    const Eigen::Vector3d position = augmented_camera_position(split.center, stats.up, r, theta, phi);
    CameraPose pose;
    pose.R = look_at(position, split.center, stats.up);
    pose.T = -pose.R * position;
    return pose;
}

} // namespace lumi
