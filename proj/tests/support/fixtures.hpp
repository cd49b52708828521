// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lumi/fit.hpp"
#include "lumi/geometry.hpp"
#include "lumi/image.hpp"
#include "lumi/mesh.hpp"
#include "lumi/rng.hpp"

namespace lumi::testing {

/// Cameras on a sphere around the origin, azimuths evenly spaced and
/// elevations cycling through three rings, all looking at the origin.
std::vector<Camera> orbit_cameras(int count, double radius, int width, int height, double focal);

/// Mesh plus per-vertex colors used to synthesize ground-truth images.
struct ColoredMesh {
    TriangleMesh mesh;
    std::vector<Eigen::Vector3d> colors;
};

/// Subdivided textured cube (half side 0.5, per-face vertices, flat-shaded
/// vertex colors) inside a subdivided sky box (half side 10, vertical color
/// gradient). Cameras orbiting between them see the cube as foreground and
/// the box as background. Both boxes duplicate vertices per side so no
/// descriptor row is shared across faces with different view geometry.
ColoredMesh cube_and_sky(int cube_grid = 8, int sky_grid = 4);

/// Reference render: barycentric interpolation of vertex colors over the
/// mesh fragment buffer, clamped to [0, 1]. Uncovered pixels are black.
Image shade_vertex_colors(const ColoredMesh& cm, const Camera& cam);

struct SyntheticScene {
    TriangleMesh mesh;
    std::vector<TrainingView> views;
};

/// The desk-scale Lambertian fixture: textured cube + sky, posed targets.
SyntheticScene cube_scene(int view_count = 12, int size = 64);

/// View-dependence fixture: the cube carries a specular highlight that
/// brightens faces turned toward the camera, so its color at a fixed
/// surface point changes from view to view. The sky is a constant color.
/// Band-0-only descriptors are static per surface point and cannot track
/// the highlight.
SyntheticScene specular_scene(int view_count = 10, int size = 48);

/// Random triangle soup in [-scale, scale]^3 with distinct-vertex faces.
TriangleMesh random_mesh(Rng& rng, int vertex_count, int face_count, double scale = 1.0);

std::vector<Eigen::Vector3d> random_points(Rng& rng, int count, double scale = 1.0);

/// Camera on a random sphere of radius 2..3.5 looking at the origin.
Camera random_camera(Rng& rng, int width, int height);

/// Split sphere about the mesh centroid sized to the median face-centroid
/// distance, so both partitions are populated for most meshes.
SceneSplit median_split(const TriangleMesh& mesh);

} // namespace lumi::testing
