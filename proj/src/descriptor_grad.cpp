// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/descriptor_grad.hpp"

#include <string>

#include "lumi/error.hpp"
#include "lumi/render_head.hpp"

namespace lumi {

namespace {

int mapped_row(std::span<const int> vertex_map, int vertex, int descriptor_rows) {
    int row = vertex;
    if (!vertex_map.empty()) {
        if (vertex < 0 || vertex >= static_cast<int>(vertex_map.size()))
            throw IndexOutOfRange("vertex " + std::to_string(vertex) +
                                  " outside vertex map of size " + std::to_string(vertex_map.size()));
        row = vertex_map[vertex];
    }
    if (row < 0 || row >= descriptor_rows)
        throw IndexOutOfRange("descriptor row " + std::to_string(row) + " outside descriptor set of " +
                              std::to_string(descriptor_rows) + " vertices");
    return row;
}

}  // namespace

DescriptorSet backward_to_descriptors(const FeatureImage& grad_feat,
                                      const PointFragmentBuffer& point_buf,
                                      const MeshFragmentBuffer& mesh_buf,
                                      const TriangleMesh& mesh,
                                      std::span<const int> point_vertex_map,
                                      std::span<const int> mesh_vertex_map,
                                      const Camera& cam, int descriptor_rows) {
    if (grad_feat.channels != kHeadInputChannels)
        throw ShapeMismatch("feature gradient has " + std::to_string(grad_feat.channels) +
                            " channels, expected " + std::to_string(kHeadInputChannels));
    if (grad_feat.width != point_buf.width || grad_feat.height != point_buf.height ||
        grad_feat.width != mesh_buf.width || grad_feat.height != mesh_buf.height)
        throw ShapeMismatch("feature gradient " + std::to_string(grad_feat.width) + "x" +
                            std::to_string(grad_feat.height) +
                            " does not match the fragment buffers");

    constexpr int kC = DescriptorSet::kChannels;
    DescriptorSet grad(descriptor_rows);
    for (int v = 0; v < grad_feat.height; ++v) {
        for (int u = 0; u < grad_feat.width; ++u) {
            const std::size_t pix = point_buf.pixel(u, v);
            const int point = point_buf.point_index[pix];
            const int face = mesh_buf.face_index[pix];
            if (point == kEmptyFragment && face == kEmptyFragment) continue;

            const auto phi = sh_basis(pixel_ray_direction(u + 0.5, v + 0.5, cam));
            if (point != kEmptyFragment) {
                const int row = mapped_row(point_vertex_map, point, descriptor_rows);
                const double w = point_buf.weight[pix];
                for (int k = 0; k < DescriptorSet::kCoeffs; ++k) {
                    const double scale = w * phi[k];
                    for (int c = 0; c < kC; ++c)
                        grad.at(row, k, c) += scale * grad_feat.at(u, v, c);
                }
            }
            if (face != kEmptyFragment) {
                if (face < 0 || face >= static_cast<int>(mesh.face_count()))
                    throw IndexOutOfRange("fragment references face " + std::to_string(face) +
                                          " outside mesh of " + std::to_string(mesh.face_count()) +
                                          " faces");
                const auto& corners = mesh.faces[face];
                for (int j = 0; j < 3; ++j) {
                    const int row = mapped_row(mesh_vertex_map, corners[j], descriptor_rows);
                    const double bary = mesh_buf.bary[3 * pix + j];
                    for (int k = 0; k < DescriptorSet::kCoeffs; ++k) {
                        const double scale = bary * phi[k];
                        for (int c = 0; c < kC; ++c)
                            grad.at(row, k, c) += scale * grad_feat.at(u, v, kC + c);
                    }
                }
            }
        }
    }
    return grad;
}

}  // namespace lumi
