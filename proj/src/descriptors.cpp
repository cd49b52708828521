// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/descriptors.hpp"

#include <string>

#include "lumi/error.hpp"

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

FeatureImage eval_point_features(const PointFragmentBuffer& buf, const DescriptorSet& desc,
                                 const Camera& cam) {
    FeatureImage img(buf.width, buf.height, DescriptorSet::kChannels);
    for (int v = 0; v < buf.height; ++v) {
        for (int u = 0; u < buf.width; ++u) {
            const std::size_t pix = buf.pixel(u, v);
            const int point = buf.point_index[pix];
            if (point == kEmptyFragment) continue;
            if (point < 0 || point >= desc.vertex_count)
                throw IndexOutOfRange("fragment references point " + std::to_string(point) +
                                      " outside descriptor set of " +
                                      std::to_string(desc.vertex_count) + " vertices");
            const auto phi = sh_basis(pixel_ray_direction(u + 0.5, v + 0.5, cam));
            const double w = buf.weight[pix];
            img.mask[pix] = 1;
            for (int c = 0; c < DescriptorSet::kChannels; ++c) {
                double acc = 0.0;
                for (int k = 0; k < DescriptorSet::kCoeffs; ++k)
                    acc += desc.at(point, k, c) * phi[k];
                img.at(u, v, c) = w * acc;
            }
        }
    }
    return img;
}

FeatureImage eval_mesh_features(const MeshFragmentBuffer& buf, const DescriptorSet& desc,
                                const TriangleMesh& mesh, std::span<const int> vertex_map,
                                const Camera& cam) {
    FeatureImage img(buf.width, buf.height, DescriptorSet::kChannels);
    for (int v = 0; v < buf.height; ++v) {
        for (int u = 0; u < buf.width; ++u) {
            const std::size_t pix = buf.pixel(u, v);
            const int face = buf.face_index[pix];
            if (face == kEmptyFragment) continue;
            if (face < 0 || face >= static_cast<int>(mesh.face_count()))
                throw IndexOutOfRange("fragment references face " + std::to_string(face) +
                                      " outside mesh of " + std::to_string(mesh.face_count()) +
                                      " faces");
            const auto& corners = mesh.faces[face];
            const int r0 = mapped_row(vertex_map, corners[0], desc.vertex_count);
            const int r1 = mapped_row(vertex_map, corners[1], desc.vertex_count);
            const int r2 = mapped_row(vertex_map, corners[2], desc.vertex_count);
            const double a = buf.bary[3 * pix + 0];
            const double b = buf.bary[3 * pix + 1];
            const double g = buf.bary[3 * pix + 2];
            const auto phi = sh_basis(pixel_ray_direction(u + 0.5, v + 0.5, cam));
            img.mask[pix] = 1;
            for (int c = 0; c < DescriptorSet::kChannels; ++c) {
                double acc = 0.0;
                for (int k = 0; k < DescriptorSet::kCoeffs; ++k) {
                    const double coeff = a * desc.at(r0, k, c) + b * desc.at(r1, k, c) +
                                         g * desc.at(r2, k, c);
                    acc += coeff * phi[k];
                }
                img.at(u, v, c) = acc;
            }
        }
    }
    return img;
}

FeatureImage concat_features(const FeatureImage& pt, const FeatureImage& mesh) {
    if (pt.width != mesh.width || pt.height != mesh.height)
        throw DimensionMismatch("point image " + std::to_string(pt.width) + "x" +
                                std::to_string(pt.height) + " vs mesh image " +
                                std::to_string(mesh.width) + "x" + std::to_string(mesh.height));
    FeatureImage out(pt.width, pt.height, pt.channels + mesh.channels + 2);
    for (int v = 0; v < pt.height; ++v) {
        for (int u = 0; u < pt.width; ++u) {
            const std::size_t pix = out.pixel(u, v);
            int c = 0;
            for (int i = 0; i < pt.channels; ++i) out.at(u, v, c++) = pt.at(u, v, i);
            for (int i = 0; i < mesh.channels; ++i) out.at(u, v, c++) = mesh.at(u, v, i);
            out.at(u, v, c++) = pt.mask[pix] ? 1.0 : 0.0;
            out.at(u, v, c++) = mesh.mask[pix] ? 1.0 : 0.0;
            out.mask[pix] = (pt.mask[pix] || mesh.mask[pix]) ? 1 : 0;
        }
    }
    return out;
}

}  // namespace lumi
