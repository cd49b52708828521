// Copyright Contributors to the lumimesh Project
// SPDX-License-Identifier: Apache-2.0

#include "lumi/mesh.hpp"

#include "lumi/error.hpp"

namespace lumi {

void TriangleMesh::validate() const {
    const int n = vertex_count();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& face = faces[f];
        for (int k = 0; k < 3; ++k) {
            if (face[k] < 0 || face[k] >= n) {
                throw Error("face " + std::to_string(f) + " references missing vertex " +
                            std::to_string(face[k]));
            }
        }
        if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
            throw Error("face " + std::to_string(f) + " repeats a vertex index");
        }
    }
}

} // namespace lumi
