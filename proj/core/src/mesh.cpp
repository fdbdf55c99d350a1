// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mvmesh/mesh.hpp"

#include <cmath>

namespace mvmesh {

Vec3 Mesh::face_centroid(FaceIndex f) const {
  const auto& face = faces[static_cast<size_t>(f)];
  return (vertices[face[0]] + vertices[face[1]] + vertices[face[2]]) / 3.0;
}

void Mesh::validate() const {
  std::int64_t n_v = num_vertices();
  for (size_t f = 0; f < faces.size(); ++f) {
    const auto& face = faces[f];
    for (int k = 0; k < 3; ++k) {
      if (face[k] < 0 || face[k] >= n_v) {
        throw InputError("face " + std::to_string(f) + " references vertex " +
                         std::to_string(face[k]) + " out of range");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw InputError("face " + std::to_string(f) + " has repeated vertex indices");
    }
  }
  if (!face_labels.empty() && face_labels.size() != faces.size()) {
    throw InputError("face label array length does not match face count");
  }
}

double face_area_3d(const Mesh& mesh, FaceIndex f) {
  const auto& face = mesh.faces[static_cast<size_t>(f)];
  Vec3 e1 = mesh.vertices[face[1]] - mesh.vertices[face[0]];
  Vec3 e2 = mesh.vertices[face[2]] - mesh.vertices[face[0]];
  return 0.5 * e1.cross(e2).norm();
}

MeshCrop crop_mesh_to_roi(const Mesh& mesh, const MultiPolygon& roi) {
  MeshCrop out;
  out.old_to_new.assign(mesh.faces.size(), -1);

  std::vector<char> vertex_in(mesh.vertices.size(), 0);
  for (size_t v = 0; v < mesh.vertices.size(); ++v) {
    const Vec3& p = mesh.vertices[v];
    vertex_in[v] = region_contains(roi, p.x(), p.y()) ? 1 : 0;
  }

  std::vector<std::int64_t> vertex_map(mesh.vertices.size(), -1);
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    if (!vertex_in[face[0]] || !vertex_in[face[1]] || !vertex_in[face[2]]) continue;
    std::array<std::int64_t, 3> mapped;
    for (int k = 0; k < 3; ++k) {
      std::int64_t v = face[k];
      if (vertex_map[v] < 0) {
        vertex_map[v] = out.mesh.num_vertices();
        out.mesh.vertices.push_back(mesh.vertices[v]);
      }
      mapped[k] = vertex_map[v];
    }
    out.old_to_new[f] = out.mesh.num_faces();
    out.new_to_old.push_back(static_cast<std::int64_t>(f));
    out.mesh.faces.push_back(mapped);
    if (mesh.labeled()) out.mesh.face_labels.push_back(mesh.face_labels[f]);
  }
  return out;
}

namespace {

double height_above_ground(const GeoRaster& dtm, const Vec3& p) {
  double ground = dtm.query(p.x(), p.y(), Interp::kBilinear);
  if (dtm.is_nodata(ground)) return kInfinity;
  return p.z() - ground;
}

}  // namespace

std::vector<double> face_height_above_ground(const Mesh& mesh, const GeoRaster& dtm) {
  std::vector<double> heights(mesh.faces.size());
  for (std::int64_t f = 0; f < mesh.num_faces(); ++f) {
    heights[static_cast<size_t>(f)] = height_above_ground(dtm, mesh.face_centroid(f));
  }
  return heights;
}

std::vector<double> vertex_height_above_ground(const Mesh& mesh, const GeoRaster& dtm) {
  std::vector<double> heights(mesh.vertices.size());
  for (size_t v = 0; v < mesh.vertices.size(); ++v) {
    heights[v] = height_above_ground(dtm, mesh.vertices[v]);
  }
  return heights;
}

}  // namespace mvmesh
