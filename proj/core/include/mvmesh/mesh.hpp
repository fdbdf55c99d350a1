// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mvmesh/geospatial.hpp"
#include "mvmesh/types.hpp"

namespace mvmesh {

// Georeferenced triangle mesh. `face_labels` is either empty (unlabeled)
// or one ClassId per face.
struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::int64_t, 3>> faces;
  std::vector<ClassId> face_labels;

  std::int64_t num_vertices() const { return static_cast<std::int64_t>(vertices.size()); }
  std::int64_t num_faces() const { return static_cast<std::int64_t>(faces.size()); }
  bool labeled() const { return !face_labels.empty(); }

  Vec3 face_centroid(FaceIndex f) const;

  // Index bounds and distinctness; throws InputError on violation.
  void validate() const;
};

// One-half the cross-product magnitude of two edges.
double face_area_3d(const Mesh& mesh, FaceIndex f);

struct MeshCrop {
  Mesh mesh;
  // old face index -> new face index, -1 when dropped.
  std::vector<std::int64_t> old_to_new;
  std::vector<std::int64_t> new_to_old;
};

// Keeps faces whose three vertices' (x,y) all lie inside the region;
// unreferenced vertices are dropped. Labels transfer through the remap.
MeshCrop crop_mesh_to_roi(const Mesh& mesh, const MultiPolygon& roi);

// Per-face height of the face centroid above the terrain (bilinear DTM
// query). Centroids over nodata or outside the DTM get +inf so they are
// never treated as ground.
std::vector<double> face_height_above_ground(const Mesh& mesh, const GeoRaster& dtm);

// Per-vertex variant used by the training ground filter.
std::vector<double> vertex_height_above_ground(const Mesh& mesh, const GeoRaster& dtm);

struct PlyLoadReport {
  std::int64_t degenerate_faces_dropped = 0;
};

// ASCII PLY with float64 vertex x/y/z and a face vertex_indices list;
// an optional per-face int property `class_id` (-1 = null) carries labels.
// Degenerate faces (repeated indices or 3D area <= 1e-12 m^2) are dropped
// and counted in the report.
Mesh load_ply(const std::string& path, PlyLoadReport* report = nullptr);
void save_ply(const Mesh& mesh, const std::string& path);

}  // namespace mvmesh
