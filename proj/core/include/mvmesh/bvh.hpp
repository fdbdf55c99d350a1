// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <vector>

#include "mvmesh/camera.hpp"
#include "mvmesh/mesh.hpp"

namespace mvmesh {

// Numeric policy for the ray-casting kernel. Hits require a ray parameter
// greater than kMinHitDistance; hits whose parameters agree within
// kHitTieTolerance resolve to the smaller face index so renders are
// deterministic across platforms and traversal orders.
inline constexpr double kMinHitDistance = 1e-6;
inline constexpr double kHitTieTolerance = 1e-9;
inline constexpr double kBarycentricEpsilon = 1e-9;

// Double-sided Moller-Trumbore with kBarycentricEpsilon slack on the
// barycentric bounds. Returns the ray parameter t (unfiltered; callers
// apply the minimum-distance rule), or nullopt on a miss.
std::optional<double> intersect_ray_triangle(const Ray& ray, const Vec3& a, const Vec3& b,
                                             const Vec3& c);

struct FaceIndexImage {
  int rows = 0, cols = 0;
  std::vector<FaceIndex> values;

  FaceIndex at(int i, int j) const { return values[static_cast<size_t>(i) * cols + j]; }
  FaceIndex& at(int i, int j) { return values[static_cast<size_t>(i) * cols + j]; }
};

// Axis-aligned bounding-box tree over mesh faces, leaf size <= 4.
// Immutable after construction; queries are reentrant.
class Bvh {
 public:
  explicit Bvh(const Mesh& mesh);

  // Index of the first face the ray intersects (t > kMinHitDistance), or
  // kNoFace. Parameter ties within kHitTieTolerance go to the smaller
  // face index; the result is identical to an exhaustive scan.
  FaceIndex first_hit(const Ray& ray) const;

  std::int64_t num_faces() const { return static_cast<std::int64_t>(tri_face_.size()); }
  std::int64_t num_nodes() const { return static_cast<std::int64_t>(nodes_.size()); }

 private:
  struct Node {
    double bmin[3], bmax[3];
    std::int32_t left = -1, right = -1;  // internal when left >= 0
    std::int32_t first = 0, count = 0;   // leaf triangle range
  };

  std::vector<Node> nodes_;
  // Triangles in leaf order: first vertex and the two edge vectors.
  std::vector<Vec3> tri_a_, tri_e1_, tri_e2_;
  std::vector<FaceIndex> tri_face_;

  std::int32_t build(std::vector<std::int64_t>& faces, std::int64_t begin, std::int64_t end,
                     const std::vector<Vec3>& centroids, const Mesh& mesh);
};

// Eq.-style per-pixel correspondence: the first face hit by the ray
// through the center of pixel (i, j).
FaceIndex pix2face(const Bvh& bvh, const Camera& camera, int i, int j);

// Batch form; bitwise identical to the per-pixel loop, parallelized by
// image rows.
FaceIndexImage render_face_index_image(const Bvh& bvh, const Camera& camera, int threads = 1);

}  // namespace mvmesh
