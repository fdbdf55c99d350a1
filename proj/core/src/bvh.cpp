// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mvmesh/bvh.hpp"

#include <algorithm>
#include <cmath>

#include "mvmesh/parallel.hpp"

namespace mvmesh {

std::optional<double> intersect_ray_triangle(const Ray& ray, const Vec3& a, const Vec3& b,
                                             const Vec3& c) {
  Vec3 e1 = b - a;
  Vec3 e2 = c - a;
  Vec3 pvec = ray.direction.cross(e2);
  double det = e1.dot(pvec);
  if (det == 0.0) return std::nullopt;
  double inv_det = 1.0 / det;
  Vec3 tvec = ray.origin - a;
  double u = tvec.dot(pvec) * inv_det;
  if (u < -kBarycentricEpsilon || u > 1.0 + kBarycentricEpsilon) return std::nullopt;
  Vec3 qvec = tvec.cross(e1);
  double v = ray.direction.dot(qvec) * inv_det;
  if (v < -kBarycentricEpsilon || u + v > 1.0 + kBarycentricEpsilon) return std::nullopt;
  double t = e2.dot(qvec) * inv_det;
  if (!std::isfinite(t)) return std::nullopt;
  return t;
}

namespace {

constexpr int kLeafSize = 4;

struct FaceBox {
  Vec3 bmin, bmax;
};

FaceBox face_box(const Mesh& mesh, std::int64_t f) {
  const auto& face = mesh.faces[static_cast<size_t>(f)];
  FaceBox box;
  box.bmin = mesh.vertices[face[0]].cwiseMin(mesh.vertices[face[1]]).cwiseMin(mesh.vertices[face[2]]);
  box.bmax = mesh.vertices[face[0]].cwiseMax(mesh.vertices[face[1]]).cwiseMax(mesh.vertices[face[2]]);
  return box;
}

// Entry parameter of the ray into the box, or nullopt when the slab
// interval misses [t_lo, t_hi].
inline bool box_hit(const double bmin[3], const double bmax[3], const Vec3& origin,
                    const Vec3& dir, double t_lo, double t_hi, double* entry) {
  double tmin = t_lo, tmax = t_hi;
  for (int axis = 0; axis < 3; ++axis) {
    double o = origin[axis], d = dir[axis];
    if (d == 0.0) {
      if (o < bmin[axis] || o > bmax[axis]) return false;
      continue;
    }
    double inv = 1.0 / d;
    double t0 = (bmin[axis] - o) * inv;
    double t1 = (bmax[axis] - o) * inv;
    if (t0 > t1) std::swap(t0, t1);
    tmin = std::max(tmin, t0);
    tmax = std::min(tmax, t1);
    if (tmin > tmax) return false;
  }
  *entry = tmin;
  return true;
}

}  // namespace

Bvh::Bvh(const Mesh& mesh) {
  std::int64_t n = mesh.num_faces();
  tri_a_.reserve(static_cast<size_t>(n));
  tri_e1_.reserve(static_cast<size_t>(n));
  tri_e2_.reserve(static_cast<size_t>(n));
  tri_face_.reserve(static_cast<size_t>(n));
  if (n == 0) return;

  std::vector<Vec3> centroids(static_cast<size_t>(n));
  std::vector<std::int64_t> order(static_cast<size_t>(n));
  for (std::int64_t f = 0; f < n; ++f) {
    order[static_cast<size_t>(f)] = f;
    centroids[static_cast<size_t>(f)] = mesh.face_centroid(f);
  }
  nodes_.reserve(static_cast<size_t>(2 * n));
  build(order, 0, n, centroids, mesh);
}

std::int32_t Bvh::build(std::vector<std::int64_t>& faces, std::int64_t begin, std::int64_t end,
                        const std::vector<Vec3>& centroids, const Mesh& mesh) {
  std::int32_t index = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();

  Vec3 bmin(kInfinity, kInfinity, kInfinity), bmax = -bmin;
  Vec3 cmin = bmin, cmax = bmax;
  for (std::int64_t k = begin; k < end; ++k) {
    FaceBox box = face_box(mesh, faces[static_cast<size_t>(k)]);
    bmin = bmin.cwiseMin(box.bmin);
    bmax = bmax.cwiseMax(box.bmax);
    const Vec3& c = centroids[static_cast<size_t>(faces[static_cast<size_t>(k)])];
    cmin = cmin.cwiseMin(c);
    cmax = cmax.cwiseMax(c);
  }
  for (int axis = 0; axis < 3; ++axis) {
    nodes_[index].bmin[axis] = bmin[axis];
    nodes_[index].bmax[axis] = bmax[axis];
  }

  std::int64_t count = end - begin;
  Vec3 extent = cmax - cmin;
  int split_axis = 0;
  if (extent.y() > extent.x()) split_axis = 1;
  if (extent.z() > extent[split_axis]) split_axis = 2;

  if (count <= kLeafSize || extent[split_axis] <= 0.0) {
    nodes_[index].first = static_cast<std::int32_t>(tri_a_.size());
    nodes_[index].count = static_cast<std::int32_t>(count);
    // Leaf triangles in ascending face order keeps scans cache-friendly.
    std::sort(faces.begin() + begin, faces.begin() + end);
    for (std::int64_t k = begin; k < end; ++k) {
      std::int64_t f = faces[static_cast<size_t>(k)];
      const auto& face = mesh.faces[static_cast<size_t>(f)];
      tri_a_.push_back(mesh.vertices[face[0]]);
      tri_e1_.push_back(mesh.vertices[face[1]] - mesh.vertices[face[0]]);
      tri_e2_.push_back(mesh.vertices[face[2]] - mesh.vertices[face[0]]);
      tri_face_.push_back(f);
    }
    return index;
  }

  std::int64_t mid = begin + count / 2;
  std::nth_element(faces.begin() + begin, faces.begin() + mid, faces.begin() + end,
                   [&](std::int64_t lhs, std::int64_t rhs) {
                     return centroids[static_cast<size_t>(lhs)][split_axis] <
                            centroids[static_cast<size_t>(rhs)][split_axis];
                   });

  std::int32_t left = build(faces, begin, mid, centroids, mesh);
  std::int32_t right = build(faces, mid, end, centroids, mesh);
  nodes_[index].left = left;
  nodes_[index].right = right;
  return index;
}

FaceIndex Bvh::first_hit(const Ray& ray) const {
  if (nodes_.empty()) return kNoFace;

  struct Candidate {
    double t;
    FaceIndex face;
  };
  Candidate candidates[16];
  int num_candidates = 0;
  std::vector<Candidate> spill;  // stacked coincident geometry only
  double best_t = kInfinity;

  auto add_candidate = [&](double t, FaceIndex face) {
    if (t < best_t) best_t = t;
    if (num_candidates == 16) {
      // Evict entries that can no longer win the tie.
      int kept = 0;
      for (int k = 0; k < num_candidates; ++k) {
        if (candidates[k].t <= best_t + kHitTieTolerance) candidates[kept++] = candidates[k];
      }
      num_candidates = kept;
    }
    if (num_candidates < 16) {
      candidates[num_candidates++] = {t, face};
    } else {
      spill.push_back({t, face});
    }
  };

  std::int32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[static_cast<size_t>(stack[--top])];
    double entry;
    if (!box_hit(node.bmin, node.bmax, ray.origin, ray.direction, kMinHitDistance,
                 best_t + kHitTieTolerance, &entry)) {
      continue;
    }
    if (node.left < 0) {
      for (std::int32_t k = node.first; k < node.first + node.count; ++k) {
        Vec3 e1 = tri_e1_[static_cast<size_t>(k)];
        Vec3 e2 = tri_e2_[static_cast<size_t>(k)];
        Vec3 pvec = ray.direction.cross(e2);
        double det = e1.dot(pvec);
        if (det == 0.0) continue;
        double inv_det = 1.0 / det;
        Vec3 tvec = ray.origin - tri_a_[static_cast<size_t>(k)];
        double u = tvec.dot(pvec) * inv_det;
        if (u < -kBarycentricEpsilon || u > 1.0 + kBarycentricEpsilon) continue;
        Vec3 qvec = tvec.cross(e1);
        double v = ray.direction.dot(qvec) * inv_det;
        if (v < -kBarycentricEpsilon || u + v > 1.0 + kBarycentricEpsilon) continue;
        double t = e2.dot(qvec) * inv_det;
        if (!std::isfinite(t)) continue;
        if (!(t > kMinHitDistance) || t > best_t + kHitTieTolerance) continue;
        add_candidate(t, tri_face_[static_cast<size_t>(k)]);
      }
    } else {
      // Visit the nearer child first.
      double entry_left, entry_right;
      const Node& ln = nodes_[static_cast<size_t>(node.left)];
      const Node& rn = nodes_[static_cast<size_t>(node.right)];
      bool hit_left = box_hit(ln.bmin, ln.bmax, ray.origin, ray.direction, kMinHitDistance,
                              best_t + kHitTieTolerance, &entry_left);
      bool hit_right = box_hit(rn.bmin, rn.bmax, ray.origin, ray.direction, kMinHitDistance,
                               best_t + kHitTieTolerance, &entry_right);
      if (hit_left && hit_right) {
        if (entry_left <= entry_right) {
          stack[top++] = node.right;
          stack[top++] = node.left;
        } else {
          stack[top++] = node.left;
          stack[top++] = node.right;
        }
      } else if (hit_left) {
        stack[top++] = node.left;
      } else if (hit_right) {
        stack[top++] = node.right;
      }
    }
  }

  FaceIndex best_face = kNoFace;
  auto consider = [&](const Candidate& cand) {
    if (cand.t <= best_t + kHitTieTolerance) {
      if (best_face == kNoFace || cand.face < best_face) best_face = cand.face;
    }
  };
  for (int k = 0; k < num_candidates; ++k) consider(candidates[k]);
  for (const auto& cand : spill) consider(cand);
  return best_face;
}

FaceIndex pix2face(const Bvh& bvh, const Camera& camera, int i, int j) {
  return bvh.first_hit(pixel_ray(camera, i, j));
}

FaceIndexImage render_face_index_image(const Bvh& bvh, const Camera& camera, int threads) {
  FaceIndexImage image;
  image.rows = camera.height;
  image.cols = camera.width;
  image.values.assign(static_cast<size_t>(image.rows) * image.cols, kNoFace);
  parallel_for(image.rows, threads, [&](std::int64_t row_begin, std::int64_t row_end) {
    for (std::int64_t i = row_begin; i < row_end; ++i) {
      for (int j = 0; j < camera.width; ++j) {
        image.at(static_cast<int>(i), j) = bvh.first_hit(pixel_ray(camera, static_cast<int>(i), j));
      }
    }
  });
  return image;
}

}  // namespace mvmesh
