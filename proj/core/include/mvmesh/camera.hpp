// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mvmesh/geospatial.hpp"

namespace mvmesh {

// Pinhole camera (no distortion; calibration is assumed done upstream).
// The camera looks along +Z of its own frame, x right, y down, so pixel
// row i grows with camera-frame y. `cam_to_world` maps camera coordinates
// to world coordinates.
struct Camera {
  Eigen::Matrix3d intrinsic = Eigen::Matrix3d::Identity();
  Eigen::Matrix4d cam_to_world = Eigen::Matrix4d::Identity();
  int width = 0, height = 0;
  std::string id;

  double fx() const { return intrinsic(0, 0); }
  double fy() const { return intrinsic(1, 1); }
  double cx() const { return intrinsic(0, 2); }
  double cy() const { return intrinsic(1, 2); }

  Eigen::Matrix3d rotation() const { return cam_to_world.topLeftCorner<3, 3>(); }
  Vec3 center() const { return cam_to_world.topRightCorner<3, 1>(); }

  // Throws InputError when the intrinsics are out of range or the rotation
  // block is not a proper rotation (orthonormal, det +1, within 1e-6).
  void validate() const;
};

struct CameraSet {
  std::vector<Camera> cameras;
  std::string crs_tag = kUnspecifiedCrs;

  const Camera* find(const std::string& id) const;
};

struct Ray {
  Vec3 origin;
  Vec3 direction;  // unit length
};

// Ray through the center of pixel (i=row, j=col).
Ray pixel_ray(const Camera& camera, int i, int j);

// Projection of a world point. (i, j) use the same pixel-index convention
// as pixel_ray: integer coordinates are pixel centers, so the point hit by
// pixel_ray(c, i, j) projects back to exactly (i, j). Values may fall
// outside the image bounds; nullopt marks points at or behind the camera
// plane (camera-frame z <= 1e-9).
struct PixelProjection {
  double i = 0.0, j = 0.0;
  double depth = 0.0;  // camera-frame z, meters
};
std::optional<PixelProjection> project_point(const Camera& camera, const Vec3& point);

// Keeps cameras whose center (x, y) lies inside the region (on-edge counts
// as inside).
CameraSet filter_cameras_in_roi(const CameraSet& cams, const MultiPolygon& roi);

// JSON camera file:
// { "crs_tag": str, "cameras": [ { "id": str, "width": int, "height": int,
//   "K": [9 floats row-major], "T_cam_to_world": [16 floats row-major] } ] }
CameraSet load_cameras(const std::string& path);
void save_cameras(const CameraSet& cams, const std::string& path);

}  // namespace mvmesh
