// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mvmesh/camera.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

namespace mvmesh {

void Camera::validate() const {
  if (width <= 0 || height <= 0) throw InputError("camera " + id + ": non-positive image size");
  if (!(fx() > 0.0) || !(fy() > 0.0)) throw InputError("camera " + id + ": focal lengths must be positive");
  if (!(cx() > 0.0 && cx() < width) || !(cy() > 0.0 && cy() < height)) {
    throw InputError("camera " + id + ": principal point outside the image");
  }
  Eigen::Matrix3d r = rotation();
  if ((r * r.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
      std::abs(r.determinant() - 1.0) > 1e-6) {
    throw InputError("camera " + id + ": extrinsic rotation is not a proper rotation");
  }
  Eigen::RowVector4d bottom = cam_to_world.row(3);
  if ((bottom - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() > 1e-9) {
    throw InputError("camera " + id + ": extrinsic bottom row must be [0 0 0 1]");
  }
}

const Camera* CameraSet::find(const std::string& id) const {
  for (const auto& cam : cameras) {
    if (cam.id == id) return &cam;
  }
  return nullptr;
}

Ray pixel_ray(const Camera& camera, int i, int j) {
  if (i < 0 || i >= camera.height || j < 0 || j >= camera.width) {
    throw InputError("camera " + camera.id + ": pixel (" + std::to_string(i) + "," +
                     std::to_string(j) + ") out of bounds");
  }
  Vec3 dir_cam((j + 0.5 - camera.cx()) / camera.fx(),
               (i + 0.5 - camera.cy()) / camera.fy(), 1.0);
  Vec3 dir_world = camera.rotation() * dir_cam;
  return Ray{camera.center(), dir_world.normalized()};
}

std::optional<PixelProjection> project_point(const Camera& camera, const Vec3& point) {
  Vec3 p_cam = camera.rotation().transpose() * (point - camera.center());
  if (p_cam.z() <= 1e-9) return std::nullopt;
  double j = camera.fx() * p_cam.x() / p_cam.z() + camera.cx() - 0.5;
  double i = camera.fy() * p_cam.y() / p_cam.z() + camera.cy() - 0.5;
  return PixelProjection{i, j, p_cam.z()};
}

CameraSet filter_cameras_in_roi(const CameraSet& cams, const MultiPolygon& roi) {
  CameraSet out;
  out.crs_tag = cams.crs_tag;
  for (const auto& cam : cams.cameras) {
    Vec3 c = cam.center();
    if (region_contains(roi, c.x(), c.y())) out.cameras.push_back(cam);
  }
  return out;
}

CameraSet load_cameras(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }

  CameraSet set;
  set.crs_tag = doc.value("crs_tag", std::string(kUnspecifiedCrs));
  std::set<std::string> ids;
  for (const auto& entry : doc.value("cameras", nlohmann::json::array())) {
    Camera cam;
    cam.id = entry.at("id").get<std::string>();
    cam.width = entry.at("width").get<int>();
    cam.height = entry.at("height").get<int>();
    auto k = entry.at("K").get<std::vector<double>>();
    auto t = entry.at("T_cam_to_world").get<std::vector<double>>();
    if (k.size() != 9) throw InputError(path + ": camera " + cam.id + ": K must have 9 entries");
    if (t.size() != 16) {
      throw InputError(path + ": camera " + cam.id + ": T_cam_to_world must have 16 entries");
    }
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) cam.intrinsic(r, c) = k[static_cast<size_t>(r) * 3 + c];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) cam.cam_to_world(r, c) = t[static_cast<size_t>(r) * 4 + c];
    cam.validate();
    if (!ids.insert(cam.id).second) throw InputError(path + ": duplicate camera id " + cam.id);
    set.cameras.push_back(std::move(cam));
  }
  return set;
}

void save_cameras(const CameraSet& cams, const std::string& path) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& cam : cams.cameras) {
    std::vector<double> k(9), t(16);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) k[static_cast<size_t>(r) * 3 + c] = cam.intrinsic(r, c);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t[static_cast<size_t>(r) * 4 + c] = cam.cam_to_world(r, c);
    entries.push_back({{"id", cam.id},
                       {"width", cam.width},
                       {"height", cam.height},
                       {"K", k},
                       {"T_cam_to_world", t}});
  }
  nlohmann::json doc = {{"crs_tag", cams.crs_tag}, {"cameras", entries}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << doc.dump(1) << "\n";
}

}  // namespace mvmesh
