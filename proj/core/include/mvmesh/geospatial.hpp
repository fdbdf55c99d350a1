// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvmesh/errors.hpp"
#include "mvmesh/types.hpp"

namespace mvmesh {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

struct Box2 {
  double min_x = kInfinity, min_y = kInfinity;
  double max_x = -kInfinity, max_y = -kInfinity;

  void expand(double x, double y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  bool contains(double x, double y) const {
    return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
  }
  bool overlaps(const Box2& o) const {
    return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
  }
};

// Closed 2D polygon in a projected CRS (meters). Rings are stored without
// the duplicate closing vertex; edges wrap around implicitly.
struct GeoPolygon {
  std::vector<Vec2> exterior;
  std::vector<std::vector<Vec2>> holes;
  ClassId class_id = kNullId;
  std::map<std::string, std::string> attributes;

  Box2 bounds() const;
  // On-edge points count as inside; interior membership by the even-odd rule.
  bool contains(double x, double y) const;
  double area() const;  // exterior minus holes, always >= 0
};

// A possibly multi-part region (e.g. a buffered RoI).
using MultiPolygon = std::vector<GeoPolygon>;

bool region_contains(const MultiPolygon& region, double x, double y);
double region_area(const MultiPolygon& region);

// Drops duplicate closing/consecutive points and validates the ring
// invariants (>= 3 distinct vertices, no self-intersection).
GeoPolygon normalize_polygon(GeoPolygon poly);

// Set of non-overlapping labeled polygons (ground truth / tree crowns).
// Immutable after construction; queries are reentrant.
class LabelPolygons {
 public:
  LabelPolygons() = default;
  // Normalizes every polygon and validates pairwise non-overlap
  // (area of intersection <= 1e-9 m^2).
  LabelPolygons(std::vector<GeoPolygon> polygons, std::string crs_tag);

  const std::vector<GeoPolygon>& polygons() const { return polygons_; }
  const std::string& crs_tag() const { return crs_tag_; }
  std::size_t size() const { return polygons_.size(); }

  // Class of the polygon containing (x,y), kNullId when none does.
  ClassId query(double x, double y) const;
  // Index of the containing polygon, or nullopt.
  std::optional<std::size_t> find(double x, double y) const;

  // Largest class id present (0 when empty); a lower bound for n_cls.
  ClassId max_class_id() const;

 private:
  std::vector<GeoPolygon> polygons_;
  std::vector<Box2> bounds_;
  std::string crs_tag_ = kUnspecifiedCrs;
};

inline ClassId query_polygon_label(const LabelPolygons& labels, double x, double y) {
  return labels.query(x, y);
}

// Region within distance r_b of any label polygon. Dilation arcs use 16
// segments per quarter circle; r_b == 0 returns the union of the inputs.
MultiPolygon buffer_polygons(const LabelPolygons& labels, double r_b);

enum class Interp { kNearest, kBilinear };

// Single-band float64 raster with an affine geotransform.
//
// Geotransform convention (GDAL-style), with continuous pixel coordinates
// (row r, col c) where (0,0) is the top-left corner of the top-left pixel:
//   x = gt[0] + c*gt[1] + r*gt[2]
//   y = gt[3] + c*gt[4] + r*gt[5]
// Pixel (i,j) has its center at continuous coordinates (i+0.5, j+0.5).
class GeoRaster {
 public:
  GeoRaster() = default;
  GeoRaster(int rows, int cols, const std::array<double, 6>& geotransform,
            double nodata, std::string crs_tag, double fill = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::array<double, 6>& geotransform() const { return gt_; }
  double nodata() const { return nodata_; }
  const std::string& crs_tag() const { return crs_tag_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double at(int row, int col) const { return values_[static_cast<size_t>(row) * cols_ + col]; }
  double& at(int row, int col) { return values_[static_cast<size_t>(row) * cols_ + col]; }
  bool is_nodata(double v) const;

  // World center of pixel (row, col).
  Vec2 pixel_center(int row, int col) const;
  // World -> continuous pixel coordinates (row, col).
  Vec2 world_to_pixel(double x, double y) const;
  // Continuous pixel (row, col) -> world.
  Vec2 pixel_to_world(double row, double col) const;

  // Cell size along x (column step length), meters.
  double cell_size_x() const;
  double cell_size_y() const;

  // Value at a world location, or nodata. Nearest picks the pixel whose
  // center is closest (boundary ties resolve to the larger index).
  // Bilinear blends the surrounding pixel centers; any positive-weight
  // contributor that is nodata or out of bounds poisons the result, and
  // zero-weight neighbors are ignored, so bilinear equals nearest exactly
  // at pixel centers. Outside the extent both methods return nodata.
  double query(double x, double y, Interp method) const;

  // True when (x,y) lies within the raster extent (boundary included).
  bool covers(double x, double y) const;

 private:
  int rows_ = 0, cols_ = 0;
  std::array<double, 6> gt_{0, 1, 0, 0, 0, -1};
  double nodata_ = -9999.0;
  std::vector<double> values_;
  std::string crs_tag_ = kUnspecifiedCrs;
  std::array<double, 4> inv_{};  // inverse of the 2x2 linear part
  void compute_inverse();
};

inline double query_raster(const GeoRaster& raster, double x, double y, Interp method) {
  return raster.query(x, y, method);
}

// Returns the common tag; "unspecified" matches anything (with a warning
// to stderr), anything else must match exactly or a ConsistencyError is
// thrown. `what` names the offending pair in the message.
std::string check_crs(const std::string& a, const std::string& b, const std::string& what);

// --- GeoJSON (FeatureCollection of Polygon/MultiPolygon features) ---
LabelPolygons load_label_polygons(const std::string& path);
void save_label_polygons(const LabelPolygons& labels, const std::string& path);

// --- ESRI ASCII grid (.asc) ---
GeoRaster load_ascii_grid(const std::string& path, const std::string& crs_tag = kUnspecifiedCrs);
void save_ascii_grid(const GeoRaster& raster, const std::string& path);

}  // namespace mvmesh
