// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include "mvmesh/geospatial.hpp"

#include <boost/geometry.hpp>
#include <boost/geometry/strategies/buffer.hpp>
#include <cmath>
#include <iostream>
#include <sstream>

namespace bg = boost::geometry;

namespace mvmesh {
namespace {

using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint>;
using BoostMultiPolygon = bg::model::multi_polygon<BoostPolygon>;

BoostPolygon to_boost(const GeoPolygon& poly) {
  BoostPolygon out;
  for (const auto& p : poly.exterior) bg::append(out.outer(), BoostPoint(p.x(), p.y()));
  out.inners().resize(poly.holes.size());
  for (size_t h = 0; h < poly.holes.size(); ++h) {
    for (const auto& p : poly.holes[h]) bg::append(out.inners()[h], BoostPoint(p.x(), p.y()));
  }
  bg::correct(out);
  return out;
}

std::vector<Vec2> ring_from_boost(const BoostPolygon::ring_type& ring) {
  std::vector<Vec2> out;
  out.reserve(ring.size());
  for (const auto& p : ring) out.emplace_back(bg::get<0>(p), bg::get<1>(p));
  // boost rings carry the duplicate closing point; we store rings open
  if (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

GeoPolygon from_boost(const BoostPolygon& poly) {
  GeoPolygon out;
  out.exterior = ring_from_boost(poly.outer());
  for (const auto& inner : poly.inners()) out.holes.push_back(ring_from_boost(inner));
  return out;
}

double ring_signed_area(const std::vector<Vec2>& ring) {
  double acc = 0.0;
  size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % n];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * acc;
}

// On-edge means within 1e-9 m of a ring segment.
constexpr double kOnEdgeDistSq = 1e-18;

bool point_on_ring(const std::vector<Vec2>& ring, double x, double y) {
  size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[(i + 1) % n];
    double ex = b.x() - a.x(), ey = b.y() - a.y();
    double px = x - a.x(), py = y - a.y();
    double len_sq = ex * ex + ey * ey;
    if (len_sq == 0.0) continue;
    double t = (px * ex + py * ey) / len_sq;
    if (t < 0.0 || t > 1.0) continue;
    double cross = px * ey - py * ex;
    if (cross * cross <= kOnEdgeDistSq * len_sq) return true;
  }
  return false;
}

// PNPOLY even-odd crossing count for one ring (boundary excluded; handled
// separately so the on-edge convention stays explicit).
bool point_in_ring_parity(const std::vector<Vec2>& ring, double x, double y) {
  bool inside = false;
  size_t n = ring.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& pi = ring[i];
    const Vec2& pj = ring[j];
    if ((pi.y() > y) != (pj.y() > y)) {
      double x_int = (pj.x() - pi.x()) * (y - pi.y()) / (pj.y() - pi.y()) + pi.x();
      if (x < x_int) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

Box2 GeoPolygon::bounds() const {
  Box2 box;
  for (const auto& p : exterior) box.expand(p.x(), p.y());
  return box;
}

bool GeoPolygon::contains(double x, double y) const {
  if (point_on_ring(exterior, x, y)) return true;
  for (const auto& hole : holes) {
    if (point_on_ring(hole, x, y)) return true;
  }
  bool parity = point_in_ring_parity(exterior, x, y);
  for (const auto& hole : holes) {
    if (point_in_ring_parity(hole, x, y)) parity = !parity;
  }
  return parity;
}

double GeoPolygon::area() const {
  double a = std::abs(ring_signed_area(exterior));
  for (const auto& hole : holes) a -= std::abs(ring_signed_area(hole));
  return std::max(a, 0.0);
}

bool region_contains(const MultiPolygon& region, double x, double y) {
  for (const auto& part : region) {
    if (part.contains(x, y)) return true;
  }
  return false;
}

double region_area(const MultiPolygon& region) {
  double a = 0.0;
  for (const auto& part : region) a += part.area();
  return a;
}

GeoPolygon normalize_polygon(GeoPolygon poly) {
  auto normalize_ring = [](std::vector<Vec2>& ring) {
    if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    std::vector<Vec2> cleaned;
    cleaned.reserve(ring.size());
    for (const auto& p : ring) {
      if (cleaned.empty() || cleaned.back() != p) cleaned.push_back(p);
    }
    ring = std::move(cleaned);
  };
  normalize_ring(poly.exterior);
  if (poly.exterior.size() < 3) {
    throw InputError("polygon exterior ring has fewer than 3 distinct vertices");
  }
  for (auto& hole : poly.holes) normalize_ring(hole);

  std::string reason;
  if (!bg::is_valid(to_boost(poly), reason)) {
    throw InputError("invalid polygon ring (" + reason + ")");
  }
  return poly;
}

LabelPolygons::LabelPolygons(std::vector<GeoPolygon> polygons, std::string crs_tag)
    : crs_tag_(std::move(crs_tag)) {
  polygons_.reserve(polygons.size());
  for (auto& poly : polygons) {
    if (poly.class_id != kNullId && (poly.class_id < 1 || poly.class_id > kMaxClassId)) {
      throw InputError("polygon class_id " + std::to_string(poly.class_id) +
                       " outside 1.." + std::to_string(kMaxClassId));
    }
    polygons_.push_back(normalize_polygon(std::move(poly)));
  }
  bounds_.reserve(polygons_.size());
  for (const auto& poly : polygons_) bounds_.push_back(poly.bounds());

  // Pairwise non-overlap: area of intersection <= 1e-9 m^2.
  for (size_t i = 0; i < polygons_.size(); ++i) {
    BoostPolygon bi = to_boost(polygons_[i]);
    for (size_t j = i + 1; j < polygons_.size(); ++j) {
      if (!bounds_[i].overlaps(bounds_[j])) continue;
      BoostMultiPolygon overlap;
      bg::intersection(bi, to_boost(polygons_[j]), overlap);
      if (bg::area(overlap) > 1e-9) {
        throw InputError("label polygons " + std::to_string(i) + " and " +
                         std::to_string(j) + " overlap");
      }
    }
  }
}

ClassId LabelPolygons::query(double x, double y) const {
  auto hit = find(x, y);
  return hit ? polygons_[*hit].class_id : kNullId;
}

std::optional<std::size_t> LabelPolygons::find(double x, double y) const {
  for (size_t i = 0; i < polygons_.size(); ++i) {
    if (!bounds_[i].contains(x, y)) continue;
    if (polygons_[i].contains(x, y)) return i;
  }
  return std::nullopt;
}

ClassId LabelPolygons::max_class_id() const {
  ClassId best = 0;
  for (const auto& poly : polygons_) best = std::max(best, poly.class_id);
  return best;
}

MultiPolygon buffer_polygons(const LabelPolygons& labels, double r_b) {
  if (r_b < 0.0) throw InputError("buffer radius must be >= 0");

  BoostMultiPolygon input;
  for (const auto& poly : labels.polygons()) input.push_back(to_boost(poly));

  BoostMultiPolygon result;
  if (r_b == 0.0) {
    for (const auto& poly : input) {
      BoostMultiPolygon merged;
      bg::union_(result, poly, merged);
      result = std::move(merged);
    }
  } else {
    // 16 segments per quarter arc
    bg::strategy::buffer::distance_symmetric<double> distance(r_b);
    bg::strategy::buffer::side_straight side;
    bg::strategy::buffer::join_round join(64);
    bg::strategy::buffer::end_round end(64);
    bg::strategy::buffer::point_circle point(64);
    bg::buffer(input, result, distance, side, join, end, point);
  }

  MultiPolygon out;
  out.reserve(result.size());
  for (const auto& poly : result) out.push_back(from_boost(poly));
  return out;
}

GeoRaster::GeoRaster(int rows, int cols, const std::array<double, 6>& geotransform,
                     double nodata, std::string crs_tag, double fill)
    : rows_(rows),
      cols_(cols),
      gt_(geotransform),
      nodata_(nodata),
      values_(static_cast<size_t>(rows) * static_cast<size_t>(cols), fill),
      crs_tag_(std::move(crs_tag)) {
  if (rows <= 0 || cols <= 0) throw InputError("raster dimensions must be positive");
  compute_inverse();
}

void GeoRaster::compute_inverse() {
  double det = gt_[1] * gt_[5] - gt_[2] * gt_[4];
  if (det == 0.0 || !std::isfinite(det)) {
    throw InputError("raster geotransform is not invertible");
  }
  inv_ = {gt_[5] / det, -gt_[2] / det, -gt_[4] / det, gt_[1] / det};
}

bool GeoRaster::is_nodata(double v) const {
  if (std::isnan(nodata_)) return std::isnan(v);
  return v == nodata_;
}

Vec2 GeoRaster::pixel_center(int row, int col) const {
  return pixel_to_world(row + 0.5, col + 0.5);
}

Vec2 GeoRaster::pixel_to_world(double row, double col) const {
  return {gt_[0] + col * gt_[1] + row * gt_[2], gt_[3] + col * gt_[4] + row * gt_[5]};
}

Vec2 GeoRaster::world_to_pixel(double x, double y) const {
  double dx = x - gt_[0];
  double dy = y - gt_[3];
  double col = inv_[0] * dx + inv_[1] * dy;
  double row = inv_[2] * dx + inv_[3] * dy;
  return {row, col};
}

double GeoRaster::cell_size_x() const { return std::hypot(gt_[1], gt_[4]); }
double GeoRaster::cell_size_y() const { return std::hypot(gt_[2], gt_[5]); }

bool GeoRaster::covers(double x, double y) const {
  Vec2 rc = world_to_pixel(x, y);
  return rc.x() >= 0.0 && rc.x() <= rows_ && rc.y() >= 0.0 && rc.y() <= cols_;
}

double GeoRaster::query(double x, double y, Interp method) const {
  Vec2 rc = world_to_pixel(x, y);
  double r = rc.x(), c = rc.y();
  if (r < 0.0 || r > rows_ || c < 0.0 || c > cols_) return nodata_;

  if (method == Interp::kNearest) {
    int ri = std::min(static_cast<int>(std::floor(r)), rows_ - 1);
    int ci = std::min(static_cast<int>(std::floor(c)), cols_ - 1);
    return at(ri, ci);
  }

  double gr = r - 0.5, gc = c - 0.5;
  double fr0 = std::floor(gr), fc0 = std::floor(gc);
  int r0 = static_cast<int>(fr0), c0 = static_cast<int>(fc0);
  double fr = gr - fr0, fc = gc - fc0;
  const double weights[4] = {(1.0 - fr) * (1.0 - fc), (1.0 - fr) * fc,
                             fr * (1.0 - fc), fr * fc};
  const int offsets[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (weights[k] == 0.0) continue;
    int rr = r0 + offsets[k][0], cc = c0 + offsets[k][1];
    if (rr < 0 || rr >= rows_ || cc < 0 || cc >= cols_) return nodata_;
    double v = at(rr, cc);
    if (is_nodata(v)) return nodata_;
    acc += weights[k] * v;
  }
  return acc;
}

std::string check_crs(const std::string& a, const std::string& b, const std::string& what) {
  if (a == kUnspecifiedCrs || b == kUnspecifiedCrs) {
    if (a != b) {
      std::cerr << "Warning: unspecified CRS matched against '"
                << (a == kUnspecifiedCrs ? b : a) << "' for " << what << "\n";
    }
    return a == kUnspecifiedCrs ? b : a;
  }
  if (a != b) {
    throw ConsistencyError("CRS mismatch for " + what + ": '" + a + "' vs '" + b + "'");
  }
  return a;
}

}  // namespace mvmesh
