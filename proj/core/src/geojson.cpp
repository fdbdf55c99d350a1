// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "mvmesh/geospatial.hpp"

namespace mvmesh {
namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return doc;
}

std::vector<Vec2> parse_ring(const json& coords, const std::string& path) {
  std::vector<Vec2> ring;
  for (const auto& pt : coords) {
    if (!pt.is_array() || pt.size() < 2) throw InputError(path + ": malformed ring coordinate");
    ring.emplace_back(pt[0].get<double>(), pt[1].get<double>());
  }
  return ring;
}

GeoPolygon parse_polygon_rings(const json& rings, const std::string& path) {
  if (!rings.is_array() || rings.empty()) throw InputError(path + ": polygon without rings");
  GeoPolygon poly;
  poly.exterior = parse_ring(rings[0], path);
  for (size_t h = 1; h < rings.size(); ++h) poly.holes.push_back(parse_ring(rings[h], path));
  return poly;
}

void apply_properties(GeoPolygon& poly, const json& feature, const std::string& path) {
  if (!feature.contains("properties") || feature["properties"].is_null()) return;
  const json& props = feature["properties"];
  for (auto it = props.begin(); it != props.end(); ++it) {
    if (it.key() == "class_id") {
      if (it.value().is_null()) {
        poly.class_id = kNullId;
      } else if (it.value().is_number_integer()) {
        poly.class_id = it.value().get<ClassId>();
      } else {
        throw InputError(path + ": class_id must be an integer or null");
      }
    } else {
      poly.attributes[it.key()] =
          it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    }
  }
}

json ring_to_json(const std::vector<Vec2>& ring) {
  json out = json::array();
  for (const auto& p : ring) out.push_back({p.x(), p.y()});
  if (!ring.empty()) out.push_back({ring.front().x(), ring.front().y()});  // close
  return out;
}

}  // namespace

LabelPolygons load_label_polygons(const std::string& path) {
  json doc = load_json_file(path);
  if (doc.value("type", "") != "FeatureCollection") {
    throw InputError(path + ": expected a GeoJSON FeatureCollection");
  }
  std::string crs_tag = kUnspecifiedCrs;
  if (doc.contains("crs_tag")) {
    crs_tag = doc["crs_tag"].get<std::string>();
  } else {
    std::cerr << "Warning: " << path << " has no crs_tag; assuming '" << kUnspecifiedCrs
              << "'\n";
  }

  std::vector<GeoPolygon> polygons;
  for (const auto& feature : doc.value("features", json::array())) {
    if (!feature.contains("geometry") || feature["geometry"].is_null()) continue;
    const json& geom = feature["geometry"];
    std::string type = geom.value("type", "");
    if (type == "Polygon") {
      GeoPolygon poly = parse_polygon_rings(geom["coordinates"], path);
      apply_properties(poly, feature, path);
      polygons.push_back(std::move(poly));
    } else if (type == "MultiPolygon") {
      for (const auto& rings : geom["coordinates"]) {
        GeoPolygon poly = parse_polygon_rings(rings, path);
        apply_properties(poly, feature, path);
        polygons.push_back(std::move(poly));
      }
    } else {
      throw InputError(path + ": unsupported geometry type '" + type + "'");
    }
  }
  return LabelPolygons(std::move(polygons), crs_tag);
}

void save_label_polygons(const LabelPolygons& labels, const std::string& path) {
  json features = json::array();
  for (const auto& poly : labels.polygons()) {
    json rings = json::array();
    rings.push_back(ring_to_json(poly.exterior));
    for (const auto& hole : poly.holes) rings.push_back(ring_to_json(hole));
    json props;
    props["class_id"] = poly.class_id == kNullId ? json(nullptr) : json(poly.class_id);
    for (const auto& [key, value] : poly.attributes) props[key] = value;
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Polygon"}, {"coordinates", rings}}},
                        {"properties", props}});
  }
  json doc = {{"type", "FeatureCollection"},
              {"crs_tag", labels.crs_tag()},
              {"features", features}};
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << doc.dump(1) << "\n";
}

}  // namespace mvmesh
