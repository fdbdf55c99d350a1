// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mvmesh/mesh.hpp"

namespace mvmesh {
namespace {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct PlyProperty {
  std::string name;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  std::int64_t count = 0;
  std::vector<PlyProperty> properties;
};

bool is_scalar_type(const std::string& t) {
  return t == "char" || t == "uchar" || t == "short" || t == "ushort" || t == "int" ||
         t == "uint" || t == "float" || t == "double" || t == "int8" || t == "uint8" ||
         t == "int16" || t == "uint16" || t == "int32" || t == "uint32" || t == "float32" ||
         t == "float64";
}

}  // namespace

Mesh load_ply(const std::string& path, PlyLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line) || line.rfind("ply", 0) != 0) {
    throw InputError(path + ": not a PLY file (missing 'ply' magic)");
  }

  std::vector<PlyElement> elements;
  bool ascii = false;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "comment" || keyword == "obj_info" || keyword.empty()) continue;
    if (keyword == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
      if (!ascii) throw InputError(path + ": only ascii PLY is supported (line " +
                                   std::to_string(line_no) + ")");
    } else if (keyword == "element") {
      PlyElement el;
      ls >> el.name >> el.count;
      elements.push_back(el);
    } else if (keyword == "property") {
      if (elements.empty()) throw InputError(path + ": property before any element (line " +
                                             std::to_string(line_no) + ")");
      std::string type;
      ls >> type;
      PlyProperty prop;
      if (type == "list") {
        std::string count_type, value_type;
        ls >> count_type >> value_type >> prop.name;
        prop.is_list = true;
      } else {
        if (!is_scalar_type(type)) {
          throw InputError(path + ": unknown property type '" + type + "' (line " +
                           std::to_string(line_no) + ")");
        }
        ls >> prop.name;
      }
      elements.back().properties.push_back(prop);
    } else if (keyword == "end_header") {
      break;
    } else {
      throw InputError(path + ": unexpected header keyword '" + keyword + "' (line " +
                       std::to_string(line_no) + ")");
    }
  }

  Mesh mesh;
  std::int64_t degenerate = 0;
  bool has_labels = false;

  for (const auto& el : elements) {
    if (el.name == "vertex") {
      int ix = -1, iy = -1, iz = -1;
      for (size_t p = 0; p < el.properties.size(); ++p) {
        if (el.properties[p].name == "x") ix = static_cast<int>(p);
        if (el.properties[p].name == "y") iy = static_cast<int>(p);
        if (el.properties[p].name == "z") iz = static_cast<int>(p);
      }
      if (ix < 0 || iy < 0 || iz < 0) throw InputError(path + ": vertex element lacks x/y/z");
      mesh.vertices.reserve(static_cast<size_t>(el.count));
      std::vector<double> row(el.properties.size());
      for (std::int64_t v = 0; v < el.count; ++v) {
        ++line_no;
        for (auto& value : row) {
          if (!(in >> value)) {
            throw InputError(path + ": truncated vertex data near line " +
                             std::to_string(line_no));
          }
        }
        mesh.vertices.emplace_back(row[ix], row[iy], row[iz]);
      }
    } else if (el.name == "face") {
      int list_at = -1, class_at = -1;
      for (size_t p = 0; p < el.properties.size(); ++p) {
        const auto& prop = el.properties[p];
        if (prop.is_list && (prop.name == "vertex_indices" || prop.name == "vertex_index")) {
          list_at = static_cast<int>(p);
        }
        if (!prop.is_list && prop.name == "class_id") class_at = static_cast<int>(p);
      }
      if (list_at < 0) throw InputError(path + ": face element lacks vertex_indices");
      has_labels = class_at >= 0;
      for (std::int64_t f = 0; f < el.count; ++f) {
        ++line_no;
        std::array<std::int64_t, 3> face{};
        ClassId label = kNullId;
        for (size_t p = 0; p < el.properties.size(); ++p) {
          if (static_cast<int>(p) == list_at) {
            int n = 0;
            if (!(in >> n)) throw InputError(path + ": truncated face data near line " +
                                             std::to_string(line_no));
            if (n != 3) throw InputError(path + ": face near line " + std::to_string(line_no) +
                                         " has " + std::to_string(n) + " vertices (triangles only)");
            for (int k = 0; k < 3; ++k) {
              if (!(in >> face[k])) {
                throw InputError(path + ": truncated face data near line " +
                                 std::to_string(line_no));
              }
            }
          } else {
            double value = 0.0;
            if (!(in >> value)) throw InputError(path + ": truncated face data near line " +
                                                 std::to_string(line_no));
            if (static_cast<int>(p) == class_at) {
              label = value < 0 ? kNullId : static_cast<ClassId>(value);
            }
          }
        }
        for (int k = 0; k < 3; ++k) {
          if (face[k] < 0 || face[k] >= mesh.num_vertices()) {
            throw InputError(path + ": face near line " + std::to_string(line_no) +
                             " references vertex " + std::to_string(face[k]) + " out of range");
          }
        }
        bool repeated = face[0] == face[1] || face[1] == face[2] || face[0] == face[2];
        mesh.faces.push_back(face);
        if (!repeated && face_area_3d(mesh, mesh.num_faces() - 1) > 1e-12) {
          if (has_labels) mesh.face_labels.push_back(label);
        } else {
          mesh.faces.pop_back();
          ++degenerate;
        }
      }
    } else {
      // Skip unknown elements token-wise (scalar properties only).
      for (const auto& prop : el.properties) {
        if (prop.is_list) {
          throw InputError(path + ": cannot skip unknown element '" + el.name +
                           "' with list properties");
        }
      }
      double dummy;
      for (std::int64_t n = el.count * static_cast<std::int64_t>(el.properties.size()); n > 0;
           --n) {
        if (!(in >> dummy)) throw InputError(path + ": truncated data in element " + el.name);
      }
    }
  }

  if (degenerate > 0) {
    std::cerr << "Warning: " << path << ": dropped " << degenerate << " degenerate face"
              << (degenerate == 1 ? "" : "s") << "\n";
  }
  if (report) report->degenerate_faces_dropped = degenerate;
  mesh.validate();
  return mesh;
}

void save_ply(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << mesh.num_vertices() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  out << "element face " << mesh.num_faces() << "\n";
  out << "property list uchar int vertex_indices\n";
  if (mesh.labeled()) out << "property int class_id\n";
  out << "end_header\n";
  for (const auto& v : mesh.vertices) {
    out << format_double(v.x()) << ' ' << format_double(v.y()) << ' ' << format_double(v.z())
        << '\n';
  }
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    out << "3 " << face[0] << ' ' << face[1] << ' ' << face[2];
    if (mesh.labeled()) {
      ClassId label = mesh.face_labels[f];
      out << ' ' << (label == kNullId ? -1 : label);
    }
    out << '\n';
  }
}

}  // namespace mvmesh
