// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "mvmesh/geospatial.hpp"

namespace mvmesh {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Shortest exact round-trip formatting, so .asc files are bit-stable.
std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

GeoRaster load_ascii_grid(const std::string& path, const std::string& crs_tag) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  int ncols = -1, nrows = -1;
  double xll = 0.0, yll = 0.0, cellsize = 0.0, nodata = -9999.0;
  bool have_xll = false, have_yll = false, have_cell = false;

  std::string token;
  while (in >> token) {
    std::string key = lower(token);
    if (!key.empty() && (std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) {
      double value;
      if (!(in >> value)) throw InputError(path + ": missing value for header key " + token);
      if (key == "ncols") {
        ncols = static_cast<int>(value);
      } else if (key == "nrows") {
        nrows = static_cast<int>(value);
      } else if (key == "xllcorner") {
        xll = value;
        have_xll = true;
      } else if (key == "yllcorner") {
        yll = value;
        have_yll = true;
      } else if (key == "xllcenter" || key == "yllcenter") {
        throw InputError(path + ": cell-center origin (" + token + ") is not supported");
      } else if (key == "cellsize") {
        cellsize = value;
        have_cell = true;
      } else if (key == "nodata_value") {
        nodata = value;
      } else {
        throw InputError(path + ": unknown header key " + token);
      }
    } else {
      // First data token; push it back by seeking is awkward, parse inline.
      if (ncols <= 0 || nrows <= 0 || !have_xll || !have_yll || !have_cell) {
        throw InputError(path + ": incomplete ESRI ASCII grid header");
      }
      std::array<double, 6> gt = {xll, cellsize, 0.0, yll + nrows * cellsize, 0.0, -cellsize};
      GeoRaster raster(nrows, ncols, gt, nodata, crs_tag);
      size_t total = static_cast<size_t>(nrows) * ncols;
      double v;
      {
        auto res = std::from_chars(token.data(), token.data() + token.size(), v);
        if (res.ec != std::errc()) throw InputError(path + ": bad raster value '" + token + "'");
      }
      raster.values()[0] = v;
      for (size_t i = 1; i < total; ++i) {
        if (!(in >> v)) throw InputError(path + ": expected " + std::to_string(total) +
                                         " values, got " + std::to_string(i));
        raster.values()[i] = v;
      }
      for (double x : raster.values()) {
        if (std::isnan(x) && !raster.is_nodata(x)) {
          throw InputError(path + ": NaN value that is not the nodata sentinel");
        }
      }
      return raster;
    }
  }
  throw InputError(path + ": no raster values found");
}

void save_ascii_grid(const GeoRaster& raster, const std::string& path) {
  const auto& gt = raster.geotransform();
  if (gt[2] != 0.0 || gt[4] != 0.0 || gt[1] <= 0.0 || gt[5] >= 0.0 || gt[1] != -gt[5]) {
    throw InputError("ESRI ASCII grid requires a north-up raster with square pixels");
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  double cellsize = gt[1];
  double yll = gt[3] + raster.rows() * gt[5];
  out << "ncols " << raster.cols() << "\n"
      << "nrows " << raster.rows() << "\n"
      << "xllcorner " << format_double(gt[0]) << "\n"
      << "yllcorner " << format_double(yll) << "\n"
      << "cellsize " << format_double(cellsize) << "\n"
      << "NODATA_value " << format_double(raster.nodata()) << "\n";
  for (int r = 0; r < raster.rows(); ++r) {
    for (int c = 0; c < raster.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(raster.at(r, c));
    }
    out << '\n';
  }
}

}  // namespace mvmesh
