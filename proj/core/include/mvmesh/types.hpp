// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>

// Shared scalar typedefs and sentinels used across the toolkit. All
// coordinates are in a single projected CRS with units of meters.

namespace mvmesh {

// Integer class label. Valid classes are 1..n_cls (n_cls <= 254 so label
// images can reserve 255 for null); kNullId marks background, unlabeled,
// or unobserved content and never equals a class index.
using ClassId = std::int32_t;
inline constexpr ClassId kNullId = 0;

inline constexpr int kMaxClassId = 254;

// Index into a mesh face array; kNoFace marks a ray miss.
using FaceIndex = std::int64_t;
inline constexpr FaceIndex kNoFace = -1;

// CRS tags are compared as opaque strings. "unspecified" matches anything.
inline constexpr const char* kUnspecifiedCrs = "unspecified";

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace mvmesh
