// Copyright 2026 The mvmesh Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mvmesh {

// Malformed or missing input (bad file, invalid parameter value). CLI exit 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Inputs that are individually valid but inconsistent with each other
// (CRS mismatch, dimension mismatch, legend mismatch). CLI exit 3.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mvmesh
