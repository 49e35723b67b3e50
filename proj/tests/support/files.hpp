// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace drawparse::testing {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& rel) { return fs::path(DRAWPARSE_FIXTURES) / rel; }
inline fs::path data_file(const std::string& rel) { return fs::path(DRAWPARSE_DATA) / rel; }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

/// Fresh directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("drawparse_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace drawparse::testing
