#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

// Small helpers shared by the test sources. TRHOM_TEST_SCRATCH is injected by
// the build: a writable directory inside the build tree for files the tests
// create.

namespace testutil {

inline std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> v(steps);
  const double d = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + static_cast<double>(i) * d;
  return v;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  std::filesystem::path p(TRHOM_TEST_SCRATCH);
  p /= name;
  std::filesystem::create_directories(p);
  return p;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  os << content;
}

}  // namespace testutil
