#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

namespace vsign::testing {

// Fresh directory under $VSIGN_TEST_TMP (or the system temp dir).
inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* root = std::getenv("VSIGN_TEST_TMP");
  std::filesystem::path dir = root ? std::filesystem::path(root) : std::filesystem::temp_directory_path() / "vsign_tests";
  dir /= name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vsign::testing
