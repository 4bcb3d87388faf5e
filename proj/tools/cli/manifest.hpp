#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace graphonlab::cli {

std::string sha256_hex(const std::string& bytes);

/// Records one invocation: argv, seeds, hashes of inputs and outputs, exact
/// results and wall time. Written as JSON when a path was requested.
class RunManifest {
 public:
  explicit RunManifest(std::vector<std::string> argv);

  void seed(const std::string& name, std::uint64_t value);
  void input(const std::filesystem::path& path);
  void output(const std::filesystem::path& path);
  void result(const std::string& key, const std::string& exact);

  void write(const std::filesystem::path& path) const;

 private:
  nlohmann::json doc_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace graphonlab::cli
