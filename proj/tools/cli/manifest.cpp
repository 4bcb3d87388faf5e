#include "manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>

#include "graphonlab/error.hpp"
#include "graphonlab/formats.hpp"
#include "graphonlab/sampling.hpp"

namespace graphonlab::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoError, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

namespace {

// Directories hash their files in name order.
std::string hash_path(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return sha256_hex(read_text_file(path));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::string joined;
  for (const auto& f : files) joined += f.filename().string() + ":" + sha256_hex(read_text_file(f)) + "\n";
  return sha256_hex(joined);
}

}  // namespace

RunManifest::RunManifest(std::vector<std::string> argv) : start_(std::chrono::steady_clock::now()) {
  doc_["command_line"] = argv;
  doc_["rng"] = RandomSource::algorithm();
  doc_["seeds"] = nlohmann::json::object();
  doc_["inputs"] = nlohmann::json::array();
  doc_["outputs"] = nlohmann::json::array();
  doc_["results"] = nlohmann::json::object();
}

void RunManifest::seed(const std::string& name, std::uint64_t value) { doc_["seeds"][name] = value; }

void RunManifest::input(const std::filesystem::path& path) {
  doc_["inputs"].push_back({{"path", path.string()}, {"sha256", hash_path(path)}});
}

void RunManifest::output(const std::filesystem::path& path) {
  doc_["outputs"].push_back({{"path", path.string()}, {"sha256", hash_path(path)}});
}

void RunManifest::result(const std::string& key, const std::string& exact) { doc_["results"][key] = exact; }

void RunManifest::write(const std::filesystem::path& path) const {
  nlohmann::json doc = doc_;
  doc["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace graphonlab::cli
