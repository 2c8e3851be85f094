#include "adeflat/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ade {

std::string fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

ArtifactCache::ArtifactCache(std::filesystem::path dir)
    : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

ArtifactCache ArtifactCache::from_environment() {
  const char* env = std::getenv("ADEFLAT_CACHE");
  if (env == nullptr || *env == '\0') return ArtifactCache{};
  return ArtifactCache{std::filesystem::path(env)};
}

std::filesystem::path ArtifactCache::entry_path(
    const std::string& key) const {
  return dir_ / (fnv1a(key) + ".json");
}

std::optional<std::string> ArtifactCache::load(
    const std::string& key) const {
  if (!enabled()) return std::nullopt;
  const std::filesystem::path path = entry_path(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr,
                                           /*allow_exceptions=*/false);
  if (!j.is_object() || !j.contains("key") || !j.contains("hash") ||
      !j.contains("payload") || !j["payload"].is_string() ||
      j["key"] != key ||
      j["hash"] != fnv1a(j["payload"].get<std::string>())) {
    std::error_code ec;
    std::filesystem::remove(path, ec);  // corrupt: regenerate
    return std::nullopt;
  }
  return j["payload"].get<std::string>();
}

void ArtifactCache::store(const std::string& key,
                          const std::string& payload) const {
  if (!enabled()) return;
  nlohmann::json j;
  j["key"] = key;
  j["hash"] = fnv1a(payload);
  j["payload"] = payload;
  std::ofstream out(entry_path(key));
  out << j.dump(2) << '\n';
}

std::string ArtifactCache::get(
    const std::string& key,
    const std::function<std::string()>& compute) const {
  if (auto hit = load(key)) return *hit;
  std::string fresh = compute();
  store(key, fresh);
  return fresh;
}

} // namespace ade
