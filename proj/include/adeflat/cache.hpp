#pragma once
//
// Content-addressed artifact cache.
//
// Solved connections, verdicts, and modular invariants are resolved
// through canonical request keys (for example
// "cells/E8/level=28/tol=1e-09").  Each cache entry is a small JSON
// file named by the hash of its key and carrying both the key and an
// integrity hash of the payload, so truncated, renamed, or edited
// entries are detected and silently regenerated rather than trusted.
// The cache is append-only: entries are never mutated, only written
// once or removed when they fail verification.
//
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ade {

// 64-bit FNV-1a hash rendered as 16 lowercase hex digits.
std::string fnv1a(std::string_view data);

class ArtifactCache {
 public:
  ArtifactCache() = default;  // disabled: every lookup misses
  explicit ArtifactCache(std::filesystem::path dir);  // creates dir

  // Reads the ADEFLAT_CACHE environment variable; disabled when unset
  // or empty.
  static ArtifactCache from_environment();

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const;

  // Returns the payload stored under the key, or nullopt when the
  // entry is missing or fails its integrity check (corrupt entries
  // are removed so the regenerated value can replace them).
  std::optional<std::string> load(const std::string& key) const;
  void store(const std::string& key, const std::string& payload) const;

  // Cache-through accessor: returns the cached payload when the hash
  // verifies, otherwise computes, stores, and returns a fresh one.
  std::string get(const std::string& key,
                  const std::function<std::string()>& compute) const;

 private:
  std::filesystem::path dir_;
};

} // namespace ade
