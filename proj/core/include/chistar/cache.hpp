#pragma once

// On-disk cache of finished class polynomials, one JSON file per (D, kind).
//
// Files carry a format tag, a version and an FNV-1a checksum of the canonical
// coefficient text. A different version is treated as a miss; a checksum
// mismatch raises CacheCorruption. Writes go to a temporary file that is
// renamed into place, so readers never see a partial file.

#include <filesystem>
#include <optional>
#include <stdexcept>

#include "chistar/heegner.hpp"

namespace chistar {

class CacheCorruption : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kCacheVersion = 1;
inline constexpr const char* kCacheDirEnv = "CHISTAR_CACHE_DIR";

class ClassPolyCache {
 public:
  explicit ClassPolyCache(std::filesystem::path dir);

  /// Directory from the environment override, if set and non-empty.
  static std::optional<std::filesystem::path> directory_from_env();

  const std::filesystem::path& directory() const { return dir_; }
  std::filesystem::path path_for(long D, PolyKind kind) const;

  std::optional<QPoly> load(long D, PolyKind kind) const;
  void store(long D, PolyKind kind, const QPoly& poly) const;

 private:
  std::filesystem::path dir_;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a(const std::string& text);

}  // namespace chistar
