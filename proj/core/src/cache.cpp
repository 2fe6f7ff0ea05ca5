#include "chistar/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "chistar/json_io.hpp"
#include "chistar/rational.hpp"

namespace chistar {

namespace {

constexpr const char* kFormat = "chistar-classpoly";

std::string canonical_text(long D, PolyKind kind, const QPoly& poly) {
  std::string text = std::to_string(D) + "|" + to_string(kind) + "|";
  for (const auto& c : poly.coeffs()) text += to_string(c) + ";";
  return text;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << v;
  return out.str();
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ClassPolyCache::ClassPolyCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::optional<std::filesystem::path> ClassPolyCache::directory_from_env() {
  const char* value = std::getenv(kCacheDirEnv);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::filesystem::path(value);
}

std::filesystem::path ClassPolyCache::path_for(long D, PolyKind kind) const {
  return dir_ / ("classpoly_" + to_string(kind) + "_" + std::to_string(-D) + ".json");
}

std::optional<QPoly> ClassPolyCache::load(long D, PolyKind kind) const {
  const auto path = path_for(D, kind);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CacheCorruption("unreadable cache file " + path.string() + ": " + e.what());
  }
  try {
    if (doc.value("format", "") != kFormat || doc.value("version", 0) != kCacheVersion) return std::nullopt;
    if (doc.at("D").get<long>() != D || doc.at("kind").get<std::string>() != to_string(kind)) {
      throw CacheCorruption("cache file " + path.string() + " holds a different key");
    }
    QPoly poly = poly_from_json(doc.at("coeffs"));
    if (doc.at("checksum").get<std::string>() != hex64(fnv1a(canonical_text(D, kind, poly)))) {
      throw CacheCorruption("checksum mismatch in " + path.string());
    }
    return poly;
  } catch (const nlohmann::json::exception& e) {
    throw CacheCorruption("malformed cache file " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CacheCorruption("malformed cache file " + path.string() + ": " + e.what());
  }
}

void ClassPolyCache::store(long D, PolyKind kind, const QPoly& poly) const {
  static std::atomic<unsigned long> counter{0};
  std::filesystem::create_directories(dir_);
  const nlohmann::json doc = {
      {"format", kFormat},
      {"version", kCacheVersion},
      {"D", D},
      {"kind", to_string(kind)},
      {"coeffs", poly_to_json(poly)},
      {"checksum", hex64(fnv1a(canonical_text(D, kind, poly)))},
  };
  const auto target = path_for(D, kind);
  std::ostringstream tag;
  tag << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
      << counter.fetch_add(1);
  const auto temp = std::filesystem::path(target.string() + tag.str());
  {
    std::ofstream out(temp);
    if (!out) throw std::runtime_error("cannot write cache file " + temp.string());
    out << doc.dump() << "\n";
    if (!out) throw std::runtime_error("cannot write cache file " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

}  // namespace chistar
