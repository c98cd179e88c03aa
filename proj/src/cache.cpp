#include "localdt/cache.hpp"

#include "localdt/series_json.hpp"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace localdt {

std::string cache_dir() {
  if (const char* dir = std::getenv(kCacheDirEnv); dir && *dir) return dir;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/local-dt";
  return ".local-dt-cache";
}

std::string cache_file() { return cache_dir() + "/series_cache.json"; }

namespace {

std::optional<nlohmann::json> load_cache() {
  std::ifstream in(cache_file());
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  if (!j.is_object() || !j.contains("format_version") ||
      j["format_version"] != kCacheFormatVersion || !j.contains("entries") ||
      !j["entries"].is_object())
    return std::nullopt;
  return j;
}

}  // namespace

std::optional<MotivicSeries> cache_lookup(const std::string& kind, int order) {
  auto j = load_cache();
  if (!j) return std::nullopt;
  std::string key = kind + ":" + std::to_string(order);
  auto it = j->at("entries").find(key);
  if (it == j->at("entries").end()) return std::nullopt;
  try {
    return series_from_json(*it);
  } catch (const BadSeriesJson&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& kind, const MotivicSeries& series) {
  nlohmann::json j;
  if (auto existing = load_cache()) j = std::move(*existing);
  j["format_version"] = kCacheFormatVersion;
  j["entries"][kind + ":" + std::to_string(series.order())] = series_to_json(series);

  std::error_code ec;
  std::filesystem::create_directories(cache_dir(), ec);
  if (ec) return;
  std::string tmp = cache_file() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump(1) << "\n";
    if (!out) return;
  }
  std::filesystem::rename(tmp, cache_file(), ec);
  if (ec) std::remove(tmp.c_str());
}

}  // namespace localdt
