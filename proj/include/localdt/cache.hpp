#pragma once

// Disk cache for computed series: a single JSON file keyed by
// "<kind>:<order>", carrying a format_version that invalidates stale files
// wholesale.  The directory comes from $LOCAL_DT_CACHE_DIR, defaulting to
// ~/.cache/local-dt.  Writes go through a temp file + rename.

#include "localdt/motivic.hpp"

#include <optional>
#include <string>

namespace localdt {

inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kCacheDirEnv = "LOCAL_DT_CACHE_DIR";

std::string cache_dir();   // resolved directory (not created yet)
std::string cache_file();  // cache_dir() + "/series_cache.json"

// nullopt on miss, unreadable file, or version mismatch
std::optional<MotivicSeries> cache_lookup(const std::string& kind, int order);

// best effort; silently gives up on unwritable directories
void cache_store(const std::string& kind, const MotivicSeries& series);

}  // namespace localdt
