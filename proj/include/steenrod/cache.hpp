#pragma once

// On-disk cache of minimal resolutions. Files are JSON documents tagged
// "steenrod-resolution-v1", named by an FNV-1a key over the algebra name,
// the module hash and the window. STEENROD_CACHE_DIR overrides the location.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "steenrod/module_cat.hpp"

namespace steenrod::cache {

inline constexpr const char* kFormat = "steenrod-resolution-v1";

struct CacheError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path default_dir();
std::filesystem::path resolve_dir(const std::optional<std::filesystem::path>& dir);

std::uint64_t resolution_key(const modcat::Module& M, int s_max, int t_max);
std::string key_hex(std::uint64_t key);

std::string serialize(const modcat::ResolutionWindow& R, std::uint64_t key);
// Throws CacheError on a wrong format tag, key mismatch or a resolution that fails d^2 = 0 or minimality.
modcat::ResolutionWindow deserialize(const std::string& text, const modcat::Module& M, int s_max, int t_max);

struct Lookup {
  modcat::ResolutionWindow resolution;
  bool hit = false;
  bool replaced_corrupt = false;
  std::filesystem::path file;
};
Lookup cached_resolution(const modcat::Module& M, int s_max, int t_max,
                         const std::optional<std::filesystem::path>& dir = std::nullopt);

struct Entry {
  std::filesystem::path file;
  std::string algebra;
  int s_max = 0, t_max = 0;
  std::uintmax_t bytes = 0;
  bool valid_header = false;
};
std::vector<Entry> list(const std::optional<std::filesystem::path>& dir = std::nullopt);
std::size_t clear(const std::optional<std::filesystem::path>& dir = std::nullopt);

}  // namespace steenrod::cache
