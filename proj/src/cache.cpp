#include "steenrod/cache.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace steenrod::cache {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

fs::path default_dir() {
  if (const char* env = std::getenv("STEENROD_CACHE_DIR"); env && *env) return fs::path(env);
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "steenrod";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "steenrod";
  return fs::temp_directory_path() / "steenrod-cache";
}

fs::path resolve_dir(const std::optional<fs::path>& dir) { return dir ? *dir : default_dir(); }

std::uint64_t resolution_key(const modcat::Module& M, int s_max, int t_max) {
  std::uint64_t h = 1469598103934665603ULL;
  auto byte = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ULL;
  };
  auto word = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) byte(static_cast<unsigned char>(v >> (8 * i)));
  };
  for (char c : std::string(kFormat)) byte(static_cast<unsigned char>(c));
  for (char c : M.algebra()->name()) byte(static_cast<unsigned char>(c));
  word(M.hash());
  word(static_cast<std::uint64_t>(s_max));
  word(static_cast<std::uint64_t>(t_max));
  return h;
}

std::string key_hex(std::uint64_t key) {
  std::ostringstream o;
  o << std::hex;
  o.width(16);
  o.fill('0');
  o << key;
  return o.str();
}

std::string serialize(const modcat::ResolutionWindow& R, std::uint64_t key) {
  json j;
  j["format"] = kFormat;
  j["key"] = key_hex(key);
  j["algebra"] = R.algebra->name();
  j["module_hash"] = key_hex(R.module.hash());
  j["s_max"] = R.s_max;
  j["t_max"] = R.t_max;
  auto stages = json::array();
  for (std::size_t s = 0; s < R.stages.size(); ++s) {
    json st;
    st["generators"] = R.stages[s].generators();
    auto d = json::array();
    for (const auto& v : R.d[s]) d.push_back({{"size", v.size()}, {"support", v.support()}});
    st["d"] = std::move(d);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  return j.dump() + "\n";
}

modcat::ResolutionWindow deserialize(const std::string& text, const modcat::Module& M, int s_max, int t_max) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw CacheError(std::string("cache file is not JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw CacheError("unknown cache format " + j.at("format").dump());
    if (j.at("key").get<std::string>() != key_hex(resolution_key(M, s_max, t_max))) throw CacheError("cache key mismatch");
    if (j.at("algebra").get<std::string>() != M.algebra()->name()) throw CacheError("cache algebra mismatch");
    if (j.at("s_max").get<int>() != s_max || j.at("t_max").get<int>() != t_max) throw CacheError("cache window mismatch");
    modcat::ResolutionWindow R;
    R.algebra = M.algebra();
    R.module = M;
    R.s_max = s_max;
    R.t_max = t_max;
    const auto& stages = j.at("stages");
    if (stages.size() != static_cast<std::size_t>(s_max) + 1) throw CacheError("wrong number of stages");
    for (std::size_t s = 0; s < stages.size(); ++s) {
      auto gens = stages[s].at("generators").get<std::vector<int>>();
      R.stages.emplace_back(M.algebra(), gens);
      const auto& d = stages[s].at("d");
      if (d.size() != gens.size()) throw CacheError("differential count does not match generators");
      std::vector<f2::BitVector> images;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto size = d[g].at("size").get<std::size_t>();
        std::size_t want = s == 0 ? M.dim(gens[g]) : R.stages[s - 1].dim(gens[g]);
        if (size != want) throw CacheError("differential has the wrong length");
        f2::BitVector v(size);
        for (auto i : d[g].at("support").get<std::vector<std::size_t>>()) {
          if (i >= size) throw CacheError("differential index out of range");
          v.flip(i);
        }
        images.push_back(std::move(v));
      }
      R.d.push_back(std::move(images));
    }
    if (auto why = R.check_dd()) throw CacheError("cached resolution fails d^2 = 0: " + *why);
    if (auto why = R.check_minimal()) throw CacheError("cached resolution is not minimal: " + *why);
    if (auto why = R.check_exact()) throw CacheError("cached resolution is not exact: " + *why);
    return R;
  } catch (const json::exception& e) {
    throw CacheError(std::string("malformed cache file: ") + e.what());
  }
}

Lookup cached_resolution(const modcat::Module& M, int s_max, int t_max, const std::optional<fs::path>& dir) {
  Lookup L;
  const auto root = resolve_dir(dir);
  const auto key = resolution_key(M, s_max, t_max);
  L.file = root / ("resolution-" + key_hex(key) + ".json");
  if (fs::exists(L.file)) {
    std::ifstream in(L.file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      L.resolution = deserialize(ss.str(), M, s_max, t_max);
      L.hit = true;
      return L;
    } catch (const CacheError&) {
      L.replaced_corrupt = true;
    }
  }
  L.resolution = modcat::minimal_free_resolution(M, s_max, t_max);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw CacheError("cannot create cache directory " + root.string() + ": " + ec.message());
  auto tmp = L.file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << serialize(L.resolution, key);
  }
  fs::rename(tmp, L.file, ec);
  if (ec) throw CacheError("cannot move cache file into place: " + ec.message());
  return L;
}

std::vector<Entry> list(const std::optional<fs::path>& dir) {
  std::vector<Entry> out;
  const auto root = resolve_dir(dir);
  if (!fs::is_directory(root)) return out;
  for (const auto& de : fs::directory_iterator(root)) {
    const auto name = de.path().filename().string();
    if (!de.is_regular_file() || name.rfind("resolution-", 0) != 0 || de.path().extension() != ".json") continue;
    Entry e;
    e.file = de.path();
    e.bytes = de.file_size();
    std::ifstream in(de.path(), std::ios::binary);
    try {
      auto j = json::parse(in);
      e.valid_header = j.value("format", "") == std::string(kFormat);
      e.algebra = j.value("algebra", "");
      e.s_max = j.value("s_max", 0);
      e.t_max = j.value("t_max", 0);
    } catch (const json::exception&) {
      e.valid_header = false;
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.file < b.file; });
  return out;
}

std::size_t clear(const std::optional<fs::path>& dir) {
  std::size_t n = 0;
  for (const auto& e : list(dir)) {
    std::error_code ec;
    if (fs::remove(e.file, ec)) ++n;
  }
  return n;
}

}  // namespace steenrod::cache
