#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "zslen/atoms.hpp"
#include "zslen/error.hpp"

namespace zslen {

inline constexpr std::string_view kAtomCacheMagic = "zslen-atoms";
inline constexpr std::string_view kAtomCacheVersion = "v1";

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string support_text(const Group& g, std::span<const ElementIndex> support) {
  std::string out;
  for (auto e : support) {
    if (!out.empty()) out += ' ';
    out += g.format_element(e);
  }
  return out;
}

inline std::string support_hash(const Group& g, std::span<const ElementIndex> support) {
  return hex64(fnv1a64(support_text(g, support)));
}

// Cache root from ZSLEN_CACHE_DIR, if set and nonempty.
inline std::optional<std::filesystem::path> cache_root_from_env() {
  const char* env = std::getenv("ZSLEN_CACHE_DIR");
  if (!env || !*env) return std::nullopt;
  return std::filesystem::path(env);
}

inline std::filesystem::path cache_file(const std::filesystem::path& root, const Group& g,
                                        std::span<const ElementIndex> support) {
  return root / (g.descriptor() + "-" + support_hash(g, support) + ".atoms");
}

inline std::string serialize_atoms(const AtomSet& atoms) {
  std::string body;
  body += std::string(kAtomCacheMagic) + " " + std::string(kAtomCacheVersion) + " " + atoms.group.descriptor() + " " +
          support_hash(atoms.group, atoms.support) + "\n";
  for (const auto& a : atoms.atoms) body += a.to_string() + "\n";
  body += "checksum " + hex64(fnv1a64(body)) + "\n";
  return body;
}

// Writes to a temporary file in the same directory, then renames, so readers
// never observe a partial file.
inline void cache_store(const std::filesystem::path& root, const AtomSet& atoms) {
  std::filesystem::create_directories(root);
  auto target = cache_file(root, atoms.group, atoms.support);
  std::random_device rd;
  auto tmp = target;
  tmp += ".tmp." + hex64((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << serialize_atoms(atoms);
    out.flush();
    if (!out) throw CacheError("failed writing cache file " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw CacheError("cannot rename cache file into place: " + ec.message());
  }
}

// Parses a cache file body. Throws CacheError on any mismatch.
inline AtomSet deserialize_atoms(std::string_view text, const Group& g, std::vector<ElementIndex> support) {
  support = normalize_support(g, std::move(support));
  auto last_nl = text.rfind('\n', text.size() >= 2 ? text.size() - 2 : 0);
  if (text.empty() || text.back() != '\n' || last_nl == std::string_view::npos) {
    throw CacheError("truncated atom cache file");
  }
  std::string_view body = text.substr(0, last_nl + 1);
  std::string_view trailer = text.substr(last_nl + 1);
  trailer.remove_suffix(1);
  if (trailer != "checksum " + hex64(fnv1a64(body))) throw CacheError("atom cache checksum mismatch");

  std::istringstream in{std::string(body)};
  std::string line;
  std::getline(in, line);
  std::istringstream header(line);
  std::string magic, version, group_desc, hash;
  header >> magic >> version >> group_desc >> hash;
  if (magic != kAtomCacheMagic) throw CacheError("not an atom cache file");
  if (version != kAtomCacheVersion) {
    throw CacheError("atom cache format version " + version + " is not " + std::string(kAtomCacheVersion));
  }
  if (group_desc != g.descriptor()) throw CacheError("atom cache group mismatch: " + group_desc);
  if (hash != support_hash(g, support)) throw CacheError("atom cache support mismatch");

  AtomSet out{g, support, {}, 0, 0, g.order(), 0};
  std::vector<char> in_support(g.order(), 0);
  for (auto e : support) in_support[e] = 1;
  while (std::getline(in, line)) {
    Sequence atom(g);
    try {
      atom = Sequence::parse(g, line);
    } catch (const InvalidArgument& e) {
      throw CacheError(std::string("bad atom line in cache: ") + e.what());
    }
    for (auto [e, m] : atom.entries()) {
      if (!in_support[e]) throw CacheError("cached atom outside the support");
    }
    out.atoms.push_back(std::move(atom));
  }
  if (!out.atoms.empty()) {
    out.min_len = out.atoms.front().length();
    for (const auto& a : out.atoms) {
      out.min_len = std::min(out.min_len, a.length());
      out.davenport = std::max(out.davenport, a.length());
    }
  }
  return out;
}

// std::nullopt means "no entry" and is not an error.
inline std::optional<AtomSet> cache_load(const std::filesystem::path& root, const Group& g,
                                         std::vector<ElementIndex> support) {
  support = normalize_support(g, std::move(support));
  auto path = cache_file(root, g, support);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_atoms(buf.str(), g, std::move(support));
}

// Loads from the cache when possible, otherwise enumerates and stores.
inline AtomSet cached_atoms(const std::optional<std::filesystem::path>& root, const Group& g,
                            std::vector<ElementIndex> support, const AtomOptions& opts = {}) {
  support = normalize_support(g, std::move(support));
  if (root) {
    if (auto hit = cache_load(*root, g, support)) return *std::move(hit);
  }
  AtomSet atoms = enumerate_atoms(g, support, opts);
  if (root) cache_store(*root, atoms);
  return atoms;
}

}  // namespace zslen
