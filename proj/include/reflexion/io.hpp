#pragma once

#include "reflexion/invariants.hpp"
#include "reflexion/poly.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace reflexion {

using Json = nlohmann::ordered_json;

/// Polynomial file format, version 1. Terms are written in decreasing
/// graded-lex order; every coefficient is lifted to the polynomial's conductor
/// and stored as phi(conductor) strings "p/q".
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j);

std::string print_poly(const Poly& p);
/// Throws ParseError on malformed documents.
Poly parse_poly(std::string_view text);

Poly read_poly_file(const std::filesystem::path& path);
void write_poly_file(const std::filesystem::path& path, const Poly& p);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

/// Cache directory: the explicit flag, else $REFLEXION_CACHE, else .reflexion-cache/.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

enum class CacheStatus { Miss, Hit, Corrupted };
std::string to_string(CacheStatus s);

/// On-disk store of discriminants, one polynomial file per group specifier
/// plus a manifest holding the chosen basics and the hashes of both files.
class DiscriminantCache {
public:
  explicit DiscriminantCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path poly_path(std::string_view key) const;
  std::filesystem::path manifest_path(std::string_view key) const;

  /// nullopt on a miss. A manifest or payload that fails to parse or whose
  /// hashes disagree sets `status` to Corrupted and also yields nullopt.
  std::optional<InvariantSystem> load(std::string_view key, CacheStatus& status) const;
  void store(std::string_view key, const InvariantSystem& sys) const;

private:
  std::filesystem::path dir_;
};

/// Discriminant of the group named by `key`, served from the cache when a
/// verified entry exists and recomputed (and rewritten) otherwise.
InvariantSystem cached_discriminant(const ReflectionGroup& w, std::string_view key,
                                    const DiscriminantCache& cache, CacheStatus* status = nullptr);

} // namespace reflexion
