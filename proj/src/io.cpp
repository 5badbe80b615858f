#include "reflexion/io.hpp"

#include "reflexion/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace reflexion {

namespace {

namespace fs = std::filesystem;

constexpr int kFormat = 1;

std::string rational_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto valid = [](const std::string& s, bool allow_sign) {
    std::size_t start = allow_sign && !s.empty() && s[0] == '-' ? 1 : 0;
    return s.size() > start &&
           std::all_of(s.begin() + static_cast<long>(start), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!valid(num, true) || !valid(den, false)) {
    throw ParseError("bad rational '" + text + "'");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) {
    throw ParseError("zero denominator in '" + text + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// grlex descending: higher total degree first, ties broken lex with X_1 largest
bool grlex_greater(const Exponents& a, const Exponents& b) {
  long da = 0;
  long db = 0;
  for (int e : a) {
    da += e;
  }
  for (int e : b) {
    db += e;
  }
  if (da != db) {
    return da > db;
  }
  return a > b;
}

template <typename T>
T get_field(const Json& j, const char* name) {
  if (!j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + name + "': " + e.what());
  }
}

void check_format(const Json& j) {
  if (!j.is_object()) {
    throw ParseError("expected a JSON object");
  }
  if (get_field<int>(j, "format") != kFormat) {
    throw ParseError("unsupported format version");
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot read " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& data) {
  // write-then-rename so readers never see a half-written file
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw InvalidInput("cannot write " + tmp.string());
    }
    out << data;
  }
  fs::rename(tmp, path);
}

std::string sanitize_key(std::string_view key) {
  std::string out;
  for (char c : key) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    out += keep ? c : '_';
  }
  // distinct keys may sanitize identically; the hash suffix keeps them apart
  return out + "-" + sha256_hex(key).substr(0, 12);
}

std::string basics_digest(const std::vector<Poly>& basics) {
  Json arr = Json::array();
  for (const auto& f : basics) {
    arr.push_back(poly_to_json(f));
  }
  return sha256_hex(arr.dump());
}

} // namespace

Json poly_to_json(const Poly& p) {
  const int m = p.conductor();
  std::vector<const std::pair<const Exponents, Cyclo>*> terms;
  for (const auto& t : p.terms()) {
    terms.push_back(&t);
  }
  std::sort(terms.begin(), terms.end(),
            [](auto* a, auto* b) { return grlex_greater(a->first, b->first); });
  Json j;
  j["format"] = kFormat;
  j["nvars"] = p.nvars();
  j["weights"] = p.weights();
  j["conductor"] = m;
  j["terms"] = Json::array();
  for (const auto* t : terms) {
    Json coeff = Json::array();
    // rationals may carry any conductor; conductor() ignores them
    const Cyclo lifted =
        t->second.is_rational() ? Cyclo::rational_in(m, t->second.to_rational()) : t->second.lifted(m);
    for (const auto& q : lifted.coords()) {
      coeff.push_back(rational_string(q));
    }
    j["terms"].push_back(Json{{"exps", t->first}, {"coeff", coeff}});
  }
  return j;
}

Poly poly_from_json(const Json& j) {
  check_format(j);
  const int nvars = get_field<int>(j, "nvars");
  const auto weights = get_field<std::vector<int>>(j, "weights");
  const int m = get_field<int>(j, "conductor");
  if (nvars < 0 || static_cast<int>(weights.size()) != nvars) {
    throw ParseError("weights length does not match nvars");
  }
  if (m < 1) {
    throw ParseError("conductor must be positive");
  }
  const int phi = euler_phi(m);
  if (phi > max_phi()) {
    throw CapExceeded("conductor " + std::to_string(m) + " exceeds phi bound");
  }
  const Json& terms = j.contains("terms") ? j.at("terms") : Json();
  if (!terms.is_array()) {
    throw ParseError("field 'terms' must be an array");
  }
  Poly p(weights);
  std::set<Exponents> seen;
  for (const Json& t : terms) {
    if (!t.is_object()) {
      throw ParseError("term must be an object");
    }
    const auto exps = get_field<Exponents>(t, "exps");
    const auto coeff = get_field<std::vector<std::string>>(t, "coeff");
    if (static_cast<int>(exps.size()) != nvars) {
      throw ParseError("exponent vector has wrong length");
    }
    if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 0; })) {
      throw ParseError("negative exponent");
    }
    if (static_cast<int>(coeff.size()) != phi) {
      throw ParseError("coefficient needs " + std::to_string(phi) + " rational coordinates");
    }
    if (!seen.insert(exps).second) {
      throw ParseError("duplicate monomial in terms");
    }
    std::vector<Rational> coords;
    coords.reserve(coeff.size());
    for (const auto& s : coeff) {
      coords.push_back(parse_rational(s));
    }
    p.add_term(exps, Cyclo(m, std::move(coords)));
  }
  return p;
}

std::string print_poly(const Poly& p) { return poly_to_json(p).dump(2) + "\n"; }

Poly parse_poly(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("polynomial file: ") + e.what());
  }
  return poly_from_json(j);
}

Poly read_poly_file(const fs::path& path) { return parse_poly(read_file(path)); }

void write_poly_file(const fs::path& path, const Poly& p) { write_file(path, print_poly(p)); }

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InvariantViolation("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

fs::path resolve_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) {
    return *flag;
  }
  if (const char* env = std::getenv("REFLEXION_CACHE"); env != nullptr && *env != '\0') {
    return env;
  }
  return ".reflexion-cache";
}

std::string to_string(CacheStatus s) {
  switch (s) {
  case CacheStatus::Miss:
    return "miss";
  case CacheStatus::Hit:
    return "hit";
  case CacheStatus::Corrupted:
    return "corrupted";
  }
  return "?";
}

fs::path DiscriminantCache::poly_path(std::string_view key) const {
  return dir_ / (sanitize_key(key) + ".poly.json");
}

fs::path DiscriminantCache::manifest_path(std::string_view key) const {
  return dir_ / (sanitize_key(key) + ".manifest.json");
}

std::optional<InvariantSystem> DiscriminantCache::load(std::string_view key,
                                                       CacheStatus& status) const {
  status = CacheStatus::Miss;
  const fs::path mpath = manifest_path(key);
  const fs::path ppath = poly_path(key);
  if (!fs::exists(mpath) && !fs::exists(ppath)) {
    return std::nullopt;
  }
  status = CacheStatus::Corrupted;
  try {
    const Json man = Json::parse(read_file(mpath));
    check_format(man);
    if (get_field<std::string>(man, "key") != key) {
      return std::nullopt;
    }
    const std::string payload = read_file(ppath);
    if (sha256_hex(payload) != get_field<std::string>(man, "discriminant_sha256")) {
      return std::nullopt;
    }
    InvariantSystem sys;
    sys.label = get_field<std::string>(man, "label");
    sys.degrees = get_field<std::vector<int>>(man, "degrees");
    sys.codegrees = get_field<std::vector<int>>(man, "codegrees");
    sys.N = get_field<long>(man, "N");
    sys.Nstar = get_field<long>(man, "Nstar");
    for (const Json& f : get_field<Json>(man, "basics")) {
      sys.basics.push_back(poly_from_json(f));
    }
    if (basics_digest(sys.basics) != get_field<std::string>(man, "basics_sha256")) {
      return std::nullopt;
    }
    sys.discriminant = parse_poly(payload);
    if (sys.basics.size() != sys.degrees.size() || sys.codegrees.size() != sys.degrees.size() ||
        sys.discriminant.weights() != sys.degrees) {
      return std::nullopt;
    }
    status = CacheStatus::Hit;
    return sys;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void DiscriminantCache::store(std::string_view key, const InvariantSystem& sys) const {
  fs::create_directories(dir_);
  const std::string payload = print_poly(sys.discriminant);
  Json man;
  man["format"] = kFormat;
  man["key"] = key;
  man["label"] = sys.label;
  man["degrees"] = sys.degrees;
  man["codegrees"] = sys.codegrees;
  man["N"] = sys.N;
  man["Nstar"] = sys.Nstar;
  man["basics"] = Json::array();
  for (const auto& f : sys.basics) {
    man["basics"].push_back(poly_to_json(f));
  }
  man["basics_sha256"] = basics_digest(sys.basics);
  man["discriminant_sha256"] = sha256_hex(payload);
  write_file(poly_path(key), payload);
  write_file(manifest_path(key), man.dump(2) + "\n");
}

InvariantSystem cached_discriminant(const ReflectionGroup& w, std::string_view key,
                                    const DiscriminantCache& cache, CacheStatus* status) {
  CacheStatus st = CacheStatus::Miss;
  auto hit = cache.load(key, st);
  if (status != nullptr) {
    *status = st;
  }
  if (hit) {
    return *std::move(hit);
  }
  InvariantSystem sys = discriminant(w);
  cache.store(key, sys);
  return sys;
}

} // namespace reflexion
