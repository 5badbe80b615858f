#include "reflexion/presentations.hpp"

#include "reflexion/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace reflexion {

long length(const SignedWord& w) {
  long l = 0;
  for (const Letter& x : w) {
    l += x.exp;
  }
  return l;
}

bool is_positive(const SignedWord& w) {
  return std::all_of(w.begin(), w.end(), [](const Letter& x) { return x.exp > 0; });
}

SignedWord central_word(int start, int n, int d) {
  if (n < 1 || d < 1 || start < 1 || start > n) {
    throw InvalidInput("central word needs n >= 1, d >= 1 and 1 <= start <= n");
  }
  SignedWord w;
  for (int rep = 0; rep < d; ++rep) {
    for (int k = 0; k < n; ++k) {
      w.push_back(Letter{(start - 1 + k) % n + 1, 1});
    }
  }
  return w;
}

std::vector<Relation> cyclic_power_relations(int n, int d) {
  if (n < 1 || d < 1) {
    throw InvalidInput("cyclic power relations need n >= 1 and d >= 1");
  }
  std::vector<Relation> out;
  for (int k = 1; k < n; ++k) {
    out.push_back(Relation{central_word(k, n, d), central_word(k + 1, n, d)});
  }
  return out;
}

namespace {

void check_letters(const SignedWord& w, int n) {
  for (const Letter& x : w) {
    if (x.gen < 1 || x.gen > n || (x.exp != 1 && x.exp != -1)) {
      throw InvalidInput("word uses a letter outside s1..s" + std::to_string(n));
    }
  }
}

long negatives(const SignedWord& w) {
  return std::count_if(w.begin(), w.end(), [](const Letter& x) { return x.exp < 0; });
}

SignedWord eliminate_negatives(const SignedWord& w, int n, int d) {
  SignedWord out;
  for (const Letter& x : w) {
    if (x.exp > 0) {
      out.push_back(x);
      continue;
    }
    // s_i^-1 (s_i s_{i+1} ... s_{i-1})^d = rest of the central word
    const SignedWord z = central_word(x.gen, n, d);
    out.insert(out.end(), z.begin() + 1, z.end());
  }
  return out;
}

} // namespace

Relation homogenize_relation(const Relation& rel, int n, int d) {
  if (n < 1 || d < 1) {
    throw InvalidInput("homogenization needs n >= 1 and d >= 1");
  }
  check_letters(rel.lhs, n);
  check_letters(rel.rhs, n);
  if (length(rel.lhs) != length(rel.rhs)) {
    throw InvalidInput("relation is not homogeneous: " + to_string(rel));
  }
  const long kl = negatives(rel.lhs);
  const long kr = negatives(rel.rhs);
  const long k = std::max(kl, kr);
  Relation out{eliminate_negatives(rel.lhs, n, d), eliminate_negatives(rel.rhs, n, d)};
  const SignedWord z = central_word(1, n, d);
  for (long i = kl; i < k; ++i) {
    out.lhs.insert(out.lhs.end(), z.begin(), z.end());
  }
  for (long i = kr; i < k; ++i) {
    out.rhs.insert(out.rhs.end(), z.begin(), z.end());
  }
  return out;
}

SignedWord parse_word(std::string_view text) {
  SignedWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  std::vector<std::string> tokens;
  while (in >> tok) {
    tokens.push_back(tok);
  }
  if (tokens.size() == 1 && tokens[0] == "1") {
    return w;
  }
  for (const std::string& t : tokens) {
    if (t.size() < 2 || t[0] != 's') {
      throw ParseError("bad letter '" + t + "'");
    }
    const auto caret = t.find('^');
    const std::string_view gen_part = std::string_view(t).substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    int gen = 0;
    auto [p1, e1] = std::from_chars(gen_part.data(), gen_part.data() + gen_part.size(), gen);
    if (e1 != std::errc() || p1 != gen_part.data() + gen_part.size() || gen < 1) {
      throw ParseError("bad generator in '" + t + "'");
    }
    int power = 1;
    if (caret != std::string::npos) {
      const std::string_view exp_part = std::string_view(t).substr(caret + 1);
      auto [p2, e2] = std::from_chars(exp_part.data(), exp_part.data() + exp_part.size(), power);
      if (e2 != std::errc() || p2 != exp_part.data() + exp_part.size() || power == 0) {
        throw ParseError("bad exponent in '" + t + "'");
      }
    }
    for (int k = 0; k < std::abs(power); ++k) {
      w.push_back(Letter{gen, power > 0 ? 1 : -1});
    }
  }
  return w;
}

Relation parse_relation(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || line.find('=', eq + 1) != std::string_view::npos) {
    throw ParseError("relation needs exactly one '=': " + std::string(line));
  }
  const auto lhs = line.substr(0, eq);
  const auto rhs = line.substr(eq + 1);
  auto blank = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  };
  if (blank(lhs) || blank(rhs)) {
    throw ParseError("empty side in relation (write 1 for the empty word): " + std::string(line));
  }
  return Relation{parse_word(lhs), parse_word(rhs)};
}

std::vector<Relation> parse_relations(std::string_view text) {
  std::vector<Relation> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    if (std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      continue;
    }
    out.push_back(parse_relation(line));
  }
  return out;
}

std::string to_string(const SignedWord& w) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (const Letter& x : w) {
    if (!out.empty()) {
      out += ' ';
    }
    out += 's' + std::to_string(x.gen);
    if (x.exp < 0) {
      out += "^-1";
    }
  }
  return out;
}

std::string to_string(const Relation& rel) { return to_string(rel.lhs) + " = " + to_string(rel.rhs); }

} // namespace reflexion
