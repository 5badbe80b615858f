#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reflexion {

/// s_gen^exp with gen in 1..n and exp = +1 or -1.
struct Letter {
  int gen = 1;
  int exp = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using SignedWord = std::vector<Letter>;

struct Relation {
  SignedWord lhs;
  SignedWord rhs;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Sum of exponents.
long length(const SignedWord& w);

bool is_positive(const SignedWord& w);

/// (s_start s_{start+1} ... s_{start-1})^d, indices mod n.
SignedWord central_word(int start, int n, int d);

/// The n-1 relations (s_k ... s_{k-1})^d = (s_{k+1} ... s_k)^d, k = 1..n-1.
std::vector<Relation> cyclic_power_relations(int n, int d);

/// Equivalent positive relation of equal side lengths. Each s_i^-1 absorbs
/// one central factor written from s_i; both sides are padded with
/// (s_1 ... s_n)^d on the right up to the same number of factors.
Relation homogenize_relation(const Relation& rel, int n, int d);

/// Words like `s1 s2^-1 s3`; `1` is the empty word. `^k` repeats a letter.
SignedWord parse_word(std::string_view text);
/// `lhs = rhs`.
Relation parse_relation(std::string_view line);
/// One relation per nonblank line; `#` starts a comment.
std::vector<Relation> parse_relations(std::string_view text);

std::string to_string(const SignedWord& w);
std::string to_string(const Relation& rel);

} // namespace reflexion
