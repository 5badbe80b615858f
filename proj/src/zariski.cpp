#include "reflexion/zariski.hpp"

#include "reflexion/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace reflexion {

std::string to_string(LineClass c) {
  switch (c) {
  case LineClass::Generic:
    return "generic";
  case LineClass::Bad:
    return "bad";
  case LineClass::Better:
    return "better";
  }
  return "?";
}

namespace {

void check_pivot(const Poly& p, int i) {
  if (i < 0 || i >= p.nvars()) {
    throw InvalidInput("direction variable out of range");
  }
  if (p.is_zero() || p.degree_in(i) < 1) {
    throw InvalidInput("polynomial must have positive degree in the direction variable");
  }
}

LineClass classify_with(const Poly& p, int i, const Poly& disc, const Poly& alpha,
                        std::span<const Cyclo> y) {
  if (!disc.evaluate(y).is_zero()) {
    const Poly line = restrict_to_line(p, i, y);
    if (line.is_zero() || line.degree() != p.degree_in(i) || !squarefree_check(line)) {
      throw InvariantViolation("generic line does not meet the hypersurface in deg_in points");
    }
    return LineClass::Generic;
  }
  return alpha.evaluate(y).is_zero() ? LineClass::Bad : LineClass::Better;
}

} // namespace

LineClass classify_line(const Poly& p, int i, std::span<const Cyclo> y) {
  check_pivot(p, i);
  if (static_cast<int>(y.size()) + 1 != p.nvars()) {
    throw InvalidInput("line point has wrong dimension");
  }
  return classify_with(p, i, disc_wrt(p, i), coeff_gcd(p, i), y);
}

long integer_sequence(int k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); }

IntegerTupleSearch::IntegerTupleSearch(int dim, std::uint64_t seed, long random_after)
    : dim_(dim), random_after_(random_after), index_(static_cast<std::size_t>(dim), 0),
      state_(seed) {}

bool IntegerTupleSearch::advance() {
  // next index tuple in [0, height]^dim with max == height, lexicographic;
  // moves to the next height when exhausted
  while (true) {
    int pos = dim_ - 1;
    while (pos >= 0 && index_[static_cast<std::size_t>(pos)] == height_) {
      index_[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) {
      ++height_;
      std::fill(index_.begin(), index_.end(), 0);
      index_.back() = height_;
      // smallest tuple of the new height in lex order is (0, ..., 0, h)
      return true;
    }
    ++index_[static_cast<std::size_t>(pos)];
    if (*std::max_element(index_.begin(), index_.end()) == height_) {
      return true;
    }
  }
}

std::optional<std::vector<long>> IntegerTupleSearch::next() {
  if (dim_ == 0) {
    if (started_) {
      return std::nullopt;
    }
    started_ = true;
    return std::vector<long>{};
  }
  std::vector<long> out(static_cast<std::size_t>(dim_));
  if (produced_ >= random_after_) {
    std::mt19937_64 rng(state_ + static_cast<std::uint64_t>(produced_));
    const long span = 1L << std::min<long>(30, 4 + (produced_ - random_after_) / 1000);
    std::uniform_int_distribution<long> dist(-span, span);
    for (auto& v : out) {
      v = dist(rng);
    }
    ++produced_;
    return out;
  }
  if (started_) {
    advance();
  }
  started_ = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = integer_sequence(index_[k]);
  }
  ++produced_;
  return out;
}

std::vector<Cyclo> find_generic_line(const Poly& p, int i, std::uint64_t seed, long budget) {
  check_pivot(p, i);
  const Poly disc = disc_wrt(p, i);
  if (disc.is_zero()) {
    throw InvalidInput("polynomial is not reduced: Disc vanishes identically");
  }
  const Poly alpha = coeff_gcd(p, i);
  IntegerTupleSearch search(p.nvars() - 1, seed);
  for (long tried = 0; tried < budget; ++tried) {
    const auto tuple = search.next();
    if (!tuple) {
      break;
    }
    std::vector<Cyclo> y(tuple->begin(), tuple->end());
    if (classify_with(p, i, disc, alpha, y) == LineClass::Generic) {
      return y;
    }
  }
  throw CapExceeded("no generic line found within the search budget");
}

bool coprime_hypothesis(const Poly& p, int i) {
  check_pivot(p, i);
  return coeff_gcd(p, i).is_constant();
}

Exponents sigma_maximum(const Poly& p, const Permutation& sigma) {
  if (p.is_zero()) {
    throw InvalidInput("dominant monomials of the zero polynomial");
  }
  if (static_cast<int>(sigma.size()) != p.nvars()) {
    throw InvalidInput("permutation has the wrong length");
  }
  const Exponents* best = nullptr;
  for (const auto& [e, c] : p.terms()) {
    if (best == nullptr) {
      best = &e;
      continue;
    }
    for (int v : sigma) {
      const auto k = static_cast<std::size_t>(v);
      if (e[k] != (*best)[k]) {
        if (e[k] > (*best)[k]) {
          best = &e;
        }
        break;
      }
    }
  }
  return *best;
}

std::vector<DominantMonomial> dominant_monomials(const Poly& p) {
  Permutation sigma(static_cast<std::size_t>(p.nvars()));
  std::iota(sigma.begin(), sigma.end(), 0);
  std::map<Exponents, Permutation> found;
  do {
    found.try_emplace(sigma_maximum(p, sigma), sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  std::vector<DominantMonomial> out;
  for (auto& [e, s] : found) {
    out.push_back(DominantMonomial{e, s});
  }
  return out;
}

RecursionTrace generator_bound(const Poly& p, const Exponents& m, const Permutation& sigma) {
  if (static_cast<int>(m.size()) != p.nvars()) {
    throw InvalidInput("monomial has the wrong number of variables");
  }
  {
    Permutation sorted = sigma;
    std::sort(sorted.begin(), sorted.end());
    Permutation id(sigma.size());
    std::iota(id.begin(), id.end(), 0);
    if (sorted != id || static_cast<int>(sigma.size()) != p.nvars()) {
      throw InvalidInput("sigma is not a permutation of the variables");
    }
  }
  if (sigma_maximum(p, sigma) != m) {
    throw InvalidInput("monomial is not sigma-dominant");
  }
  RecursionTrace trace;
  Poly cur = p;
  Exponents cur_m = m;
  Permutation cur_sigma = sigma;
  std::vector<int> vars(static_cast<std::size_t>(p.nvars()));
  std::iota(vars.begin(), vars.end(), 0);
  while (!cur.is_constant()) {
    const int pivot = cur_sigma.front();
    const UniView view = univariate_view(cur, pivot);
    const int a = cur_m[static_cast<std::size_t>(pivot)];
    if (view.degree() != a) {
      throw InvariantViolation("sigma-leading exponent differs from the pivot degree");
    }
    if (a >= 1) {
      const Poly disc = disc_wrt(cur, pivot);
      if (!disc.is_zero() && !divide_exact(disc, view.head())) {
        throw InvariantViolation("head coefficient does not divide the discriminant");
      }
    }
    std::vector<int> rest = vars;
    rest.erase(rest.begin() + pivot);
    trace.steps.push_back(RecursionStep{vars[static_cast<std::size_t>(pivot)], a, view.head(), rest});
    trace.total += a;

    cur = view.head();
    cur_m.erase(cur_m.begin() + pivot);
    cur_sigma.erase(cur_sigma.begin());
    for (int& v : cur_sigma) {
      if (v > pivot) {
        --v;
      }
    }
    vars = std::move(rest);
    if (!cur.is_constant() && sigma_maximum(cur, cur_sigma) != cur_m) {
      throw InvariantViolation("quotient monomial is not dominant in the head coefficient");
    }
  }
  int deg_m = 0;
  for (int e : m) {
    deg_m += e;
  }
  if (trace.total != deg_m) {
    throw InvariantViolation("recursion total differs from deg(M)");
  }
  return trace;
}

Poly restrict_discriminant(const Poly& p, const std::vector<int>& j) {
  std::vector<int> drop = j;
  std::sort(drop.begin(), drop.end());
  drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
  for (int v : drop) {
    if (v < 0 || v >= p.nvars()) {
      throw InvalidInput("restriction index out of range");
    }
  }
  Poly kept(p.weights());
  for (const auto& [e, c] : p.terms()) {
    if (std::all_of(drop.begin(), drop.end(),
                    [&e](int v) { return e[static_cast<std::size_t>(v)] == 0; })) {
      kept.add_term(e, c);
    }
  }
  for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
    kept = drop_variable(kept, *it);
  }
  return kept;
}

} // namespace reflexion
