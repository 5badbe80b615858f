#include "reflexion/regular.hpp"

#include "reflexion/error.hpp"
#include "reflexion/zariski.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace reflexion {

std::vector<int> nondividing_indices(const std::vector<int>& degrees, int d) {
  if (d < 1) {
    throw InvalidInput("d must be positive");
  }
  std::vector<int> j;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] % d != 0) {
      j.push_back(static_cast<int>(i));
    }
  }
  return j;
}

bool is_regular_number(const Poly& delta, const std::vector<int>& degrees, int d) {
  if (delta.weights() != degrees) {
    throw InvalidInput("discriminant weights differ from the degrees");
  }
  const auto j = nondividing_indices(degrees, d);
  for (const auto& [e, c] : delta.terms()) {
    if (std::all_of(j.begin(), j.end(), [&e](int v) { return e[static_cast<std::size_t>(v)] == 0; })) {
      return true;
    }
  }
  return false;
}

bool regular_via_valuation(const Poly& delta, const std::vector<int>& degrees) {
  const auto w = delta.homogeneous_weight();
  if (!w) {
    throw InvalidInput("discriminant is not weighted homogeneous");
  }
  return static_cast<long>(delta.valuation()) * degrees.back() == *w;
}

MonicizeResult monicize(const InvariantSystem& sys, int i0, long budget) {
  const int r = sys.rank();
  if (i0 < 0 || i0 >= r) {
    throw InvalidInput("pivot index out of range");
  }
  const int d = sys.degrees[static_cast<std::size_t>(i0)];
  const Poly& delta = sys.discriminant;
  if (!is_regular_number(delta, sys.degrees, d)) {
    throw NotRegular("degree " + std::to_string(d) + " is not a regular number");
  }
  MonicizeResult result{sys, std::vector<long>(static_cast<std::size_t>(r), 0)};
  const long target_degree = sys.weight() / d;
  if (univariate_view(delta, i0).head().is_constant()) {
    if (delta.degree_in(i0) != target_degree) {
      throw InvariantViolation("monic discriminant has the wrong pivot degree");
    }
    return result;
  }
  std::vector<int> subst;
  for (int i = 0; i < r; ++i) {
    if (i != i0 && sys.degrees[static_cast<std::size_t>(i)] % d == 0) {
      subst.push_back(i);
    }
  }
  // coefficient of X_{i0}^{weight/d} after substitution is Delta(a) with
  // X_{i0} = 1, X_i = a_i on subst, 0 elsewhere
  IntegerTupleSearch search(static_cast<int>(subst.size()));
  std::optional<std::vector<long>> found;
  for (long tried = 0; tried < budget; ++tried) {
    auto a = search.next();
    if (!a) {
      break;
    }
    std::vector<Cyclo> pt(static_cast<std::size_t>(r), Cyclo(0));
    pt[static_cast<std::size_t>(i0)] = Cyclo(1);
    for (std::size_t k = 0; k < subst.size(); ++k) {
      pt[static_cast<std::size_t>(subst[k])] = Cyclo((*a)[k]);
    }
    if (!delta.evaluate(pt).is_zero()) {
      found = std::move(a);
      break;
    }
  }
  if (!found) {
    throw CapExceeded("no monicizing coefficients found within the search budget");
  }
  Poly new_delta = delta;
  const Poly x0 = Poly::variable(delta.weights(), i0);
  for (std::size_t k = 0; k < subst.size(); ++k) {
    const int i = subst[k];
    const long a = (*found)[k];
    result.coefficients[static_cast<std::size_t>(i)] = a;
    if (a == 0) {
      continue;
    }
    const auto power = static_cast<unsigned>(sys.degrees[static_cast<std::size_t>(i)] / d);
    const Poly xi = Poly::variable(delta.weights(), i);
    new_delta = substitute(new_delta, i, xi + x0.pow(power).scaled(Cyclo(a)));
    result.system.basics[static_cast<std::size_t>(i)] -=
        sys.basics[static_cast<std::size_t>(i0)].pow(power).scaled(Cyclo(a));
  }
  const UniView view = univariate_view(new_delta, i0);
  if (!view.head().is_constant() || view.degree() != target_degree) {
    throw InvariantViolation("monicized discriminant is not monic of degree (N+N*)/d");
  }
  result.system.discriminant = std::move(new_delta);
  return result;
}

std::vector<std::size_t> regular_elements_bruteforce(const ReflectionGroup& w, int d) {
  if (d < 1) {
    throw InvalidInput("d must be positive");
  }
  const int r = w.rank();
  const Cyclo zeta = Cyclo::zeta(d, 1).lifted(std::lcm(w.conductor(), d));
  const Mat scalar = Mat::Identity(r, r) * zeta;
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < w.group.elements().size(); ++idx) {
    const Mat e = nullspace(Mat(w.group.element(idx) - scalar));
    if (e.cols() == 0) {
      continue;
    }
    bool regular = true;
    for (const auto& h : w.arrangement.hyperplanes) {
      const Mat image = h.form.transpose() * e;
      if (std::all_of(image.data(), image.data() + image.size(),
                      [](const Cyclo& c) { return c.is_zero(); })) {
        regular = false;
        break;
      }
    }
    if (regular) {
      if (matrix_order(w.group.element(idx), w.order()) != d) {
        throw InvariantViolation("regular element order differs from the order of zeta");
      }
      out.push_back(idx);
    }
  }
  return out;
}

bool eigenvalues_are_powers(const Mat& m, int d, const std::vector<long>& exps) {
  const auto chi = characteristic_polynomial(m);
  std::vector<Cyclo> expected{Cyclo(1)};
  for (long e : exps) {
    const Cyclo root = Cyclo::zeta(d, e);
    std::vector<Cyclo> next(expected.size() + 1, Cyclo(0));
    for (std::size_t k = 0; k < expected.size(); ++k) {
      next[k + 1] += expected[k];
      next[k] -= root * expected[k];
    }
    expected = std::move(next);
  }
  if (expected.size() != chi.size()) {
    return false;
  }
  for (std::size_t k = 0; k < chi.size(); ++k) {
    if (chi[k] != expected[k]) {
      return false;
    }
  }
  return true;
}

bool springer_eigenvalue_check(const ReflectionGroup& w, std::size_t c, int d) {
  std::vector<long> of_c;
  for (int deg : w.degrees) {
    of_c.push_back(-(deg - 1L));
  }
  std::vector<long> of_inverse;
  for (int co : w.codegrees) {
    of_inverse.push_back(-(co + 1L));
  }
  return eigenvalues_are_powers(w.group.element(c), d, of_c) &&
         eigenvalues_are_powers(w.group.element(w.group.inverse(c)), d, of_inverse);
}

bool lehrer_springer_check(int d, const std::vector<int>& degrees,
                           const std::vector<int>& codegrees) {
  if (d < 1) {
    throw InvalidInput("d must be positive");
  }
  const auto divides = [d](int x) { return x % d == 0; };
  return std::count_if(degrees.begin(), degrees.end(), divides) ==
         std::count_if(codegrees.begin(), codegrees.end(), divides);
}

long generator_lower_bound(const std::vector<int>& degrees, const std::vector<int>& codegrees) {
  const long total = reflections_from_degrees(degrees) + hyperplanes_from_codegrees(codegrees);
  const long dr = degrees.back();
  return (total + dr - 1) / dr;
}

namespace {

// mult[k][g] = index of (reflection k) * (element g)
using MultTable = std::vector<std::vector<std::uint32_t>>;

MultTable reflection_table(const ReflectionGroup& w) {
  MultTable t;
  for (std::size_t s : w.arrangement.reflections) {
    std::vector<std::uint32_t> row(w.group.elements().size());
    for (std::size_t g = 0; g < row.size(); ++g) {
      row[g] = static_cast<std::uint32_t>(w.group.product(s, g));
    }
    t.push_back(std::move(row));
  }
  return t;
}

// subset holds positions into the reflection list
bool generates_with(const MultTable& table, std::size_t order, const std::vector<std::size_t>& subset,
                    std::vector<char>& seen, std::vector<std::uint32_t>& queue) {
  std::fill(seen.begin(), seen.end(), 0);
  queue.clear();
  queue.push_back(0);
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t k : subset) {
      const std::uint32_t next = table[k][queue[head]];
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return queue.size() == order;
}

// Iterates k-subsets of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) {
        c[j] = c[j - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

double binomial(std::size_t n, std::size_t k) {
  double b = 1;
  for (std::size_t i = 0; i < k; ++i) {
    b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return b;
}

// Position of one representative per conjugacy class of reflections.
std::vector<std::size_t> class_representatives(const ReflectionGroup& w) {
  const auto& refl = w.arrangement.reflections;
  std::vector<std::size_t> pos_of(w.group.elements().size(), SIZE_MAX);
  for (std::size_t k = 0; k < refl.size(); ++k) {
    pos_of[refl[k]] = k;
  }
  std::vector<std::size_t> gens;
  for (const Mat& g : w.group.generators()) {
    gens.push_back(*w.group.index_of(g));
  }
  std::vector<char> done(refl.size(), 0);
  std::vector<std::size_t> reps;
  for (std::size_t k = 0; k < refl.size(); ++k) {
    if (done[k]) {
      continue;
    }
    reps.push_back(k);
    std::vector<std::size_t> stack{k};
    done[k] = 1;
    while (!stack.empty()) {
      const std::size_t cur = refl[stack.back()];
      stack.pop_back();
      for (std::size_t g : gens) {
        const std::size_t conj = w.group.product(w.group.product(g, cur), w.group.inverse(g));
        const std::size_t p = pos_of[conj];
        if (!done[p]) {
          done[p] = 1;
          stack.push_back(p);
        }
      }
    }
  }
  return reps;
}

} // namespace

bool generates(const ReflectionGroup& w, const std::vector<std::size_t>& elements) {
  std::vector<char> seen(w.group.elements().size(), 0);
  std::vector<std::size_t> queue{w.group.identity_index()};
  seen[queue[0]] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::size_t s : elements) {
      const std::size_t next = w.group.product(s, queue[head]);
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return static_cast<long>(queue.size()) == w.order();
}

long min_reflection_generators(const ReflectionGroup& w, const Limits& limits,
                               std::optional<long> start) {
  const std::size_t n = w.arrangement.reflections.size();
  if (n == 0) {
    throw InvalidInput("group has no reflections");
  }
  const MultTable table = reflection_table(w);
  const auto order = static_cast<std::size_t>(w.order());
  std::vector<char> seen(order);
  std::vector<std::uint32_t> queue;
  const std::vector<std::size_t> reps = class_representatives(w);
  long checked = 0;
  for (long k = std::max(1L, start.value_or(generator_lower_bound(w.degrees, w.codegrees)));
       k <= static_cast<long>(n); ++k) {
    const auto ks = static_cast<std::size_t>(k);
    if (binomial(n, ks) <= static_cast<double>(limits.subset_budget)) {
      std::vector<std::size_t> c(ks);
      std::iota(c.begin(), c.end(), 0);
      do {
        if (++checked > limits.search_budget) {
          throw CapExceeded("reflection subset search exceeded its budget");
        }
        if (generates_with(table, order, c, seen, queue)) {
          return k;
        }
      } while (next_combination(c, n));
      continue;
    }
    // A generating set can be conjugated to contain any chosen class
    // representative of one of its members.
    for (std::size_t rep : reps) {
      std::vector<std::size_t> others;
      for (std::size_t p = 0; p < n; ++p) {
        if (p != rep) {
          others.push_back(p);
        }
      }
      std::vector<std::size_t> c(ks - 1);
      std::iota(c.begin(), c.end(), 0);
      std::vector<std::size_t> subset(ks);
      do {
        if (++checked > limits.search_budget) {
          throw CapExceeded("reflection subset search exceeded its budget");
        }
        subset[0] = rep;
        for (std::size_t i = 0; i + 1 < ks; ++i) {
          subset[i + 1] = others[c[i]];
        }
        if (generates_with(table, order, subset, seen, queue)) {
          return k;
        }
      } while (ks > 1 && next_combination(c, others.size()));
    }
  }
  throw InvariantViolation("the reflections do not generate the group");
}

std::string to_string(Witness w) { return w == Witness::Witnessed ? "witnessed" : "unverified"; }

namespace {

OrlikSolomonReport arithmetic_conditions(const std::vector<int>& degrees,
                                         const std::vector<int>& codegrees) {
  OrlikSolomonReport rep;
  const int dr = degrees.back();
  const std::size_t r = degrees.size();
  rep.cond_i = true;
  rep.cond_iii = true;
  long sum = 0;
  for (std::size_t i = 0; i < r; ++i) {
    rep.cond_i = rep.cond_i && degrees[i] + codegrees[i] == dr;
    rep.cond_iii = rep.cond_iii && codegrees[i] < dr;
    sum += degrees[i] + codegrees[i];
  }
  rep.cond_ii = sum == static_cast<long>(r) * dr;
  return rep;
}

} // namespace

OrlikSolomonReport orlik_solomon_report(const ExceptionalData& data) {
  OrlikSolomonReport rep = arithmetic_conditions(data.degrees, data.codegrees);
  rep.cond_iv = generator_lower_bound(data.degrees, data.codegrees) == data.rank;
  rep.consistent = rep.cond_i == rep.cond_ii && rep.cond_ii == rep.cond_iii &&
                   rep.cond_iii == rep.cond_iv;
  return rep;
}

OrlikSolomonReport orlik_solomon_report(const ReflectionGroup& w, const Limits& limits) {
  OrlikSolomonReport rep = arithmetic_conditions(w.degrees, w.codegrees);
  rep.cond_iv = min_reflection_generators(w, limits) == w.rank();
  rep.cond_iv_from_matrices = true;
  rep.consistent = rep.cond_i == rep.cond_ii && rep.cond_ii == rep.cond_iii &&
                   rep.cond_iii == rep.cond_iv;
  if (!rep.cond_iv) {
    return rep;
  }
  // (v): r generating reflections whose product has the stated eigenvalues
  const int dr = w.degrees.back();
  std::vector<long> of_c;
  for (int d : w.degrees) {
    of_c.push_back(d - 1L);
  }
  std::vector<long> of_inverse;
  for (int d : w.codegrees) {
    of_inverse.push_back(d + 1L);
  }
  const auto& refl = w.arrangement.reflections;
  const auto r = static_cast<std::size_t>(w.rank());
  std::vector<std::size_t> tuple;
  long nodes = 0;
  std::set<std::vector<std::size_t>> rejected_sets;
  auto dfs = [&](auto&& self, std::size_t product) -> bool {
    if (++nodes > limits.search_budget) {
      return false;
    }
    if (tuple.size() == r) {
      const Mat& c = w.group.element(product);
      if (matrix_order(c, w.order()) != dr || !eigenvalues_are_powers(c, dr, of_c) ||
          !eigenvalues_are_powers(w.group.element(w.group.inverse(product)), dr, of_inverse)) {
        return false;
      }
      std::vector<std::size_t> key = tuple;
      std::sort(key.begin(), key.end());
      if (rejected_sets.count(key)) {
        return false;
      }
      if (generates(w, tuple)) {
        return true;
      }
      rejected_sets.insert(std::move(key));
      return false;
    }
    for (std::size_t s : refl) {
      tuple.push_back(s);
      if (self(self, w.group.product(product, s))) {
        return true;
      }
      tuple.pop_back();
    }
    return false;
  };
  if (dfs(dfs, w.group.identity_index())) {
    rep.cond_v = Witness::Witnessed;
    rep.witness = tuple;
  }
  return rep;
}

long theorem_n(const std::vector<int>& degrees, const std::vector<int>& codegrees, int d) {
  if (std::find(degrees.begin(), degrees.end(), d) == degrees.end()) {
    throw InvalidInput(std::to_string(d) + " is not a degree");
  }
  if (!lehrer_springer_check(d, degrees, codegrees)) {
    throw NotRegular(std::to_string(d) + " is not a regular number");
  }
  const long total = reflections_from_degrees(degrees) + hyperplanes_from_codegrees(codegrees);
  if (total % d != 0) {
    throw InvariantViolation("(N+N*)/d is not an integer for a regular degree");
  }
  return total / d;
}

long theorem_n(const InvariantSystem& sys, int d) {
  if (std::find(sys.degrees.begin(), sys.degrees.end(), d) == sys.degrees.end()) {
    throw InvalidInput(std::to_string(d) + " is not a degree");
  }
  if (!is_regular_number(sys.discriminant, sys.degrees, d)) {
    throw NotRegular(std::to_string(d) + " is not a regular number");
  }
  if (sys.weight() % d != 0) {
    throw InvariantViolation("(N+N*)/d is not an integer for a regular degree");
  }
  return sys.weight() / d;
}

std::vector<int> candidate_numbers(const std::vector<int>& degrees, const ReflectionGroup* w) {
  std::set<int> out;
  int l = 1;
  for (int d : degrees) {
    l = std::lcm(l, d);
  }
  for (int k = 1; k <= l; ++k) {
    if (l % k == 0) {
      out.insert(k);
    }
  }
  if (w != nullptr) {
    for (const Mat& g : w->group.elements()) {
      out.insert(static_cast<int>(matrix_order(g, w->order())));
    }
  }
  return {out.begin(), out.end()};
}

std::vector<RegularityRow> regular_report(const ReflectionGroup& w, const InvariantSystem& sys) {
  std::vector<RegularityRow> rows;
  for (int d : candidate_numbers(w.degrees, &w)) {
    RegularityRow row;
    row.d = d;
    row.symbolic = is_regular_number(sys.discriminant, sys.degrees, d);
    if (d == w.degrees.back()) {
      row.valuation_test = regular_via_valuation(sys.discriminant, sys.degrees);
    }
    row.lehrer_springer = lehrer_springer_check(d, w.degrees, w.codegrees);
    row.witnesses = regular_elements_bruteforce(w, d);
    row.brute_force = !row.witnesses.empty();
    if (*row.symbolic != *row.brute_force || *row.symbolic != row.lehrer_springer ||
        (row.valuation_test && *row.valuation_test != *row.symbolic)) {
      throw InvariantViolation(w.label + ": regularity tests disagree for d = " + std::to_string(d));
    }
    if (*row.symbolic && std::find(w.degrees.begin(), w.degrees.end(), d) != w.degrees.end()) {
      row.n = theorem_n(sys, d);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RegularityRow> regular_report(const ExceptionalData& data) {
  std::vector<RegularityRow> rows;
  for (int d : candidate_numbers(data.degrees, nullptr)) {
    RegularityRow row;
    row.d = d;
    row.lehrer_springer = lehrer_springer_check(d, data.degrees, data.codegrees);
    if (row.lehrer_springer &&
        std::find(data.degrees.begin(), data.degrees.end(), d) != data.degrees.end()) {
      row.n = theorem_n(data.degrees, data.codegrees, d);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace reflexion
