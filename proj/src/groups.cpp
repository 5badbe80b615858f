#include "reflexion/groups.hpp"

#include "reflexion/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace reflexion {

namespace {

std::size_t matrix_hash(const Mat& m) {
  std::size_t h = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      h = h * 1000003U ^ m(i, j).hash();
    }
  }
  return h;
}

using Series = std::vector<Cyclo>;

// Power series of 1/q(t) to `terms` coefficients; q(0) must be 1.
Series inverse_series(const std::vector<Cyclo>& q, std::size_t terms) {
  Series inv(terms, Cyclo(0));
  inv[0] = Cyclo(1);
  for (std::size_t k = 1; k < terms; ++k) {
    Cyclo acc(0);
    for (std::size_t j = 1; j < q.size() && j <= k; ++j) {
      if (!q[j].is_zero()) {
        acc += q[j] * inv[k - j];
      }
    }
    inv[k] = -acc;
  }
  return inv;
}

Series multiply_series(const Series& a, const std::vector<Cyclo>& b, std::size_t terms) {
  Series out(terms, Cyclo(0));
  for (std::size_t i = 0; i < a.size() && i < terms; ++i) {
    if (a[i].is_zero()) {
      continue;
    }
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) {
      if (!b[j].is_zero()) {
        out[i + j] += a[i] * b[j];
      }
    }
  }
  return out;
}

// prod_i (1 - t^{d_i}) as a dense polynomial.
std::vector<Cyclo> degree_polynomial(const std::vector<int>& degrees) {
  std::vector<Cyclo> p{Cyclo(1)};
  for (int d : degrees) {
    std::vector<Cyclo> next(p.size() + static_cast<std::size_t>(d), Cyclo(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + static_cast<std::size_t>(d)] -= p[i];
    }
    p = std::move(next);
  }
  return p;
}

// Elements grouped by characteristic polynomial; det(1 - t w), trace w and
// trace w^-1 depend only on it.
struct CharClass {
  std::vector<Cyclo> det_one_minus_tw; // lowest degree first
  Cyclo trace;
  Cyclo trace_inverse;
  long count = 0;
};

std::vector<CharClass> char_classes(const MatrixGroup& group) {
  std::map<std::string, CharClass> classes;
  const int m = group.conductor();
  for (const Mat& w : group.elements()) {
    std::vector<Cyclo> chi = characteristic_polynomial(w);
    std::string key;
    for (auto& c : chi) {
      c = c.lifted(m);
      for (const auto& q : c.coords()) {
        key += q.get_str();
        key += ',';
      }
      key += ';';
    }
    auto [it, inserted] = classes.try_emplace(key);
    if (inserted) {
      const std::size_t r = chi.size() - 1;
      CharClass cls;
      for (std::size_t k = 0; k <= r; ++k) {
        cls.det_one_minus_tw.push_back(chi[r - k]);
      }
      // chi = l^r - e1 l^{r-1} + ... ; trace = e1, trace of inverse = e_{r-1}/e_r
      cls.trace = -chi[r - 1];
      cls.trace_inverse = r >= 1 ? -chi[1] / chi[0] : Cyclo(0);
      it->second = std::move(cls);
    }
    ++it->second.count;
  }
  std::vector<CharClass> out;
  for (auto& [k, v] : classes) {
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t denominator_degree(const std::vector<CharClass>& classes) {
  std::size_t deg = 0;
  for (const auto& c : classes) {
    deg += c.det_one_minus_tw.size() - 1;
  }
  return deg;
}

// (1/|W|) sum_w weight(w) / det(1 - t w), truncated.
Series class_sum(const std::vector<CharClass>& classes, long order, std::size_t terms,
                 const Cyclo CharClass::*weight) {
  Series total(terms, Cyclo(0));
  for (const auto& cls : classes) {
    Cyclo factor = Cyclo(cls.count);
    if (weight != nullptr) {
      factor *= cls.*weight;
    }
    if (factor.is_zero()) {
      continue;
    }
    const Series inv = inverse_series(cls.det_one_minus_tw, terms);
    for (std::size_t k = 0; k < terms; ++k) {
      if (!inv[k].is_zero()) {
        total[k] += factor * inv[k];
      }
    }
  }
  const Cyclo scale = Cyclo(Rational(1, order));
  for (auto& c : total) {
    c *= scale;
  }
  return total;
}

long nonnegative_integer(const Cyclo& c, const char* what) {
  if (!c.is_rational()) {
    throw InvariantViolation(std::string(what) + " coefficient is not rational");
  }
  const Rational q = c.to_rational();
  if (q.get_den() != 1 || sgn(q) < 0) {
    throw InvariantViolation(std::string(what) + " coefficient " + q.get_str() +
                             " is not a nonnegative integer");
  }
  return q.get_num().get_si();
}

// Fake degree sum_w weight(w)/det(1-tw) times prod(1 - t^{d_i}) / |W|, as
// exponents with multiplicity. Verified to be a polynomial by degree bounds.
std::vector<int> fake_degree_exponents(const std::vector<CharClass>& classes, long order,
                                       const std::vector<int>& degrees,
                                       const Cyclo CharClass::*weight) {
  const std::vector<Cyclo> dpoly = degree_polynomial(degrees);
  const std::size_t deg_l = denominator_degree(classes);
  std::size_t terms = deg_l + dpoly.size() + 1;
  while (true) {
    const Series s = multiply_series(class_sum(classes, order, terms, weight), dpoly, terms);
    std::vector<int> exps;
    std::size_t top = 0;
    for (std::size_t k = 0; k < terms; ++k) {
      const long mult = nonnegative_integer(s[k], "fake degree");
      for (long j = 0; j < mult; ++j) {
        exps.push_back(static_cast<int>(k));
      }
      if (mult > 0) {
        top = k;
      }
    }
    // Difference with the read-off polynomial has numerator degree at most
    // deg_l + max(deg dpoly, top); agreement beyond that is exact equality.
    if (terms > deg_l + std::max(dpoly.size() - 1, top) + 1) {
      return exps;
    }
    terms = deg_l + std::max(dpoly.size() - 1, top) + 2;
  }
}

} // namespace

// --- MatrixGroup ---------------------------------------------------------------

std::optional<std::size_t> MatrixGroup::index_of(const Mat& m) const {
  const Mat key = lifted(m, conductor_);
  auto [lo, hi] = lookup_.equal_range(matrix_hash(key));
  for (auto it = lo; it != hi; ++it) {
    if (matrices_equal(elements_[it->second], key)) {
      return it->second;
    }
  }
  return std::nullopt;
}

std::size_t MatrixGroup::insert(Mat m) {
  const std::size_t idx = elements_.size();
  lookup_.emplace(matrix_hash(m), idx);
  elements_.push_back(std::move(m));
  return idx;
}

std::size_t MatrixGroup::product(std::size_t a, std::size_t b) const {
  auto idx = index_of(elements_[a] * elements_[b]);
  if (!idx) {
    throw InvariantViolation("group is not closed under multiplication");
  }
  return *idx;
}

std::size_t MatrixGroup::inverse(std::size_t a) const {
  // finite order: walk powers until the identity, the previous power is the inverse
  std::size_t prev = identity_index();
  std::size_t cur = a;
  while (cur != identity_index()) {
    prev = cur;
    cur = product(cur, a);
  }
  return prev;
}

MatrixGroup MatrixGroup::generate(std::vector<Mat> generators, int conductor, long max_order) {
  if (generators.empty()) {
    throw InvalidInput("a matrix group needs at least one generator");
  }
  MatrixGroup g;
  g.rank_ = static_cast<int>(generators.front().rows());
  g.conductor_ = conductor;
  for (auto& gen : generators) {
    if (gen.rows() != g.rank_ || gen.cols() != g.rank_) {
      throw InvalidInput("generators must be square matrices of equal size");
    }
    if (is_zero(exact_determinant(gen))) {
      throw InvariantViolation("generator is not invertible");
    }
    gen = lifted(gen, conductor);
  }
  g.generators_ = std::move(generators);
  g.insert(lifted(Mat::Identity(g.rank_, g.rank_), conductor));
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (const Mat& gen : g.generators_) {
      Mat next = lifted(gen * g.elements_[head], conductor);
      if (!g.index_of(next)) {
        if (static_cast<long>(g.elements_.size()) >= max_order) {
          throw CapExceeded("group order exceeds cap " + std::to_string(max_order));
        }
        g.insert(std::move(next));
      }
    }
  }
  return g;
}

// --- classification ------------------------------------------------------------

HyperplaneArrangement find_reflections(const MatrixGroup& group) {
  HyperplaneArrangement arr;
  const int r = group.rank();
  const Mat id = Mat::Identity(r, r);
  std::map<std::string, std::size_t> by_form;
  for (std::size_t i = 0; i < group.elements().size(); ++i) {
    const Mat diff = group.element(i) - id;
    if (exact_rank(diff) != 1) {
      continue;
    }
    arr.reflections.push_back(i);
    // any nonzero row spans the annihilator of ker(w - Id)
    Eigen::Index row = 0;
    while (diff.row(row).unaryExpr([](const Cyclo& c) { return c.is_zero() ? 0 : 1; }).sum() == 0) {
      ++row;
    }
    Vec form = diff.row(row).transpose();
    Eigen::Index lead = 0;
    while (form(lead).is_zero()) {
      ++lead;
    }
    const Cyclo inv = form(lead).inverse();
    std::string key;
    for (Eigen::Index j = 0; j < form.size(); ++j) {
      form(j) = (form(j) * inv).lifted(group.conductor());
      key += form(j).to_string() + "|";
    }
    auto [it, inserted] = by_form.try_emplace(key, arr.hyperplanes.size());
    if (inserted) {
      arr.hyperplanes.push_back(Hyperplane{form, 1});
    }
    ++arr.hyperplanes[it->second].order;
  }
  return arr;
}

std::vector<int> molien_degrees(const MatrixGroup& group) {
  const std::vector<CharClass> classes = char_classes(group);
  const auto r = static_cast<std::size_t>(group.rank());
  std::size_t terms = 64;
  std::vector<int> degrees;
  while (true) {
    const Series molien = class_sum(classes, group.order(), terms, nullptr);
    degrees.clear();
    // series of prod 1/(1 - t^d) over degrees found so far
    Series found(terms, Cyclo(0));
    found[0] = Cyclo(1);
    for (std::size_t k = 1; k < terms && degrees.size() < r; ++k) {
      const Cyclo diff = molien[k] - found[k];
      const long extra = nonnegative_integer(diff, "Molien");
      for (long j = 0; j < extra; ++j) {
        degrees.push_back(static_cast<int>(k));
        // multiply by 1/(1 - t^k)
        for (std::size_t i = k; i < terms; ++i) {
          found[i] += found[i - k];
        }
      }
    }
    if (degrees.size() > r) {
      throw InvariantViolation("Molien series does not match a product of r factors");
    }
    if (degrees.size() == r) {
      break;
    }
    if (static_cast<long>(terms) > group.order() + 1) {
      throw InvariantViolation("Molien series does not match a product form");
    }
    terms *= 2;
  }
  // Exact check: prod(1 - t^{d_i}) * Molien = 1 up to a degree beyond the
  // numerator bound of the difference.
  const std::vector<Cyclo> dpoly = degree_polynomial(degrees);
  const std::size_t check_terms = denominator_degree(classes) + dpoly.size() + 1;
  const Series prod = multiply_series(class_sum(classes, group.order(), check_terms, nullptr),
                                      dpoly, check_terms);
  for (std::size_t k = 0; k < check_terms; ++k) {
    if (prod[k] != Cyclo(k == 0 ? 1 : 0)) {
      throw InvariantViolation("Molien series does not match a product form");
    }
  }
  return degrees;
}

std::vector<int> codegrees(const MatrixGroup& group, const std::vector<int>& degrees) {
  const std::vector<CharClass> classes = char_classes(group);
  std::vector<int> exponents;
  for (int d : degrees) {
    exponents.push_back(d - 1);
  }
  std::sort(exponents.begin(), exponents.end());
  // Whichever trace convention reproduces the exponents is the one for V; the
  // other gives V*.
  const auto with_trace = fake_degree_exponents(classes, group.order(), degrees, &CharClass::trace);
  const auto with_inverse =
      fake_degree_exponents(classes, group.order(), degrees, &CharClass::trace_inverse);
  const std::vector<int>* dual = nullptr;
  if (with_trace == exponents) {
    dual = &with_inverse;
  } else if (with_inverse == exponents) {
    dual = &with_trace;
  } else {
    throw InvariantViolation("neither trace convention reproduces the exponents");
  }
  if (dual->size() != degrees.size()) {
    throw InvariantViolation("dual fake degree does not have r terms");
  }
  std::vector<int> result;
  for (int e : *dual) {
    result.push_back(e - 1);
  }
  std::sort(result.begin(), result.end(), std::greater<>());
  return result;
}

long reflections_from_degrees(const std::vector<int>& degrees) {
  long n = 0;
  for (int d : degrees) {
    n += d - 1;
  }
  return n;
}

long hyperplanes_from_codegrees(const std::vector<int>& codegrees) {
  long n = 0;
  for (int d : codegrees) {
    n += d + 1;
  }
  return n;
}

ReflectionGroup make_reflection_group(MatrixGroup group, std::string label) {
  ReflectionGroup w;
  w.label = std::move(label);
  w.arrangement = find_reflections(group);
  w.degrees = molien_degrees(group);
  w.codegrees = codegrees(group, w.degrees);
  w.N = w.arrangement.reflection_count();
  w.Nstar = w.arrangement.hyperplane_count();
  w.group = std::move(group);

  long prod = 1;
  for (int d : w.degrees) {
    prod *= d;
  }
  if (prod != w.order()) {
    throw InvariantViolation(w.label + ": product of degrees differs from the group order");
  }
  if (reflections_from_degrees(w.degrees) != w.N) {
    throw InvariantViolation(w.label + ": reflection count differs from sum(d_i - 1)");
  }
  if (hyperplanes_from_codegrees(w.codegrees) != w.Nstar) {
    throw InvariantViolation(w.label + ": hyperplane count differs from sum(d*_i + 1)");
  }
  return w;
}

// --- constructions -------------------------------------------------------------

ReflectionGroup build_imprimitive(int d, int e, int r, const Limits& limits) {
  if (d < 1 || e < 1 || r < 1) {
    throw InvalidInput("G(de,e,r) parameters must be positive");
  }
  if (d == 1 && r == 1) {
    throw InvalidInput("G(e,e,1) is the trivial group");
  }
  const int m = d * e;
  // (de)^r r! / e, checked before enumerating
  Rational projected = 1;
  for (int i = 0; i < r; ++i) {
    projected *= m;
    projected *= (i + 1);
    if (projected / e > limits.max_order) {
      throw CapExceeded("projected order of G(" + std::to_string(m) + "," + std::to_string(e) +
                        "," + std::to_string(r) + ") exceeds cap " +
                        std::to_string(limits.max_order));
    }
  }
  std::vector<Mat> gens;
  const Mat id = Mat::Identity(r, r);
  for (int i = 0; i + 1 < r; ++i) {
    Mat s = id;
    s(i, i) = Cyclo(0);
    s(i + 1, i + 1) = Cyclo(0);
    s(i, i + 1) = Cyclo(1);
    s(i + 1, i) = Cyclo(1);
    gens.push_back(std::move(s));
  }
  if (e > 1 && r >= 2) {
    Mat t = id;
    t(0, 0) = Cyclo(0);
    t(1, 1) = Cyclo(0);
    t(0, 1) = Cyclo::zeta(m, -1);
    t(1, 0) = Cyclo::zeta(m, 1);
    gens.push_back(std::move(t));
  }
  if (d > 1) {
    Mat u = id;
    u(0, 0) = Cyclo::zeta(m, e);
    gens.push_back(std::move(u));
  }
  std::ostringstream label;
  label << "G(" << m << "," << e << "," << r << ")";
  return make_reflection_group(MatrixGroup::generate(std::move(gens), m, limits.max_order),
                               label.str());
}

ReflectionGroup build_symmetric(int n, const Limits& limits) {
  if (n < 2) {
    throw InvalidInput("symmetric group needs n >= 2");
  }
  long order = 1;
  for (int i = 2; i <= n; ++i) {
    order *= i;
    if (order > limits.max_order) {
      throw CapExceeded("order of S_" + std::to_string(n) + " exceeds cap " +
                        std::to_string(limits.max_order));
    }
  }
  const int r = n - 1;
  // basis b_k = e_k - e_{k+1}; coordinates of e_a - e_b in that basis
  auto difference = [r](int a, int b) {
    Vec v = Vec::Constant(r, Cyclo(0));
    if (a < b) {
      for (int j = a; j < b; ++j) {
        v(j) += Cyclo(1);
      }
    } else {
      for (int j = b; j < a; ++j) {
        v(j) -= Cyclo(1);
      }
    }
    return v;
  };
  std::vector<Mat> gens;
  for (int t = 0; t + 1 < n; ++t) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[static_cast<std::size_t>(t)], perm[static_cast<std::size_t>(t) + 1]);
    Mat g(r, r);
    for (int k = 0; k < r; ++k) {
      g.col(k) = difference(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(k) + 1]);
    }
    gens.push_back(std::move(g));
  }
  return make_reflection_group(MatrixGroup::generate(std::move(gens), 1, limits.max_order),
                               "S" + std::to_string(n));
}

// --- specifiers ----------------------------------------------------------------

namespace {

int parse_int(std::string_view s, std::string_view context) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "' in " + std::string(context));
  }
  return value;
}

std::map<std::string, int> parse_fields(std::string_view body, std::string_view context) {
  std::map<std::string, int> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected key=value in " + std::string(context));
    }
    out[std::string(item.substr(0, eq))] = parse_int(item.substr(eq + 1), context);
    body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
  }
  return out;
}

} // namespace

GroupSpec parse_group_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("group specifier '" + std::string(text) + "' has no kind prefix");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (kind == "imprimitive") {
    auto fields = parse_fields(body, text);
    if (fields.size() != 3 || !fields.contains("d") || !fields.contains("e") ||
        !fields.contains("r")) {
      throw ParseError("imprimitive specifier needs exactly d, e and r");
    }
    return ImprimitiveSpec{fields["d"], fields["e"], fields["r"]};
  }
  if (kind == "symmetric") {
    auto fields = parse_fields(body, text);
    if (fields.size() != 1 || !fields.contains("n")) {
      throw ParseError("symmetric specifier needs exactly n");
    }
    return SymmetricSpec{fields["n"]};
  }
  if (kind == "table") {
    exceptional_table(body);
    return TableSpec{std::string(body)};
  }
  throw ParseError("unknown group kind '" + std::string(kind) + "'");
}

std::string to_string(const GroupSpec& spec) {
  struct Visitor {
    std::string operator()(const ImprimitiveSpec& s) const {
      return "imprimitive:d=" + std::to_string(s.d) + ",e=" + std::to_string(s.e) +
             ",r=" + std::to_string(s.r);
    }
    std::string operator()(const SymmetricSpec& s) const {
      return "symmetric:n=" + std::to_string(s.n);
    }
    std::string operator()(const TableSpec& s) const { return "table:" + s.name; }
  };
  return std::visit(Visitor{}, spec);
}

ReflectionGroup build_group(const GroupSpec& spec, const Limits& limits) {
  if (const auto* s = std::get_if<ImprimitiveSpec>(&spec)) {
    return build_imprimitive(s->d, s->e, s->r, limits);
  }
  if (const auto* s = std::get_if<SymmetricSpec>(&spec)) {
    return build_symmetric(s->n, limits);
  }
  throw InvalidInput("table groups carry degree data only, no matrices");
}

} // namespace reflexion
