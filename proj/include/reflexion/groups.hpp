#pragma once

#include "reflexion/linalg.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace reflexion {

/// Resource caps shared by group construction and the exhaustive searches.
struct Limits {
  long max_order = 20000;
  long subset_budget = 100000;
  long search_budget = 1000000;
};

/// Finite matrix group with every element enumerated.
class MatrixGroup {
public:
  /// Breadth-first closure of `generators` (all entries lifted to
  /// Q(zeta_conductor)). Throws CapExceeded past `max_order` elements.
  static MatrixGroup generate(std::vector<Mat> generators, int conductor, long max_order);

  int rank() const { return rank_; }
  int conductor() const { return conductor_; }
  long order() const { return static_cast<long>(elements_.size()); }
  const std::vector<Mat>& generators() const { return generators_; }
  const std::vector<Mat>& elements() const { return elements_; }
  const Mat& element(std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> index_of(const Mat& m) const;
  std::size_t identity_index() const { return 0; }
  std::size_t product(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

private:
  std::size_t insert(Mat m);

  int rank_ = 0;
  int conductor_ = 1;
  std::vector<Mat> generators_;
  std::vector<Mat> elements_;
  std::unordered_multimap<std::size_t, std::size_t> lookup_;
};

struct Hyperplane {
  /// Linear form l_H with kernel H, first nonzero coordinate equal to 1.
  Vec form;
  /// Order e_H of the pointwise stabilizer of H.
  int order = 0;
};

struct HyperplaneArrangement {
  std::vector<Hyperplane> hyperplanes;
  /// Element indices of all reflections.
  std::vector<std::size_t> reflections;

  long reflection_count() const { return static_cast<long>(reflections.size()); }
  long hyperplane_count() const { return static_cast<long>(hyperplanes.size()); }
};

/// Finite reflection group together with its invariant-theoretic data.
struct ReflectionGroup {
  std::string label;
  MatrixGroup group;
  HyperplaneArrangement arrangement;
  /// d_1 <= ... <= d_r
  std::vector<int> degrees;
  /// d*_1 >= ... >= d*_r
  std::vector<int> codegrees;
  long N = 0;
  long Nstar = 0;

  int rank() const { return group.rank(); }
  int conductor() const { return group.conductor(); }
  long order() const { return group.order(); }
};

/// Reflections grouped by hyperplane; N and N* read off the result.
HyperplaneArrangement find_reflections(const MatrixGroup& group);

/// Degrees from the Molien series, sorted increasingly.
std::vector<int> molien_degrees(const MatrixGroup& group);

/// Codegrees from the fake degree of the dual representation, sorted decreasingly.
std::vector<int> codegrees(const MatrixGroup& group, const std::vector<int>& degrees);

/// Runs every classification step and checks the counting identities.
ReflectionGroup make_reflection_group(MatrixGroup group, std::string label);

/// G(de, e, r) via its standard generators.
ReflectionGroup build_imprimitive(int d, int e, int r, const Limits& limits = {});

/// The symmetric group S_n acting on the (n-1)-dimensional sum-zero subspace.
ReflectionGroup build_symmetric(int n, const Limits& limits = {});

/// Sum of (d_i - 1).
long reflections_from_degrees(const std::vector<int>& degrees);
/// Sum of (d*_i + 1).
long hyperplanes_from_codegrees(const std::vector<int>& codegrees);

struct ExceptionalData {
  std::string name;
  int rank = 0;
  std::vector<int> degrees;
  std::vector<int> codegrees;
};

/// Static Shephard-Todd data for G4..G37; throws ParseError on unknown names.
const ExceptionalData& exceptional_table(std::string_view name);
const std::vector<ExceptionalData>& exceptional_groups();

// --- group specifiers ------------------------------------------------------

struct ImprimitiveSpec {
  int d = 1;
  int e = 1;
  int r = 1;
};
struct SymmetricSpec {
  int n = 2;
};
struct TableSpec {
  std::string name;
};
using GroupSpec = std::variant<ImprimitiveSpec, SymmetricSpec, TableSpec>;

/// Parses `imprimitive:d=<int>,e=<int>,r=<int>`, `symmetric:n=<int>`, `table:G<k>`.
GroupSpec parse_group_spec(std::string_view text);
std::string to_string(const GroupSpec& spec);

/// Builds the matrix group of a specifier; table specifiers have no matrices.
ReflectionGroup build_group(const GroupSpec& spec, const Limits& limits = {});

} // namespace reflexion
