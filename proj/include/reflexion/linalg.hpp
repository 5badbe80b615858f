#pragma once

// Exact dense linear algebra over a field scalar (Cyclo in practice).
// Eigen's decompositions pivot on magnitudes, which an exact field has no
// notion of, so elimination is written here against Eigen storage.

#include "reflexion/cyclo.hpp"
#include "reflexion/error.hpp"

#include <Eigen/Core>

#include <optional>
#include <utility>
#include <vector>

namespace reflexion {

using Mat = Eigen::Matrix<Cyclo, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Cyclo, Eigen::Dynamic, 1>;

namespace detail {

/// In-place reduced row echelon form; returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> rref(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m,
                               Eigen::Index ncols_to_reduce) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < ncols_to_reduce && row < m.rows(); ++col) {
    Eigen::Index p = row;
    while (p < m.rows() && is_zero(m(p, col))) {
      ++p;
    }
    if (p == m.rows()) {
      continue;
    }
    if (p != row) {
      m.row(p).swap(m.row(row));
    }
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) {
      m(row, j) *= inv;
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) {
        continue;
      }
      const Scalar f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) {
        if (!is_zero(m(row, j))) {
          m(i, j) -= f * m(row, j);
        }
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace detail

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
  return static_cast<Eigen::Index>(detail::rref(m, m.cols()).size());
}

/// Columns form a basis of {x : a x = 0}.
template <typename Derived>
auto nullspace(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  M m = a;
  const auto pivots = detail::rref(m, m.cols());
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (auto p : pivots) {
    is_pivot[static_cast<std::size_t>(p)] = true;
  }
  M basis(m.cols(), m.cols() - static_cast<Eigen::Index>(pivots.size()));
  basis.setConstant(Scalar(0));
  Eigen::Index out = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) {
      continue;
    }
    basis(free, out) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], out) = -m(static_cast<Eigen::Index>(r), free);
    }
    ++out;
  }
  return basis;
}

template <typename Derived>
typename Derived::Scalar exact_determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (p < n && is_zero(m(p, col))) {
      ++p;
    }
    if (p == n) {
      return Scalar(0);
    }
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) {
        continue;
      }
      const Scalar f = m(i, col) * inv;
      for (Eigen::Index j = col; j < n; ++j) {
        m(i, j) -= f * m(col, j);
      }
    }
  }
  return det;
}

/// Coefficients c_0..c_n (lowest degree first, c_n = 1) of det(lambda I - a),
/// by the Faddeev-LeVerrier recurrence.
template <typename Derived>
std::vector<typename Derived::Scalar> characteristic_polynomial(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = a.rows();
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
  c[static_cast<std::size_t>(n)] = Scalar(1);
  M running = M::Zero(n, n);
  const M id = M::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    running = a * running + c[static_cast<std::size_t>(n - k + 1)] * id;
    const M prod = a * running;
    Scalar tr(0);
    for (Eigen::Index i = 0; i < n; ++i) {
      tr += prod(i, i);
    }
    c[static_cast<std::size_t>(n - k)] = -tr / Scalar(static_cast<long>(k));
  }
  return c;
}

/// The unique x with a x = b, or nullopt when the system is inconsistent.
/// Throws InvariantViolation when a has dependent columns.
template <typename DerivedA, typename DerivedB>
std::optional<Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, 1>>
solve_exact(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto pivots = detail::rref(aug, a.cols());
  for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()); i < aug.rows(); ++i) {
    if (!is_zero(aug(i, a.cols()))) {
      return std::nullopt;
    }
  }
  if (static_cast<Eigen::Index>(pivots.size()) != a.cols()) {
    throw InvariantViolation("linear system is underdetermined");
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    x(pivots[r]) = aug(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

/// Expresses every entry of `m` over Q(zeta_conductor).
inline Mat lifted(const Mat& m, int conductor) {
  return m.unaryExpr([conductor](const Cyclo& c) { return c.lifted(conductor); });
}

bool matrices_equal(const Mat& a, const Mat& b);

/// Smallest k >= 1 with a^k = 1; throws CapExceeded past `bound`.
long matrix_order(const Mat& a, long bound);

std::string matrix_to_string(const Mat& m);

} // namespace reflexion
