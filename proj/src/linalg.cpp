#include "reflexion/linalg.hpp"

#include <sstream>

namespace reflexion {

bool matrices_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return false;
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != b(i, j)) {
        return false;
      }
    }
  }
  return true;
}

long matrix_order(const Mat& a, long bound) {
  const Mat id = Mat::Identity(a.rows(), a.cols());
  Mat power = a;
  for (long k = 1; k <= bound; ++k) {
    if (matrices_equal(power, id)) {
      return k;
    }
    power = power * a;
  }
  throw CapExceeded("matrix order exceeds " + std::to_string(bound));
}

std::string matrix_to_string(const Mat& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : ", [");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << (j == 0 ? "" : ", ") << m(i, j).to_string();
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

} // namespace reflexion
