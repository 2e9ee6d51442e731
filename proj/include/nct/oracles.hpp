#ifndef NCT_ORACLES_HPP
#define NCT_ORACLES_HPP

#include <Eigen/Dense>

#include "nct/algebra.hpp"

namespace nct {

/// Finite-dimensional cross-check at rational theta = p/q: the q x q clock
/// and shift matrices satisfy the same twisted relation, and monomials map
/// to matrix products built directly from the clock/shift definitions. This
/// path never touches the algebra's own product rule.
namespace clock_shift {

inline Eigen::MatrixXcd clock(int p, int q) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(q, q);
  for (int j = 0; j < q; ++j) c(j, j) = unit_phase(Real(p) * Real(j) / Real(q));
  return c;
}

inline Eigen::MatrixXcd shift(int q) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(q, q);
  for (int j = 0; j < q; ++j) s((j + 1) % q, j) = 1;
  return s;
}

/// Matrix image of c U1^{n1} U2^{n2}: clock^{n1} shift^{n2}, with powers
/// written in closed form (diagonal phases and index shifts).
inline Eigen::MatrixXcd monomial_image(int n1, int n2, Complex c, int p, int q) {
  Eigen::MatrixXcd img = Eigen::MatrixXcd::Zero(q, q);
  for (int j = 0; j < q; ++j) {
    const int row = ((j + n2) % q + q) % q;
    img(row, j) = c * unit_phase(Real(p) * Real(row) * Real(n1) / Real(q));
  }
  return img;
}

inline Eigen::MatrixXcd image(const AlgebraElement& a, int p, int q) {
  Eigen::MatrixXcd img = Eigen::MatrixXcd::Zero(q, q);
  for (const auto& [e, c] : a.coefficients()) img += monomial_image(e[0], e[1], c, p, q);
  return img;
}

}  // namespace clock_shift

}  // namespace nct

#endif
