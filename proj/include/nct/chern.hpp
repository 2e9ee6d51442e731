#ifndef NCT_CHERN_HPP
#define NCT_CHERN_HPP

#include "nct/core.hpp"

namespace nct {

/// Integer pair (n,m): rank and degree of a bundle type. Degree is carried as
/// the plain integer; no differential forms are represented.
struct TopologicalType {
  TopologicalType(int rank, int degree) : n(rank), m(degree) {
    if (n == 0 && m == 0) throw std::invalid_argument("topological type (0,0) is not allowed");
  }
  int n;
  int m;
};

inline TopologicalType operator+(TopologicalType a, TopologicalType b) {
  return TopologicalType(a.n + b.n, a.m + b.m);
}

/// Image of (n,m) under the degree-2 contraction: dim = n - m*theta, deg = m.
struct ChernCharacter {
  Real dim;
  int deg;
};

inline ChernCharacter nu_to_chern(TopologicalType t, Real theta) {
  return {Real(t.n) - Real(t.m) * theta, t.m};
}

/// Deformed rank n - m*theta.
inline Real deformed_dim(TopologicalType t, Real theta) { return Real(t.n) - Real(t.m) * theta; }

/// Slope m/(n - m*theta); m/n at theta = 0.
inline Real slope(TopologicalType t, Real theta) {
  const Real d = deformed_dim(t, theta);
  if (d == Real(0)) throw std::invalid_argument("degenerate slope: n - m*theta = 0");
  return Real(t.m) / d;
}

/// Constant-curvature scalar -2 pi i * slope. Purely imaginary; 0 for (1,0).
inline Complex curvature_scalar(TopologicalType t, Real theta) {
  return Complex(0, -two_pi * slope(t, theta));
}

/// Slope comparison for a proper subobject type. Properness is measured in
/// deformed rank: 0 < dim(sub) < dim(ambient).
inline bool is_destabilizing(TopologicalType sub, TopologicalType ambient, Real theta) {
  const Real ds = deformed_dim(sub, theta);
  const Real da = deformed_dim(ambient, theta);
  if (!(Real(0) < ds && ds < da))
    throw std::invalid_argument("sub type is not proper at this theta");
  return slope(sub, theta) >= slope(ambient, theta);
}

}  // namespace nct

#endif
