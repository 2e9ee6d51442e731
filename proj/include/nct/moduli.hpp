#ifndef NCT_MODULI_HPP
#define NCT_MODULI_HPP

#include <Eigen/Dense>

#include "nct/core.hpp"

namespace nct {

/// The lattice Z + tau Z, Im(tau) != 0.
class Lattice {
 public:
  explicit Lattice(Complex tau) : tau_(tau) { require_complex_structure(tau); }
  Complex tau() const { return tau_; }

 private:
  Complex tau_;
};

/// Connection offsets (R1,R2), stored as representatives in [0,1).
class ConnectionParams {
 public:
  ConnectionParams(Real r1, Real r2) : r1_(wrap_unit(r1)), r2_(wrap_unit(r2)) {}
  Real r1() const { return r1_; }
  Real r2() const { return r2_; }

 private:
  Real r1_;
  Real r2_;
};

/// Point of the moduli torus C/(Z + tau Z), reduced to the half-open
/// fundamental parallelogram {a tau + b : a, b in [0,1)}.
struct ModuliPoint {
  Complex z;
  Lattice lattice;
};

/// Coefficients (a,b) with z = a tau + b, from the real 2x2 system
/// (Re tau, 1; Im tau, 0)(a,b)^T = (Re z, Im z)^T.
inline Eigen::Vector2d lattice_coordinates(Complex z, const Lattice& lat) {
  const Real a = z.imag() / lat.tau().imag();
  const Real b = z.real() - a * lat.tau().real();
  return {a, b};
}

inline ModuliPoint reduce(Complex z, const Lattice& lat) {
  const Eigen::Vector2d ab = lattice_coordinates(z, lat);
  const Real a = wrap_unit(ab[0]);
  const Real b = wrap_unit(ab[1]);
  return {a * lat.tau() + b, lat};
}

/// z = tau R1 + R2; already reduced since R1, R2 lie in [0,1).
inline ModuliPoint to_moduli_point(const ConnectionParams& c, const Lattice& lat) {
  return {lat.tau() * c.r1() + c.r2(), lat};
}

/// True iff z1 - z2 is a lattice vector: both lattice coefficients within
/// tol of integers.
inline bool equivalent(Complex z1, Complex z2, const Lattice& lat, Real tol = 1e-9) {
  const Eigen::Vector2d ab = lattice_coordinates(z1 - z2, lat);
  return dist_to_integer(ab[0]) <= tol && dist_to_integer(ab[1]) <= tol;
}

/// Supercycle data (position, monodromy) read as connection offsets; the
/// identification is coordinate-wise after R/Z normalization.
inline ConnectionParams supercycle_to_connection(Real r1, Real r2) {
  return ConnectionParams(r1, r2);
}

}  // namespace nct

#endif
