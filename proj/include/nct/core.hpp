#ifndef NCT_CORE_HPP
#define NCT_CORE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace nct {

using Real = double;
using Complex = std::complex<Real>;

inline constexpr Real two_pi = 2.0 * std::numbers::pi_v<Real>;

/// e^{2*pi*i*turns}, evaluated in one shot so integer phase arithmetic
/// never degrades into repeated multiplication.
inline Complex unit_phase(Real turns) { return std::polar(Real(1), two_pi * turns); }

/// Representative of x in [0,1).
inline Real wrap_unit(Real x) {
  Real y = x - std::floor(x);
  if (y >= Real(1)) y -= Real(1);
  if (y < Real(0)) y += Real(1);
  return y == Real(0) ? Real(0) : y;  // normalize -0.0
}

/// Distance from x to the nearest integer.
inline Real dist_to_integer(Real x) {
  Real f = wrap_unit(x);
  return std::min(f, Real(1) - f);
}

/// Circle distance between two mod-1 values.
inline Real circle_distance(Real a, Real b) { return dist_to_integer(a - b); }

inline long gcd_abs(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

/// Deformation parameter theta and complex modulus tau shared across modules.
struct TorusParams {
  Real theta = 0.3;
  Complex tau = Complex(0, 1);
};

inline void require_complex_structure(Complex tau) {
  if (tau.imag() == Real(0))
    throw std::invalid_argument("tau must have nonzero imaginary part");
}

/// Deterministic uniform sampler; all randomized checks derive from fixed seeds
/// so repeated runs are byte-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  Real uniform() { return Real(gen_() >> 11) * 0x1.0p-53; }
  Real uniform(Real lo, Real hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) {
    return lo + int(gen_() % std::uint64_t(hi - lo + 1));
  }
  Complex unit_complex() { return unit_phase(uniform()); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace nct

#endif
