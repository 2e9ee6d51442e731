#ifndef NCT_ALGEBRA_HPP
#define NCT_ALGEBRA_HPP

#include <array>
#include <map>

#include "nct/core.hpp"

namespace nct {

/// Finitely supported twisted Fourier series sum c_{n1,n2} U1^{n1} U2^{n2},
/// the working form of the deformed torus algebra. Exact zeros are never
/// stored, so equal elements have identical coefficient maps.
class AlgebraElement {
 public:
  using Exponents = std::array<int, 2>;
  using Support = std::map<Exponents, Complex>;

  AlgebraElement() = default;

  static AlgebraElement monomial(int n1, int n2, Complex c) {
    AlgebraElement a;
    a.set(n1, n2, c);
    return a;
  }

  static AlgebraElement identity() { return monomial(0, 0, Complex(1)); }

  Complex coefficient(int n1, int n2) const {
    auto it = coeffs_.find({n1, n2});
    return it == coeffs_.end() ? Complex(0) : it->second;
  }

  const Support& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void set(int n1, int n2, Complex c) {
    if (c == Complex(0))
      coeffs_.erase({n1, n2});
    else
      coeffs_[{n1, n2}] = c;
  }

  void add_to(int n1, int n2, Complex c) { set(n1, n2, coefficient(n1, n2) + c); }

  AlgebraElement& operator+=(const AlgebraElement& other) {
    for (const auto& [e, c] : other.coeffs_) add_to(e[0], e[1], c);
    return *this;
  }

  AlgebraElement& operator-=(const AlgebraElement& other) {
    for (const auto& [e, c] : other.coeffs_) add_to(e[0], e[1], -c);
    return *this;
  }

  AlgebraElement& operator*=(Complex scale) {
    if (scale == Complex(0)) {
      coeffs_.clear();
    } else {
      for (auto& [e, c] : coeffs_) c *= scale;
    }
    return *this;
  }

  /// Largest coefficient magnitude; 0 for the zero element.
  Real max_abs() const {
    Real m = 0;
    for (const auto& [e, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  Real norm() const {
    Real sq = 0;
    for (const auto& [e, c] : coeffs_) sq += std::norm(c);
    return std::sqrt(sq);
  }

 private:
  Support coeffs_;
};

inline AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
inline AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
inline AlgebraElement operator*(Complex c, AlgebraElement a) { return a *= c; }

/// Max-abs coefficient difference over the union of supports.
inline Real distance(const AlgebraElement& a, const AlgebraElement& b) {
  Real d = 0;
  for (const auto& [e, c] : a.coefficients())
    d = std::max(d, std::abs(c - b.coefficient(e[0], e[1])));
  for (const auto& [e, c] : b.coefficients())
    d = std::max(d, std::abs(c - a.coefficient(e[0], e[1])));
  return d;
}

/// Twisted product. On monomials,
///   U1^a U2^b * U1^c U2^d = e^{-2 pi i theta b c} U1^{a+c} U2^{b+d}:
/// moving U2^b left across U1^c with U1 U2 = e^{2 pi i theta} U2 U1 picks up
/// the phase e^{-2 pi i theta} once per transposition, b*c in total.
inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, Real theta) {
  AlgebraElement out;
  for (const auto& [ea, ca] : a.coefficients()) {
    for (const auto& [eb, cb] : b.coefficients()) {
      const long cross = long(ea[1]) * long(eb[0]);
      const Complex phase = unit_phase(-theta * Real(cross));
      out.add_to(ea[0] + eb[0], ea[1] + eb[1], ca * cb * phase);
    }
  }
  return out;
}

inline AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b,
                               const TorusParams& p) {
  return multiply(a, b, p.theta);
}

/// Antilinear involution. (c U1^{n1} U2^{n2})* = conj(c) U2^{-n2} U1^{-n1},
/// normal-ordered to conj(c) e^{-2 pi i theta n1 n2} U1^{-n1} U2^{-n2}.
inline AlgebraElement star(const AlgebraElement& a, Real theta) {
  AlgebraElement out;
  for (const auto& [e, c] : a.coefficients()) {
    const long cross = long(e[0]) * long(e[1]);
    out.add_to(-e[0], -e[1], std::conj(c) * unit_phase(-theta * Real(cross)));
  }
  return out;
}

inline AlgebraElement star(const AlgebraElement& a, const TorusParams& p) {
  return star(a, p.theta);
}

/// Infinitesimal torus action: coefficient at (n1,n2) scaled by
/// 2 pi i (x1 n1 + x2 n2). Satisfies the Leibniz rule against multiply.
inline AlgebraElement derive(const AlgebraElement& a, Real x1, Real x2) {
  AlgebraElement out;
  for (const auto& [e, c] : a.coefficients())
    out.set(e[0], e[1], c * Complex(0, two_pi) * (x1 * Real(e[0]) + x2 * Real(e[1])));
  return out;
}

/// Complex-structure derivation: coefficient scaled by 2 pi i (n1 tau + n2).
/// Equals tau*derive(.,1,0) + derive(.,0,1).
inline AlgebraElement derive_complex(const AlgebraElement& a, Complex tau) {
  require_complex_structure(tau);
  AlgebraElement out;
  for (const auto& [e, c] : a.coefficients())
    out.set(e[0], e[1], c * Complex(0, two_pi) * (Real(e[0]) * tau + Real(e[1])));
  return out;
}

inline AlgebraElement derive_complex(const AlgebraElement& a, const TorusParams& p) {
  return derive_complex(a, p.tau);
}

/// Canonical trace: the (0,0) coefficient. Tracial for the twisted product.
inline Complex canonical_trace(const AlgebraElement& a) { return a.coefficient(0, 0); }

/// Random element with exponents in [-max_exp, max_exp]^2 and unit-modulus
/// coefficients; used by property checks.
inline AlgebraElement random_element(Rng& rng, int terms, int max_exp) {
  AlgebraElement a;
  for (int i = 0; i < terms; ++i) {
    const int n1 = rng.uniform_int(-max_exp, max_exp);
    const int n2 = rng.uniform_int(-max_exp, max_exp);
    a.add_to(n1, n2, rng.unit_complex());
  }
  return a;
}

}  // namespace nct

#endif
