#ifndef NCT_FOLIATION_HPP
#define NCT_FOLIATION_HPP

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "nct/heisenberg.hpp"

namespace nct {

/// Straight closed geodesic: gcd(n,m) = 1 and (n,m) != (0,0), so the line is
/// traversed once.
inline bool is_special_lagrangian(int n, int m) {
  if (n == 0 && m == 0) return false;
  return gcd_abs(n, m) == 1;
}

/// Linear foliation with leaf direction (theta, 1) in covering coordinates,
/// i.e. dy = dx/theta along leaves.
class FoliationSpec {
 public:
  explicit FoliationSpec(Real theta) : theta_(theta) {
    if (theta == Real(0)) throw std::invalid_argument("foliation slope requires theta != 0");
  }
  Real theta() const { return theta_; }
  Eigen::Vector2d leaf_direction() const { return {theta_, 1.0}; }

 private:
  Real theta_;
};

/// Z-action on (circle point, real): k rotations paired with a shift by k.
struct SuspensionAction {
  Real theta_inv;  // rotation angle as a fraction of a full turn
};

inline std::pair<Complex, Real> suspension_act(Complex z, Real b, int k,
                                               const SuspensionAction& a) {
  return {unit_phase(Real(k) * a.theta_inv) * z, b + Real(k)};
}

/// Closed geodesic {(n s + R1, m s) : s in R/Z} of slope m/n and x-intercept
/// offset R1.
class Cycle {
 public:
  Cycle(int n, int m, Real r1) : n_(n), m_(m), r1_(wrap_unit(r1)) {
    if (!is_special_lagrangian(n, m))
      throw std::invalid_argument("cycle type must be coprime and nonzero");
  }
  int n() const { return n_; }
  int m() const { return m_; }
  Real r1() const { return r1_; }

 private:
  int n_;
  int m_;
  Real r1_;
};

/// Flat connection A = 2 pi i R2 dx on the trivial line bundle over a cycle.
class FlatConnection {
 public:
  explicit FlatConnection(Real r2) : r2_(wrap_unit(r2)) {}
  Real r2() const { return r2_; }

 private:
  Real r2_;
};

/// Parallel transport phase between x-coordinates.
inline Complex monodromy(const FlatConnection& a, Real x1, Real x2) {
  return unit_phase(a.r2() * (x2 - x1));
}

/// One traversal of the cycle advances x by n, so the holonomy is
/// e^{2 pi i n R2}.
inline Complex cycle_holonomy(const FlatConnection& a, const Cycle& c) {
  return unit_phase(a.r2() * Real(c.n()));
}

/// Wrapped x-coordinates of successive transversal returns of the leaf
/// through (x0, 0). Each segment flows along (theta, 1) up to the crossing
/// time of the next integer level of y.
inline std::vector<Real> transversal_returns(const FoliationSpec& f, Real x0, int count) {
  const Eigen::Vector2d dir = f.leaf_direction();
  std::vector<Real> xs;
  xs.reserve(count + 1);
  Real x = x0;
  xs.push_back(wrap_unit(x));
  for (int k = 0; k < count; ++k) {
    const Real dt = Real(1) / dir[1];
    x += dir[0] * dt;
    xs.push_back(wrap_unit(x));
  }
  return xs;
}

/// Rotation angle (mod 1) of the first-return map to the transversal y = 0.
inline Real first_return_rotation(const FoliationSpec& f) {
  const auto xs = transversal_returns(f, 0.25, 1);
  return wrap_unit(xs[1] - xs[0]);
}

/// Orbit average x_N / N of the unwrapped return displacement.
inline Real birkhoff_rotation_estimate(const FoliationSpec& f, Real x0, int returns) {
  const Eigen::Vector2d dir = f.leaf_direction();
  Real x = x0;
  for (int k = 0; k < returns; ++k) x += dir[0] / dir[1];
  return (x - x0) / Real(returns);
}

struct IntersectionEvent {
  int index;
  Real t;  // leaf flow time (y-coordinate before wrapping)
  Real s;  // cycle parameter in [0,1)
  Real x;  // torus coordinates of the event
  Real y;
};

namespace detail {

/// Solves e*m + f*n = gcd(m,n) over the integers.
inline void extended_gcd(long m, long n, long& e, long& f) {
  if (n == 0) {
    e = 1;
    f = 0;
    return;
  }
  long e1, f1;
  extended_gcd(n, m % n, e1, f1);
  e = f1;
  f = e1 - (m / n) * f1;
}

}  // namespace detail

/// Intersection events of the leaf through (R1, 0) with the cycle, for flow
/// time in [0, t_max]. Events are found analytically: for each integer wrap
/// pair (a,b) the linear incidence system
///   R1 + theta t = n s + R1 - a,   t = m s - b
/// is solved exactly, so the list carries no time-stepping error. Every
/// event satisfies m (x - R1) = (n - m theta) t modulo 1.
inline std::vector<IntersectionEvent> leaf_cycle_intersections(const FoliationSpec& f,
                                                               const Cycle& c, Real t_max) {
  std::vector<IntersectionEvent> events;
  if (t_max < 0) return events;
  const Real theta = f.theta();

  if (c.m() == 0) {
    // The cycle is the transversal y = 0 itself; events at integer flow time.
    for (int k = 0; Real(k) <= t_max; ++k) {
      const Real x = wrap_unit(c.r1() + theta * Real(k));
      const Real s = wrap_unit((x - c.r1()) / Real(c.n()));
      events.push_back({k, Real(k), s, x, Real(0)});
    }
    return events;
  }

  const Real den = Real(c.n()) - Real(c.m()) * theta;
  if (den == Real(0)) throw std::invalid_argument("leaf is parallel to the cycle");

  // Wrap pairs with m a - n b = k give events at t = k / (n - m theta);
  // k runs over the integers with matching sign.
  long e, g;
  detail::extended_gcd(c.m(), c.n(), e, g);
  if (e * c.m() + g * c.n() == -1) {  // normalize to e m + g n = 1
    e = -e;
    g = -g;
  }
  Eigen::Matrix2d incidence;
  incidence << theta, -Real(c.n()), Real(1), -Real(c.m());
  const int k_max = int(std::floor(t_max * std::abs(den)));
  for (int k = 0; k <= k_max; ++k) {
    const long v = den > 0 ? k : -k;  // m a - n b = v
    const long a = e * v;
    const long b = -g * v;
    const Eigen::Vector2d ts = incidence.partialPivLu().solve(Eigen::Vector2d(-Real(a), -Real(b)));
    const Real t = ts[0] == Real(0) ? Real(0) : ts[0];  // normalize -0.0
    const Real s = wrap_unit(ts[1]);
    const Real x = wrap_unit(c.r1() + theta * t);
    // The simulated leaf has x-intercept R1, so the incidence congruence
    // m(x0 - R1) = (n - m theta) t mod 1 reduces to (n - m theta) t integer.
    if (dist_to_integer(den * t) > 1e-9)
      throw std::logic_error("intersection event violates the incidence congruence");
    events.push_back({k, t, s, x, wrap_unit(t)});
  }
  return events;
}

struct InducedRotation {
  Real theta_prime;      // first-return displacement along the cycle, mod 1
  Real generator_theta;  // theta/(n - m theta) mod 1
  Real generator_unit;   // 1/(n - m theta) mod 1
  Real gap_variance;     // variance of the wrapped return gaps
  bool degenerate;       // both generators at integer values: closed-leaf case
};

/// First-return rotation of the leaves acting on a cycle, with the holonomy
/// displacement generators. Rational degeneracies are reported, not raised.
inline InducedRotation induced_rotation(const FoliationSpec& f, const Cycle& c,
                                        int returns = 64) {
  const Real den = Real(c.n()) - Real(c.m()) * f.theta();
  if (den == Real(0)) throw std::invalid_argument("leaf is parallel to the cycle");
  const Real t_max = (c.m() == 0 ? Real(returns + 1) : Real(returns + 1) / std::abs(den));
  const auto events = leaf_cycle_intersections(f, c, t_max);
  if (events.size() < 2) throw std::logic_error("not enough intersection events");

  std::vector<Real> gaps;
  for (std::size_t i = 0; i + 1 < events.size(); ++i)
    gaps.push_back(wrap_unit(events[i + 1].s - events[i].s));
  Real mean = 0;
  for (Real gp : gaps) mean += gp;
  mean /= Real(gaps.size());
  Real var = 0;
  for (Real gp : gaps) var += (gp - mean) * (gp - mean);
  var /= Real(gaps.size());

  InducedRotation out;
  out.theta_prime = gaps.front();
  out.generator_theta = wrap_unit(f.theta() / den);
  out.generator_unit = wrap_unit(Real(1) / den);
  out.gap_variance = var;
  out.degenerate = dist_to_integer(f.theta() / den) < 1e-9 && dist_to_integer(Real(1) / den) < 1e-9;
  return out;
}

struct HolonomyMembership {
  Real distance;  // circle distance to the nearest group element in the window
  int i;          // multiples of the theta generator
  int j;          // multiples of the unit generator
};

/// Nearest element of {i g1 + j g2 mod 1 : |i|,|j| <= window} to value,
/// scanned outward so the reported witness has the smallest radius.
inline HolonomyMembership holonomy_membership(Real value, Real g1, Real g2, int window) {
  HolonomyMembership best{std::numeric_limits<Real>::infinity(), 0, 0};
  for (int r = 0; r <= window; ++r)
    for (int i = -r; i <= r; ++i)
      for (int j = -r; j <= r; ++j) {
        if (std::max(std::abs(i), std::abs(j)) != r) continue;
        const Real d = circle_distance(value, Real(i) * g1 + Real(j) * g2);
        if (d < best.distance) best = {d, i, j};
      }
  return best;
}

/// The x-intercept offsets of the m connected components of the leafwise
/// path space: a coset of (1/m)Z in R/Z based at R1.
struct ComponentSet {
  std::vector<Real> offsets;
};

/// Largest violation over sampled branch points (x,t): each must satisfy the
/// incidence congruence m(x - R1) = (n - m theta) t mod 1 and keep distance
/// >= 1/m from every other branch.
inline Real component_disjointness_residual(const FoliationSpec& f, const Cycle& c,
                                            const ComponentSet& set, int samples,
                                            std::uint64_t seed) {
  if (c.m() < 1) throw std::invalid_argument("component sampling requires m >= 1");
  Rng rng(seed);
  const int m = c.m();
  const Real den = Real(c.n()) - Real(m) * f.theta();
  const Real sl = v1_phase_slope(c.n(), m, f.theta());
  Real worst = 0;
  for (int k = 0; k < samples; ++k) {
    const Real t = rng.uniform(-8.0, 8.0);
    const int j = rng.uniform_int(0, m - 1);
    const Real x = wrap_unit(sl * t + set.offsets[j]);
    worst = std::max(worst, dist_to_integer(Real(m) * (x - c.r1()) - den * t));
    for (int j2 = 0; j2 < m; ++j2) {
      if (j2 == j) continue;
      const Real sep = circle_distance(x, wrap_unit(sl * t + set.offsets[j2]));
      worst = std::max(worst, std::max(Real(0), Real(1) / Real(m) - sep));
    }
  }
  return worst;
}

/// Offsets {R1 + j/m mod 1 : j = 0..m-1}; sampling of the congruence checks
/// that every solution lies on exactly one branch.
inline ComponentSet enumerate_components(const FoliationSpec& f, const Cycle& c) {
  if (c.m() < 1) throw std::invalid_argument("component enumeration requires m >= 1");
  ComponentSet set;
  for (int j = 0; j < c.m(); ++j)
    set.offsets.push_back(wrap_unit(c.r1() + Real(j) / Real(c.m())));
  if (component_disjointness_residual(f, c, set, 128, 0xc0ffeeull) > 1e-6)
    throw std::logic_error("component branches are not disjoint");
  return set;
}

/// Position-space unitaries rebuilt from foliation data: the phase slope is
/// read off the incidence congruence and the offset from the cycle position.
/// Shares the kernels of the module-side constructors, so the two builds
/// agree to the last bit.
struct VOperators {
  Real offset;       // R1 in turns
  Real phase_slope;  // (n - m theta)/m

  SectionVector apply_v1(const SectionVector& xi, const GridSpec& g) const {
    return detail::scale_rows_by_phase(xi, g, offset, phase_slope, 1);
  }
  SectionVector apply_v2(const SectionVector& xi, const GridSpec& g) const {
    return detail::shift_rows(xi, g, 1);
  }
};

inline VOperators build_v_ops(const FoliationSpec& f, const Cycle& c, const GridSpec&) {
  if (c.m() < 1) throw std::invalid_argument("V operators require m >= 1");
  if (Real(c.n()) - Real(c.m()) * f.theta() == Real(0))
    throw std::invalid_argument("degenerate type: n - m*theta = 0");
  return {c.r1(), v1_phase_slope(c.n(), c.m(), f.theta())};
}

}  // namespace nct

#endif
