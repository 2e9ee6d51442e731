#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nct/heisenberg.hpp"
#include "nct/moduli.hpp"

using namespace nct;

TEST_CASE("lattice requires a genuine complex modulus") {
  CHECK_THROWS_AS(Lattice(Complex(1.5, 0.0)), std::invalid_argument);
  CHECK(Lattice(Complex(0.5, 0.8)).tau() == Complex(0.5, 0.8));
}

TEST_CASE("connection parameters normalize into [0,1)") {
  const ConnectionParams c(-0.25, 1.5);
  CHECK(c.r1() == doctest::Approx(0.75));
  CHECK(c.r2() == doctest::Approx(0.5));
  const ConnectionParams whole(1.0, 0.0);
  CHECK(whole.r1() == 0.0);
}

TEST_CASE("moduli coordinate of a connection") {
  const Lattice lat(Complex(0, 1));
  CHECK(to_moduli_point(ConnectionParams(0, 0), lat).z == Complex(0, 0));
  const ModuliPoint p = to_moduli_point(ConnectionParams(0.5, 0.25), lat);
  CHECK(std::abs(p.z - Complex(0.25, 0.5)) <= 1e-15);
  CHECK(to_moduli_point(ConnectionParams(1.0, 0.0), lat).z == Complex(0, 0));
}

TEST_CASE("lattice reduction") {
  const Lattice lat_i(Complex(0, 1));
  CHECK(std::abs(reduce(Complex(1, 1), lat_i).z) <= 1e-15);  // tau + 1 for tau = i
  CHECK(std::abs(reduce(Complex(2.3, 0), lat_i).z - Complex(0.3, 0)) <= 1e-14);

  const Lattice lat(Complex(0.5, 0.8));
  CHECK(std::abs(reduce(lat.tau() + Complex(1), lat).z) <= 1e-14);

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Complex z(rng.uniform(-10, 10), rng.uniform(-10, 10));
    const Complex once = reduce(z, lat).z;
    const Complex twice = reduce(once, lat).z;
    CHECK(std::abs(twice - once) <= 1e-12);
    CHECK(equivalent(z, once, lat));
    const Eigen::Vector2d ab = lattice_coordinates(once, lat);
    CHECK(ab[0] >= 0.0);
    CHECK(ab[0] < 1.0);
    CHECK(ab[1] >= -1e-15);
    CHECK(ab[1] < 1.0);
  }
}

TEST_CASE("lower half-plane modulus") {
  // Im(tau) < 0 is allowed; reduction and equivalence work unchanged.
  const Lattice lat(Complex(0.3, -1.2));
  Rng rng(21);
  for (int t = 0; t < 25; ++t) {
    const Complex z(rng.uniform(-5, 5), rng.uniform(-5, 5));
    const Complex r = reduce(z, lat).z;
    CHECK(equivalent(z, r, lat));
    const Eigen::Vector2d ab = lattice_coordinates(r, lat);
    CHECK(ab[0] >= 0.0);
    CHECK(ab[0] < 1.0);
    CHECK(ab[1] >= -1e-15);
    CHECK(ab[1] < 1.0);
  }
}

TEST_CASE("lattice equivalence") {
  const Lattice lat_i(Complex(0, 1));
  const Complex z(0.37, 0.61);
  CHECK(equivalent(z, z + Complex(1) + lat_i.tau(), lat_i));
  CHECK_FALSE(equivalent(Complex(0), Complex(0.5), lat_i));
  CHECK(equivalent(z, z + Real(3) * lat_i.tau() - Real(7), lat_i));
}

TEST_CASE("supercycle data reads as connection parameters") {
  const ConnectionParams a = supercycle_to_connection(0, 0);
  CHECK(a.r1() == 0.0);
  CHECK(a.r2() == 0.0);
  const ConnectionParams b = supercycle_to_connection(0.25, 0.75);
  CHECK(b.r1() == doctest::Approx(0.25));
  CHECK(b.r2() == doctest::Approx(0.75));
  const ConnectionParams c = supercycle_to_connection(-0.25, 1.5);
  CHECK(c.r1() == doctest::Approx(0.75));
  CHECK(c.r2() == doctest::Approx(0.5));
}

TEST_CASE("round trip through the moduli coordinate") {
  const Lattice lat(Complex(0.5, 0.8));
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const ConnectionParams c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Complex z = to_moduli_point(c, lat).z;
    const int p = rng.uniform_int(-3, 3), q = rng.uniform_int(-3, 3);
    CHECK(equivalent(z, lat.tau() * c.r1() + c.r2() + Real(p) * lat.tau() + Real(q), lat));
  }
}

TEST_CASE("injectivity on a parameter grid") {
  // scaled-down version of the acceptance sweep
  for (const Complex tau : {Complex(0, 1), Complex(0.5, 0.8)}) {
    const Lattice lat(tau);
    std::vector<Complex> zs;
    const int nn = 24;
    for (int i = 0; i < nn; ++i)
      for (int j = 0; j < nn; ++j)
        zs.push_back(reduce(tau * (Real(i) / nn) + Real(j) / nn, lat).z);
    for (std::size_t a = 0; a < zs.size(); ++a)
      for (std::size_t b = a + 1; b < zs.size(); ++b)
        CHECK_FALSE(equivalent(zs[a], zs[b], lat));
  }
}

TEST_CASE("translation covariance of the moduli coordinate") {
  const Complex tau(0.5, 0.8);
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const Real r1 = rng.uniform(0, 1), r2 = rng.uniform(0, 1), d = rng.uniform(-2, 2);
    const Complex base = tau * r1 + r2;
    CHECK(std::abs((tau * r1 + (r2 + d)) - base - Complex(d)) <= 1e-13);
    CHECK(std::abs((tau * (r1 + d) + r2) - base - tau * d) <= 1e-13);
  }
}

TEST_CASE("lattice-translate pairs carry identical holomorphic data") {
  const Lattice lat(Complex(0, 1));
  const GridSpec g(16, 8);
  const ConnectionParams c1(0.3, 0.45);
  const ConnectionParams c2(0.3 + 2.0, 0.45 - 3.0);  // same point of (R/Z)^2

  const Complex z1 = to_moduli_point(c1, lat).z;
  const Complex z2_raw = lat.tau() * (0.3 + 2.0) + (0.45 - 3.0);
  CHECK(equivalent(z1, z2_raw, lat));

  const ModuleParams p1(2, 1, 0.3, c1.r1(), c1.r2());
  const ModuleParams p2(2, 1, 0.3, c2.r1(), c2.r2());
  const CommutatorTable t1 = commutator_table(p1, g);
  const CommutatorTable t2 = commutator_table(p2, g);
  CHECK((t1.lambda - t2.lambda).cwiseAbs().maxCoeff() <= 1e-12);

  // a shift that is not a lattice translate moves the moduli point
  const ConnectionParams c3(0.3 + 0.37, 0.45);
  CHECK_FALSE(equivalent(z1, to_moduli_point(c3, lat).z, lat));
}
