#include "spinent/error.hpp"
#include "spinent/quadrature.hpp"
#include "spinent/spectra.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace spinent;

TEST_CASE("grid spectrum counts states and shells") {
  const auto levels = enumerate_levels(FreeSpaceGrid{});
  REQUIRE(levels.size() == 27000);
  CHECK(levels.energy[0] == 0.0);
  CHECK(levels.weight.sum() == doctest::Approx(27000.0));
  CHECK(std::is_sorted(levels.energy.begin(), levels.energy.end()));

  const double unit = kDefaultGridEnergyUnit;
  const auto shell = [&](int n2) {
    return ((levels.energy - unit * n2).abs() < 1e-12).count();
  };
  CHECK(shell(1) == 6);
  CHECK(shell(2) == 12);
  CHECK(shell(3) == 8);
  // 30 = 1+4+25 = 4+1+25 ... sign and permutation classes
  CHECK(shell(30) == 48);
  CHECK(levels.energy.maxCoeff() == doctest::Approx(unit * 675));
}

TEST_CASE("grid half-width 1 keeps the asymmetric box") {
  const auto levels = enumerate_levels(FreeSpaceGrid{1, 0.5});
  REQUIRE(levels.size() == 8);
  // n in {-1, 0}^3
  CHECK(levels.energy[0] == 0.0);
  CHECK(levels.energy[7] == doctest::Approx(1.5));
}

TEST_CASE("trap shells") {
  const double w = 0.1;
  const auto levels = enumerate_levels(HarmonicTrap{w, 2});
  REQUIRE(levels.size() == 3);
  CHECK(levels.energy[0] == doctest::Approx(1.5 * w));
  CHECK(levels.energy[1] == doctest::Approx(2.5 * w));
  CHECK(levels.energy[2] == doctest::Approx(3.5 * w));
  CHECK(levels.weight[0] == 1.0);
  CHECK(levels.weight[1] == 3.0);
  CHECK(levels.weight[2] == 6.0);
  CHECK(lowest_energy(HarmonicTrap{w, 2}) == doctest::Approx(0.15));
}

TEST_CASE("trap state count grows as E^3 / 6") {
  for (int n : {10, 100, 1000}) {
    const auto levels = enumerate_levels(HarmonicTrap{1.0, n});
    const double exact = (n + 1.0) * (n + 2.0) * (n + 3.0) / 6.0;
    CHECK(levels.weight.sum() == doctest::Approx(exact));
    const double top = levels.energy[n];
    CHECK(exact / (top * top * top / 6.0) == doctest::Approx(1.0).epsilon(6.0 / n));
  }
}

TEST_CASE("trap state count below 30 hbar omega") {
  const auto levels = enumerate_levels(HarmonicTrap{1.0, 60});
  const double below = (levels.energy < 30.0).select(levels.weight, 0.0).sum();
  CHECK(std::abs(below / (30.0 * 30.0 * 30.0 / 6.0) - 1.0) < 0.05);
  // Two spins filled to mu = 30 hbar omega: 8990, ten short of 9000. The
  // thermal tail lifts <N> past 9000 by T = 0.02 mu (see test_occupancy).
  CHECK(2 * below == 8990);
}

TEST_CASE("lattice dispersion values") {
  CHECK(lattice_dispersion(0.0, 0.0, 1.0) == doctest::Approx(-4.0));
  CHECK(lattice_dispersion(M_PI, M_PI, 1.0) == doctest::Approx(4.0));
  CHECK(std::abs(lattice_dispersion(M_PI / 2, M_PI / 2, 1.0)) < 1e-15);
}

TEST_CASE("continuum levels integrate powers of the density of states") {
  FreeSpaceContinuum c;
  c.cutoff = 3.0;
  c.breakpoints = {0.8, 1.2};
  c.dos_prefactor = 1.0;
  const auto levels = enumerate_levels(c);
  CHECK(levels.size() == 3 * c.order);
  CHECK((levels.energy >= 0).all());
  CHECK((levels.energy <= 3.0).all());
  // int_0^E sqrt(e) de and int_0^E e^{3/2} de
  CHECK(levels.weight.sum() == doctest::Approx(2.0 / 3.0 * std::pow(3.0, 1.5)).epsilon(1e-13));
  CHECK((levels.weight * levels.energy).sum() ==
        doctest::Approx(2.0 / 5.0 * std::pow(3.0, 2.5)).epsilon(1e-13));
}

TEST_CASE("default continuum prefactor matches the grid density of states") {
  // grid: 4 pi n^2 dn with n = sqrt(e / unit)
  const FreeSpaceContinuum c;
  CHECK(c.dos_prefactor ==
        doctest::Approx(2.0 * M_PI / std::pow(kDefaultGridEnergyUnit, 1.5)));
  const auto grid = enumerate_levels(FreeSpaceGrid{});
  const double count = (grid.energy < 1.0).count();
  const double continuum = c.dos_prefactor * 2.0 / 3.0;
  CHECK(count / continuum == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("lattice spectrum") {
  SUBCASE("L = 2") {
    const auto levels = enumerate_levels(LatticeDispersion{2, 1.0});
    REQUIRE(levels.size() == 4);
    CHECK(levels.energy[0] == doctest::Approx(-4.0));
    CHECK(levels.energy[1] == doctest::Approx(0.0));
    CHECK(levels.energy[2] == doctest::Approx(0.0));
    CHECK(levels.energy[3] == doctest::Approx(4.0));
  }
  SUBCASE("particle-hole symmetric band") {
    const auto levels = enumerate_levels(LatticeDispersion{16, 0.7});
    const auto n = levels.size();
    REQUIRE(n == 256);
    for (Eigen::Index i = 0; i < n; ++i)
      CHECK(levels.energy[i] == doctest::Approx(-levels.energy[n - 1 - i]).epsilon(1e-12));
    CHECK(std::abs(levels.energy.sum()) < 1e-10);
    CHECK(lowest_energy(LatticeDispersion{16, 0.7}) == doctest::Approx(levels.energy[0]));
  }
  CHECK(lattice_momentum(0, 8) == 0.0);
  CHECK(lattice_momentum(4, 8) == doctest::Approx(-M_PI));
  CHECK(lattice_momentum(3, 8) == doctest::Approx(3 * M_PI / 4));
}

TEST_CASE("model names") {
  CHECK(std::string(model_name(FreeSpaceGrid{})) == "grid");
  CHECK(std::string(model_name(FreeSpaceContinuum{})) == "continuum");
  CHECK(std::string(model_name(HarmonicTrap{})) == "trap");
  CHECK(std::string(model_name(LatticeDispersion{})) == "lattice");
}

TEST_CASE("invalid models") {
  CHECK_THROWS_AS(enumerate_levels(FreeSpaceGrid{0}), DomainError);
  CHECK_THROWS_AS(enumerate_levels(FreeSpaceGrid{15, -1.0}), DomainError);
  CHECK_THROWS_AS(enumerate_levels(HarmonicTrap{0.0, 3}), DomainError);
  CHECK_THROWS_AS(enumerate_levels(HarmonicTrap{0.1, -1}), DomainError);
  CHECK_THROWS_AS(enumerate_levels(LatticeDispersion{3, 1.0}), DomainError);
  CHECK_THROWS_AS(enumerate_levels(LatticeDispersion{0, 1.0}), DomainError);
  FreeSpaceContinuum c;
  c.cutoff = -1.0;
  CHECK_THROWS_AS(enumerate_levels(c), DomainError);
  CHECK_THROWS_AS(enumerate_levels(FreeSpaceContinuum{}), PreconditionError);
  CHECK_THROWS_AS(enumerate_levels(HarmonicTrap{}), PreconditionError);
}

TEST_CASE("Gauss-Legendre rule") {
  const auto rule = gauss_legendre<double>(10);
  CHECK(rule.weights.sum() == doctest::Approx(2.0));
  // exact through degree 19
  CHECK((rule.weights * rule.nodes.pow(18)).sum() == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
  CHECK(std::abs((rule.weights * rule.nodes.pow(19)).sum()) < 1e-14);
  const auto shifted = on_interval(rule, 1.0, 3.0);
  CHECK((shifted.weights * shifted.nodes.square()).sum() == doctest::Approx(26.0 / 3.0));
  CHECK_THROWS(gauss_legendre<double>(0));
}
