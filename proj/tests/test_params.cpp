#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "pulsent/errors.hpp"
#include "pulsent/params.hpp"

using namespace pulsent;
using testing::rel_close;

TEST_CASE("coupling formula cancels for symmetric inputs") {
  const double k = 7.0;
  CHECK(effective_coupling(k, k, k, 3.0 * k, 3.0) == doctest::Approx(k).epsilon(1e-14));
}

TEST_CASE("photon number inverts the coupling formula") {
  auto g = testing::rng();
  for (int i = 0; i < 200; ++i) {
    const double g0 = testing::log_uniform(g, 1.0, 1e6);
    const double kappa = testing::log_uniform(g, 1e3, 1e10);
    const double det = testing::log_uniform(g, 1e3, 1e10) * (i % 2 ? 1.0 : -1.0);
    const double tau = testing::log_uniform(g, 1e-9, 1e-3);
    const double n = testing::log_uniform(g, 1.0, 1e15);
    const double cpl = effective_coupling(g0, kappa, det, n, tau);
    CHECK(rel_close(photons_for_coupling(cpl, g0, kappa, det, tau), n, 1e-12));
  }
  CHECK(photons_for_coupling(0.0, 1.0, 1.0, 1.0, 1.0) == 0.0);
}

TEST_CASE("coupling rejects non-positive input") {
  CHECK_THROWS_AS(effective_coupling(0.0, 1.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(effective_coupling(1.0, -1.0, 1.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(effective_coupling(1.0, 1.0, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(effective_coupling(1.0, 1.0, 1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(effective_coupling(1.0, 1.0, 1.0, 1.0, -2.0), DomainError);
}

TEST_CASE("photon number for the first table row") {
  // 50-digit evaluation of the inverse coupling formula.
  const auto p = testing::table1_row1();
  const double n = photons_for_coupling(p.g, p.g0, p.kappa, p.omega_m, p.tau);
  CHECK(rel_close(n, 2473694435803.9641582965524838666, 1e-13));
}

TEST_CASE("mean power needs a wavelength") {
  CHECK_FALSE(mean_power(1e12, 1e-6, std::nullopt).has_value());
  const auto p = testing::table1_row1();
  const double n = photons_for_coupling(p.g, p.g0, p.kappa, p.omega_m, p.tau);
  const auto w = mean_power(n, p.tau, 1064e-9);
  REQUIRE(w.has_value());
  // Tens to hundreds of mW for a near-infrared laser.
  CHECK(*w > 0.01);
  CHECK(*w < 1.0);
}

TEST_CASE("Bose-Einstein occupation") {
  using constants::two_pi;
  CHECK(rel_close(occupation_from_temperature(two_pi * 3.8e6, 0.2), 1096.1642410456231, 1e-12));
  CHECK(rel_close(occupation_from_temperature(two_pi * 3.7e9, 0.2), 0.69933788249297871, 1e-12));
  CHECK(rel_close(occupation_from_temperature(two_pi * 3.7e9, 1.0), 5.1463085807778663, 1e-12));
  CHECK(occupation_from_temperature(two_pi * 3.7e9, 0.0) == 0.0);
  CHECK(occupation_from_temperature(two_pi * 1e12, 1e-3) == 0.0);
  // The high-temperature form is the leading term.
  const double w = two_pi * 1e3;
  CHECK(rel_close(occupation_from_temperature(w, 10.0) + 0.5, occupation_high_temperature(w, 10.0),
                  1e-6));
}

TEST_CASE("occupation is monotone") {
  using constants::two_pi;
  double prev = 0.0;
  for (double t = 0.01; t < 10.0; t *= 1.3) {
    const double n = occupation_from_temperature(two_pi * 1e9, t);
    CHECK(n > prev);
    prev = n;
  }
  prev = std::numeric_limits<double>::infinity();
  for (double f = 1e5; f < 1e11; f *= 1.7) {
    const double n = occupation_from_temperature(two_pi * f, 0.5);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("physical and dimensionless parameters round-trip") {
  auto g = testing::rng(7);
  for (int i = 0; i < 100; ++i) {
    PhysicalParams p;
    p.omega_m = testing::log_uniform(g, 1e5, 1e10);
    p.kappa = testing::log_uniform(g, 1e-3, 2.0) * p.omega_m;
    p.g = testing::log_uniform(g, 1e-3, 1.0) * p.kappa;
    p.gamma = p.omega_m / testing::log_uniform(g, 1e3, 1e8);
    p.tau = testing::log_uniform(g, 1e-8, 1e-2) / p.gamma;
    p.g0 = testing::log_uniform(g, 1.0, 1e6);
    p.detuning = -p.omega_m;
    p.n_bar = testing::log_uniform(g, 1e-2, 1e5);
    p.n0 = testing::log_uniform(g, 1e-2, 1e3);
    p.validate();
    const DimensionlessParams d = to_dimensionless(p);
    d.validate();
    const PhysicalParams q = from_dimensionless(d, p.omega_m, p.g0);
    CHECK(rel_close(q.kappa, p.kappa, 1e-12));
    CHECK(rel_close(q.g, p.g, 1e-12));
    CHECK(rel_close(q.gamma, p.gamma, 1e-12));
    CHECK(rel_close(q.tau, p.tau, 1e-12));
    CHECK(rel_close(q.detuning, p.detuning, 1e-12));
    CHECK(q.n_bar == p.n_bar);
    CHECK(q.n0 == p.n0);
    // r two ways: Gτ and ξ²εQη.
    CHECK(rel_close(p.squeezing(), d.squeezing(), 1e-12));
  }
}

TEST_CASE("parameter validation") {
  auto p = testing::table1_row1();
  CHECK_NOTHROW(p.validate());
  p.gamma = p.omega_m;  // Q = 1
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::table1_row1();
  p.n_bar = -1.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = testing::table1_row1();
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("hierarchy diagnostics for the first table row") {
  const auto rep = validate_hierarchy(testing::table1_row1());
  CHECK(rel_close(rep.checks[0].ratio, 0.65659286460026679, 1e-12));
  CHECK(rel_close(rep.checks[1].ratio, 0.065630904367791891, 1e-12));
  CHECK(rel_close(rep.checks[2].ratio, 0.303125, 1e-12));
  CHECK(rel_close(rep.checks[3].ratio, 0.84210526315789474, 1e-12));
  for (const auto& c : rep.checks) CHECK(c.ratio < 1.0);
  CHECK_FALSE(rep.any_fail());
  CHECK(rep.checks[0].flag == Flag::warn);
  CHECK(rep.checks[2].flag == Flag::pass);
}

TEST_CASE("hierarchy flags at the boundaries") {
  auto p = testing::table1_row1();
  p.g = p.kappa;
  CHECK(validate_hierarchy(p).checks[2].flag == Flag::warn);
  p.g = 1.01 * p.kappa;
  CHECK(validate_hierarchy(p).checks[2].flag == Flag::fail);
  p = testing::table1_row1();
  p.n_bar = 2.0 / (p.gamma * p.tau);
  CHECK(validate_hierarchy(p).checks[0].flag == Flag::fail);
  CHECK(flag_for_ratio(std::numeric_limits<double>::quiet_NaN()) == Flag::fail);
}

TEST_CASE("operating point conventions share N_ph and scale tau by 2 pi") {
  DimensionlessParams d{0.8278, 0.3034, 9.7067e-5, 1100.0, 0.0, 1e5};
  const double w = constants::two_pi * 3.8e6;
  const double g0 = constants::two_pi * 4.8;
  const auto a = operating_point(d, w, g0, 1064e-9, RateConvention::angular);
  const auto c = operating_point(d, w, g0, 1064e-9, RateConvention::cyclic);
  CHECK(rel_close(a.n_ph, c.n_ph, 1e-14));
  CHECK(rel_close(c.tau, constants::two_pi * a.tau, 1e-14));
  CHECK(rel_close(*a.power, constants::two_pi * *c.power, 1e-12));
  CHECK(rel_close(a.kappa, 0.8278 * w, 1e-14));
  CHECK_FALSE(operating_point(d, w, g0, std::nullopt).power.has_value());
}
