#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "solvstate/errors.hpp"
#include "solvstate/spectrum.hpp"

using namespace solvstate;

TEST_SUITE("spectrum") {
  TEST_CASE("energies of the built-in kinds") {
    const Spectrum pt = Spectrum::poschl_teller(2, 2), ho = Spectrum::harmonic();
    CHECK(pt.energy(0) == 0.0);
    CHECK(ho.energy(0) == 0.0);
    CHECK(pt.energy(1) == 5.0);
    CHECK(ho.energy(7) == 7.0);
    CHECK(Spectrum::poschl_teller(1.2, 3.4).energy(3) == doctest::Approx(3 * (3 + 4.6)));
    CHECK(pt.lambda() == 4.0);
    CHECK_FALSE(pt.max_level().has_value());
  }

  TEST_CASE("tables and rules") {
    const Spectrum t = Spectrum::from_table({0, 1, 3, 7});
    CHECK(t.energy(2) == 3.0);
    CHECK(t.max_level() == 3u);
    CHECK_THROWS_AS(t.energy(4), OutOfRangeError);
    CHECK_NOTHROW(t.check_increasing(3));

    CHECK_THROWS_AS(Spectrum::from_table({1, 2}).check_increasing(1), DomainError);
    CHECK_THROWS_AS(Spectrum::from_table({0, 2, 2}).check_increasing(2), DomainError);

    const Spectrum r = Spectrum::from_rule([](std::size_t n) { return double(n * n); }, "squares");
    CHECK(r.energy(6) == 36.0);
    CHECK(r.name() == "squares");
  }

  TEST_CASE("factorial products") {
    const Spectrum pt = Spectrum::poschl_teller_lambda(4);
    CHECK(e0_product(pt, 0).value() == 1.0);
    CHECK(e0_product(pt, 2).value() == doctest::Approx(60.0).epsilon(1e-15));
    CHECK(ek_moment(pt, 1, 1).value() == doctest::Approx(25.0 / 60).epsilon(1e-15));
    CHECK(ek_moment(pt, 3, 0).value() == doctest::Approx(1.0 / e0_product(pt, 3).value()).epsilon(1e-15));

    const auto e = oracle::pt_energy(4);
    for (std::size_t k : {0u, 2u, 5u})
      for (std::size_t n : {0u, 4u, 30u}) {
        const double ref = std::log(double(oracle::ek(e, k, n)));
        CHECK(std::fabs(ek_moment(pt, k, n).log_abs - ref) < 1e-12 * std::max(1.0, std::fabs(ref)));
      }
    for (std::size_t n : {0u, 9u, 25u}) CHECK(ek_moment(pt, 0, n).log_abs == doctest::Approx(e0_product(pt, n).log_abs));

    const FactorialMoments fm(pt, 40);
    CHECK(fm.n_max() == 40);
    CHECK(fm.log_ek(2, 10) == doctest::Approx(ek_moment(pt, 2, 10).log_abs).epsilon(1e-14));
  }

  TEST_CASE("radius of convergence") {
    for (std::size_t k : {0u, 1u, 4u}) CHECK(radius(Spectrum::poschl_teller_lambda(4), k, 200).status == Radius::Status::Infinite);
    CHECK(radius(Spectrum::harmonic(), 0, 200).status == Radius::Status::Infinite);

    const Spectrum bounded = Spectrum::from_rule([](std::size_t n) { return 1.0 - std::ldexp(1.0, -int(n)); }, "bounded");
    const Radius r = radius(bounded, 0, 200);
    CHECK(r.status == Radius::Status::Finite);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-8));

    const Spectrum wobble = Spectrum::from_rule(
        [](std::size_t n) { return n == 0 ? 0.0 : double(n) + ((n % 2) ? 0.0 : 0.9); }, "wobble");
    CHECK(radius(wobble, 1, 60).status == Radius::Status::Undetermined);
  }
}
