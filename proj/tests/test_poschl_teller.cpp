#include <cmath>
#include <numbers>

#include <doctest.h>

#include "oracles.hpp"
#include "solvstate/errors.hpp"
#include "solvstate/poschl_teller.hpp"

using namespace solvstate;

namespace {

const pt::PTParams kSettings[] = {{2.0, 2.0, 1.0}, {1.2, 3.4, 1.0}, {2.5, 1.5, 0.7}};

oracle::Well well(const pt::PTParams& p) { return {p.kappa, p.kappa_prime, p.a}; }

}  // namespace

TEST_SUITE("poschl_teller") {
  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((pt::PTParams{0.4, 2.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((pt::PTParams{2.0, 2.0, 0.0}.validate()), DomainError);
    CHECK_NOTHROW((pt::PTParams{0.6, 0.6, 1.0}.validate()));
  }

  TEST_CASE("potential and superpotential") {
    for (const auto& p : kSettings) {
      const double L = p.length();
      for (double f : {0.05, 0.3, 0.5, 0.77}) {
        const double x = f * L;
        CHECK(pt::potential(p, x) == doctest::Approx(oracle::well_potential(well(p), x)).epsilon(1e-13));
        const double W = pt::superpotential(p, x);
        CHECK(pt::potential(p, x) == doctest::Approx(W * W - pt::superpotential_derivative(p, x)).epsilon(1e-12));
        const double h = 1e-5;
        const double fd = (pt::superpotential(p, x + h) - pt::superpotential(p, x - h)) / (2 * h);
        CHECK(pt::superpotential_derivative(p, x) == doctest::Approx(fd).epsilon(1e-7));
      }
      CHECK_THROWS_AS(pt::potential(p, 0.0), DomainError);
      CHECK_THROWS_AS(pt::potential(p, L * 1.01), DomainError);
      CHECK(pt::potential(p, 1e-6 * L) > 1e6);
      CHECK(pt::superpotential(p, 1e-6 * L) < -1e5);
    }
    const pt::PTParams sym{2.0, 2.0, 1.0};
    CHECK(std::fabs(pt::superpotential(sym, sym.length() / 2)) < 1e-15);
    CHECK(pt::potential(sym, sym.length() / 2) == doctest::Approx(-2.0).epsilon(1e-14));
  }

  TEST_CASE("eigenfunctions") {
    for (const auto& p : kSettings) {
      const double L = p.length();
      for (std::size_t n : {0u, 3u, 7u}) {
        CHECK(pt::eigenfunction(p, n, 0.0) == 0.0);
        CHECK(std::fabs(pt::eigenfunction(p, n, L)) < 1e-12);
        for (double f : {0.1, 0.45, 0.9})
          CHECK(pt::eigenfunction(p, n, f * L) == doctest::Approx(oracle::psi(well(p), n, f * L)).epsilon(1e-11));
        CHECK(pt::partner_eigenfunction(p, n, 0.3 * L) ==
              doctest::Approx(oracle::psi_partner(well(p), n, 0.3 * L)).epsilon(1e-11));
      }
      CHECK(pt::level_energy(p, 3) == doctest::Approx(3 * (3 + p.lambda()) / (p.a * p.a)));
    }
  }

  TEST_CASE("orthonormality by independent quadrature") {
    for (const auto& p : {kSettings[0], kSettings[1]}) {
      double worst = 0, worst_partner = 0;
      for (std::size_t n = 0; n <= 8; ++n)
        for (std::size_t m = n; m <= 8; ++m) {
          const double g = oracle::integrate(
              [&](double x) { return pt::eigenfunction(p, n, x) * pt::eigenfunction(p, m, x); }, 0, p.length());
          worst = std::max(worst, std::fabs(g - (n == m ? 1.0 : 0.0)));
          if (n <= 6 && m <= 6) {
            const double h = oracle::integrate(
                [&](double x) { return pt::partner_eigenfunction(p, n, x) * pt::partner_eigenfunction(p, m, x); }, 0,
                p.length());
            worst_partner = std::max(worst_partner, std::fabs(h - (n == m ? 1.0 : 0.0)));
          }
        }
      CHECK(worst < 1e-8);
      CHECK(worst_partner < 1e-8);
    }
  }

  TEST_CASE("Schroedinger residual by finite differences") {
    for (const auto& p : {kSettings[0], kSettings[1]}) {
      double worst = 0;
      const double L = p.length();
      for (std::size_t n = 0; n <= 6; ++n)
        for (int i = 1; i < 40; ++i) {
          const double x = 0.05 * L + 0.9 * L * i / 40.0;
          auto f = [&](double y) { return pt::eigenfunction(p, n, y); };
          const double r = -oracle::d2(f, x, 1e-3) + pt::potential(p, x) * f(x) - pt::level_energy(p, n) * f(x);
          worst = std::max(worst, std::fabs(r));
        }
      CHECK(worst < 1e-6);
    }
  }

  TEST_CASE("A- and A+ intertwine the partners") {
    for (const auto& p : {kSettings[0], kSettings[1]})
      for (std::size_t n = 0; n <= 5; ++n) {
        const double E = pt::level_energy(p, n + 1);
        const double down = oracle::integrate(
            [&](double x) { return pt::partner_eigenfunction(p, n, x) * pt::lowered_eigenfunction(p, n + 1, x); }, 0,
            p.length());
        CHECK(std::fabs(std::fabs(down) / std::sqrt(E) - 1) < 1e-7);
        const double up = oracle::integrate(
            [&](double x) { return pt::eigenfunction(p, n + 1, x) * pt::raised_partner(p, n, x); }, 0, p.length());
        CHECK(std::fabs(std::fabs(up) / std::sqrt(E) - 1) < 1e-7);
        CHECK(pt::lowered_eigenfunction(p, 0, 0.37 * p.length()) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
      }
  }

  TEST_CASE("U matrix: double sum against quadrature") {
    for (const auto& p : {kSettings[0], kSettings[1]}) {
      double worst = 0;
      for (std::size_t n = 0; n <= 6; ++n)
        for (std::size_t m = 0; m <= 6; ++m) {
          const auto u = pt::u_matrix_element(p, n, m);
          const double q = oracle::integrate(
              [&](double x) { return oracle::psi(well(p), n, x) * oracle::psi_partner(well(p), m, x); }, 0, p.length());
          if (!u.flagged) worst = std::max(worst, std::fabs(u.value - q));
          else CHECK(std::fabs(q) < 1e-8);
        }
      CHECK(worst < 1e-8);
      CHECK(pt::u_matrix_element(p, 0, 0).value > 0);
    }
  }

  TEST_CASE("U columns approach unit norm") {
    for (const auto& p : {kSettings[0], kSettings[1]})
      for (std::size_t m = 0; m <= 4; ++m) {
        double sum = 0, prev = 1;
        for (std::size_t n = 0; n <= 14; ++n) {
          const double u = pt::u_matrix_element(p, n, m).value;
          sum += u * u;
          const double gap = std::fabs(1 - sum);
          CHECK(gap <= prev + 1e-13);
          prev = gap;
        }
        CHECK(prev < 1e-2);
      }
  }

  TEST_CASE("ladder actions") {
    const auto l0 = pt::ladder_action_pt(4, 0, 0.3);
    CHECK(l0.lower.magnitude == 0.0);
    for (std::size_t n : {1u, 4u}) {
      const auto l = pt::ladder_action_pt(4, n, 0.3);
      CHECK(l.raise.magnitude == doctest::Approx(std::sqrt((n + 1.0) * (n + 5.0))));
      CHECK(l.lower.magnitude == doctest::Approx(std::sqrt(n * (n + 4.0))));
      CHECK(std::abs(l.raise.phase - std::polar(1.0, -0.3 * (2.0 * n + 5))) < 1e-14);
      CHECK(std::abs(l.lower.phase - std::polar(1.0, 0.3 * (2.0 * n + 3))) < 1e-14);
    }
  }

  TEST_CASE("partner Hamiltonians are isospectral") {
    const pt::PTParams p{2.0, 2.0, 1.0};
    const auto minus = oracle::fd_levels([&](double x) { return pt::potential(p, x); }, p.length(), 3000, 5);
    const pt::PTParams q{3.0, 3.0, 1.0};
    const double shift = (std::pow(p.lambda() + 2, 2) - std::pow(p.lambda(), 2)) / (4 * p.a * p.a);
    const auto plus = oracle::fd_levels([&](double x) { return pt::potential(q, x) + shift; }, p.length(), 3000, 4);
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(std::fabs(plus[n] - pt::level_energy(p, n + 1)) < 1e-3 * pt::level_energy(p, n + 1));
      if (n > 0) CHECK(std::fabs(minus[n] - pt::level_energy(p, n)) < 1e-3 * pt::level_energy(p, n));
    }
    CHECK(std::fabs(minus[0]) < 1e-2);
  }
}
