#include <doctest.h>

#include <cmath>

#include "mehtalab/quadrature.hpp"

using namespace mehtalab;

TEST_CASE("gaussian integral") {
  const auto r = integrate([](double x) { return std::exp(-x * x); }, -10, 10, 1e-12);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("kinks are handled with breakpoints") {
  const std::vector<double> bp{0.3};
  const auto r = integrate([](double x) { return std::abs(x - 0.3); }, -1, 1, bp, 1e-12, 0);
  CHECK(r.value == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7).epsilon(1e-12));
  const auto plain = integrate([](double x) { return std::sqrt(std::abs(x)); }, -1, 1, 1e-9);
  CHECK(plain.value == doctest::Approx(4.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("symmetric nested integration over the ordered chamber") {
  // Symmetric integrand: the chamber result times m! is the full integral.
  const auto f = [](std::span<const double> x) {
    double s = 0;
    for (double t : x) s += t * t;
    return std::exp(-s / 2);
  };
  for (std::size_t m : {1u, 2u, 3u}) {
    const auto r = integrate_symmetric(f, m, 9.0, {}, 1e-8);
    CHECK(r.value == doctest::Approx(std::pow(2 * M_PI, m / 2.0)).epsilon(1e-7));
  }
  const auto vand = [](std::span<const double> x) { return std::abs(x[0] - x[1]) * std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2); };
  CHECK(integrate_symmetric(vand, 2, 9.0, {}, 1e-9).value == doctest::Approx(4 * std::sqrt(M_PI)).epsilon(1e-8));
}
