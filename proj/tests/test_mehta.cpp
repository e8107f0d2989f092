#include <doctest.h>

#include <cmath>
#include <limits>

#include "mehtalab/mehta.hpp"

using namespace mehtalab;

namespace {

// Selberg-form oracle: Z_m = (2 pi)^{m/2} prod_{j=1}^m Gamma(1 + j/2) / Gamma(3/2).
double selberg(std::size_t m) {
  double z = std::pow(2 * M_PI, m / 2.0);
  for (std::size_t j = 1; j <= m; ++j) z *= std::tgamma(1 + j / 2.0) / std::tgamma(1.5);
  return z;
}

// E|X - t| for X ~ N(0, s2).
double abs_moment(double t, double s2) {
  const double s = std::sqrt(s2);
  const double phi = std::exp(-t * t / (2 * s2)) / std::sqrt(2 * M_PI);
  return t * std::erf(t / (s * std::sqrt(2.0))) + 2 * s * phi;
}

}  // namespace

TEST_CASE("log gamma against the standard library") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0, 55.5, 170.2}) {
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
    if (x < 170) CHECK(gamma_fn(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-13));
  }
}

TEST_CASE("sphere volumes") {
  CHECK(sphere_volume(1) == doctest::Approx(2 * M_PI));
  CHECK(sphere_volume(2) == doctest::Approx(4 * M_PI));
  CHECK(sphere_volume(3) == doctest::Approx(2 * M_PI * M_PI));
}

TEST_CASE("closed form against an independent product formula") {
  CHECK(mehta_closed_form(1) == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-15));
  CHECK(mehta_closed_form(2) == doctest::Approx(4 * std::sqrt(M_PI)).epsilon(1e-15));
  for (std::size_t m = 1; m <= 25; ++m) CHECK(mehta_closed_form(m) == doctest::Approx(selberg(m)).epsilon(1e-12));
  CHECK(log_mehta_closed_form(60) == doctest::Approx(std::log(selberg(30)) + [] {
          double s = 0;
          for (std::size_t j = 31; j <= 60; ++j) s += 0.5 * std::log(2 * M_PI) + std::lgamma(1 + j / 2.0) - std::lgamma(1.5);
          return s;
        }()).epsilon(1e-12));
}

TEST_CASE("scaled closed form follows from the substitution lambda -> sqrt(2v) lambda") {
  for (std::size_t m : {1u, 2u, 4u})
    for (double v : {0.5, 0.3, 2.0})
      CHECK(mehta_closed_form(m, v) ==
            doctest::Approx(std::pow(2 * v, m / 2.0 + m * (m - 1) / 4.0) * mehta_closed_form(m)).epsilon(1e-13));
}

TEST_CASE("ratio and its misprinted variant") {
  for (std::size_t m = 1; m <= 20; ++m) {
    CHECK(mehta_ratio(m) == doctest::Approx(selberg(m + 1) / selberg(m)).epsilon(1e-12));
    CHECK(std::abs(2 * std::tgamma((m + 3) / 2.0) - selberg(m + 1) / selberg(m)) > 0.1);
  }
}

TEST_CASE("quadrature of the defining integral") {
  CHECK(mehta_quadrature(1).value == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-8));
  CHECK(std::abs(mehta_quadrature(2).value - 4 * std::sqrt(M_PI)) < 2e-6);
  CHECK_THROWS(mehta_quadrature(4));
}

TEST_CASE("monte carlo Mehta integral") {
  for (std::size_t m : {2u, 3u}) {
    const auto r = mehta_mc(m, 100000, McConfig{5, 2});
    CHECK(*r.reference == doctest::Approx(selberg(m)));
    CHECK(r.pass());
  }
}

TEST_CASE("E|det(A - c)| for m = 1 is a folded normal moment") {
  for (double c : {0.0, 0.8, -2.0}) {
    auto r = exp_abs_det_mc(1, 0.5, c, 100000, McConfig{6}, StreamTag::abs_det);
    r.reference = abs_moment(c, 1.0);
    CHECK(r.pass());
  }
}

TEST_CASE("Kac-Rice density for m = 1 in closed form") {
  const double v = 0.7;
  for (double t : {0.0, 1.0, -2.5}) {
    auto r = kacrice_density(1, t, v, 100000, McConfig{7});
    r.reference = std::pow(2 * M_PI * v, -0.5) * 2 * M_PI * abs_moment(t, 2 * v);
    CHECK(r.pass());
  }
}

TEST_CASE("detmoment identity, both samplers") {
  for (auto sampler : {DetmomentSampler::direct, DetmomentSampler::sphere}) {
    const auto r = detmoment_identity_check(2, 0.5, 100000, McConfig{8}, sampler);
    CHECK(*r.reference == doctest::Approx(mehta_ratio(2)).epsilon(1e-12));  // (2v)^{..} = 1 at v = 1/2
    CHECK(r.pass());
  }
}

TEST_CASE("Kac-Rice against eigenvalue counts") {
  const double inf = std::numeric_limits<double>::infinity();
  const auto whole = kacrice_vs_empirical(1, 1.0, -inf, inf, 40000, McConfig{9});
  CHECK(whole.empirical.estimate == 4.0);
  CHECK(whole.empirical.std_error == 0.0);
  CHECK(whole.pass());
  const auto part = kacrice_vs_empirical(2, 0.5, -0.5, 1.5, 40000, McConfig{9});
  CHECK(part.pass());
}

TEST_CASE("end-to-end reproduction, short run") {
  const auto rows = reproduce_zm(2, 100000, McConfig{10, 2});
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.z_next.pass());
    CHECK(row.balance.pass());
    CHECK(*row.z_next.reference == doctest::Approx(selberg(row.m + 1)));
  }
}

TEST_CASE("pair z") {
  EstimatorResult a, b;
  a.estimate = 1.0;
  a.std_error = 0.3;
  b.estimate = 2.0;
  b.std_error = 0.4;
  CHECK(pair_z(a, b) == doctest::Approx(-2.0));
  CHECK(pair_z(b, a) == doctest::Approx(2.0));
}
