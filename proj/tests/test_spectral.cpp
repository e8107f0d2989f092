#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "mehtalab/spectral.hpp"

using namespace mehtalab;

namespace {

double normal_pdf(double x, double var) { return std::exp(-x * x / (2 * var)) / std::sqrt(2 * M_PI * var); }

double sum_squares(std::span<const double> l) {
  double s = 0;
  for (double x : l) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("eigenvalues: trace and determinant") {
  Stream s(1, 1, 0);
  for (std::size_t m : {2u, 4u, 7u}) {
    const SymMatrix a = sample_goe(EnsembleParams::goe(m, 1.0), s);
    const auto l = eigenvalues(a);
    const double sum = std::accumulate(l.begin(), l.end(), 0.0);
    const double prod = std::accumulate(l.begin(), l.end(), 1.0, std::multiplies<>());
    CHECK(sum == doctest::Approx(a.trace()).epsilon(1e-9));
    CHECK(prod == doctest::Approx(determinant(a.to_dense())).epsilon(1e-9));
  }
}

TEST_CASE("point measures") {
  const std::vector<double> pts{3.0, 1.0, 1.0 + 1e-12, 2.0};
  const auto mu = PointMeasure::from_points(pts, 2.0);
  CHECK(mu.total_mass() == 8.0);
  CHECK(mu.mass(0.5, 1.5) == 4.0);
  CHECK(mu.mass(2.0, 3.0) == 4.0);  // closed interval
  const auto merged = mu.merged(1e-9);
  CHECK(merged.size() == 3);
  CHECK(merged.atoms()[0].weight == 4.0);
  CHECK(merged.scaled(0.5).total_mass() == 4.0);
  CHECK(mu.matches(PointMeasure::from_points(std::vector<double>{1.0, 1.0, 2.0, 3.0}, 2.0), 1e-9));
  std::ostringstream out;
  write_csv(out, merged);
  CHECK(out.str().rfind("location,weight\n", 0) == 0);
}

TEST_CASE("spectral measure of diag(1, 1, 2) merges the repeated eigenvalue") {
  const std::vector<double> d{1.0, 1.0, 2.0};
  const SymMatrix a = SymMatrix::diagonal(d);
  const auto sigma = spectral_measure(a, default_degeneracy_tol(a));
  REQUIRE(sigma.size() == 2);
  CHECK(sigma.atoms()[0].weight == 2.0);
  CHECK(sigma.atoms()[1].location == doctest::Approx(2.0));
}

TEST_CASE("weyl formula: monte carlo and quadrature agree with E tr A^2 = m(m+1)v") {
  for (std::size_t m : {1u, 2u, 3u}) {
    const double v = 0.75;
    const double exact = m * (m + 1) * v;
    const auto q = weyl_rhs_quadrature(sum_squares, m, v);
    CHECK(q.value == doctest::Approx(exact).epsilon(1e-5));
    auto mc = weyl_expectation_mc(sum_squares, EnsembleParams::goe(m, v), 40000, McConfig{8});
    mc.reference = exact;
    CHECK(mc.pass());
  }
  // |det| has kinks on the hyperplanes l_i = 0.
  const auto abs_det = [](std::span<const double> l) { return std::abs(l[0] * l[1]); };
  const std::vector<double> kinks{0.0};
  const auto q = weyl_rhs_quadrature(abs_det, 2, 0.5, kinks, 1e-8);
  auto mc = weyl_expectation_mc(abs_det, EnsembleParams::goe(2, 0.5), 100000, McConfig{9});
  mc.reference = q.value;
  CHECK(mc.pass());
}

TEST_CASE("one-point correlation for n = 1 is the N(0, 2v) density") {
  const double v = 0.5;
  const auto rho = one_point_correlation(1, v, 200000, HistogramEstimator{}, McConfig{3});
  CHECK(std::abs(rho.trapezoid_integral() - 1.0) <= rho.tolerance);
  int bad = 0, tested = 0;
  for (std::size_t k = 0; k < rho.grid.size(); ++k) {
    if (std::abs(rho.grid[k]) > 2.5) continue;
    // Bin average of the exact density (midpoint rule plus curvature term).
    const double h = rho.bandwidth, x = rho.grid[k];
    const double exact = normal_pdf(x, 2 * v) * (1 + h * h / 24 * (x * x / (4 * v * v) - 1 / (2 * v)));
    ++tested;
    if (std::abs(rho.values[k] - exact) > 4 * rho.std_errors[k] + 1e-3) ++bad;
  }
  CHECK(tested > 20);
  CHECK(bad <= 1);
}

TEST_CASE("one-point correlation second moment equals (n + 1) v") {
  const std::size_t n = 4;
  const double v = 1.0;
  const auto rho = one_point_correlation(n, v, 50000, HistogramEstimator{}, McConfig{4});
  CHECK(rho.integral(-100, 100) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rho.integrate([](double x) { return x * x; }) == doctest::Approx((n + 1) * v).epsilon(0.02));
  const auto kern = one_point_correlation(n, v, 20000, KernelEstimator{0.2}, McConfig{4});
  CHECK(std::abs(kern.trapezoid_integral() - 1.0) <= kern.tolerance);
}

TEST_CASE("kernel estimate at a point is the smoothed density") {
  // For n = 1 the Gaussian-kernel estimate targets N(0, 2v + h^2) exactly.
  const double v = 0.5, h = 0.3, s2 = 2 * v + h * h;
  auto r0 = correlation_kernel_at(1, v, 0.4, h, 0, 200000, McConfig{5}, StreamTag::correlation);
  r0.reference = normal_pdf(0.4, s2);
  CHECK(r0.pass());
  auto r2 = correlation_kernel_at(1, v, 0.0, h, 2, 200000, McConfig{5}, StreamTag::correlation);
  r2.reference = -normal_pdf(0.0, s2) / s2;
  CHECK(r2.pass());
}

TEST_CASE("density csv layout") {
  const auto rho = one_point_correlation(2, 1.0, 2000, HistogramEstimator{0.5, 0.0}, McConfig{1});
  std::ostringstream out;
  write_csv(out, rho);
  CHECK(out.str().rfind("x,rho,stderr\n", 0) == 0);
}
