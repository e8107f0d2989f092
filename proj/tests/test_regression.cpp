#include <doctest.h>

#include <cmath>

#include "mehtalab/regression.hpp"

using namespace mehtalab;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::initializer_list<double> v) {
  Matrix m(r, c);
  std::size_t k = 0;
  for (double x : v) m(k / c, k % c) = x, ++k;
  return m;
}

}  // namespace

TEST_CASE("scalar regression against the textbook formulas") {
  const double sx = 2.0, sy = 3.0, cxy = 1.2;
  const JointGaussian j(GaussianVector({1.0}, mat(1, 1, {sx})), GaussianVector({-1.0}, mat(1, 1, {sy})),
                        mat(1, 1, {cxy}));
  const auto r = regress(j);
  CHECK(r.op(0, 0) == doctest::Approx(cxy / sx));
  CHECK(r.residual_cov(0, 0) == doctest::Approx(sy - cxy * cxy / sx));
  CHECK(r.offset[0] == doctest::Approx(-1.0 - cxy / sx * 1.0));
  const std::vector<double> x{2.5};
  CHECK(r.conditional_mean(x)[0] == doctest::Approx(-1.0 + cxy / sx * 1.5));
  CHECK(total_variance_residual(j, r) < 1e-14);
}

TEST_CASE("invalid or degenerate Gaussians") {
  CHECK_THROWS_AS(GaussianVector::centered(mat(2, 2, {1, 0.5, 0.4, 1})), std::invalid_argument);
  CHECK_THROWS_AS(GaussianVector::centered(mat(2, 2, {1, 2, 2, 1})), std::invalid_argument);
  const auto deg = GaussianVector::centered(mat(2, 2, {1, 1, 1, 1}));
  CHECK_FALSE(deg.nondegenerate());
  const JointGaussian j(deg, GaussianVector::centered(mat(1, 1, {1})), mat(1, 2, {0.1, 0.1}));
  CHECK_THROWS_AS(regress(j), DegenerateConditioningError);
}

TEST_CASE("north-pole Hessian regression: R(w) = -2 w_0 1 and Delta = GOE_m^v") {
  for (const auto& [m, v] : {std::pair{2ul, 1.0}, std::pair{3ul, 0.5}, std::pair{5ul, 1.7}}) {
    const JointGaussian pair = hessian_regression_pair(m, v);
    const auto r = regress(pair);
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j, ++p)
        for (std::size_t k = 0; k <= m; ++k)
          CHECK(r.op(p, k) == doctest::Approx(i == j && k == 0 ? -2.0 : 0.0).scale(1.0));
    const Matrix s = omega_scaling(m);
    const auto r_omega = regress(pair.map_y(s));
    CHECK(max_abs(r_omega.residual_cov - 2 * v * Matrix::identity(s.rows())) < 1e-12);
    CHECK(total_variance_residual(pair, r) < 1e-10);
    CHECK(total_variance_residual(pair.map_y(s), r_omega) < 1e-10);
  }
}

TEST_CASE("analytic pair matches the sphere-side sample moments") {
  const std::size_t m = 2;
  const double v = 0.8;
  const JointGaussian pair = hessian_regression_pair(m, v);
  const auto [ws, hs] = sample_hessian_pairs(m, v, 100000, McConfig{21, 2});
  const auto emp = empirical_correlator(ws, hs);
  const auto close = [](const Matrix& est, const Matrix& ref, const Matrix& se) {
    for (std::size_t i = 0; i < est.rows(); ++i)
      for (std::size_t j = 0; j < est.cols(); ++j) CHECK(std::abs(est(i, j) - ref(i, j)) <= 4.5 * se(i, j) + 1e-12);
  };
  close(emp.joint.x().covariance(), pair.x().covariance(), emp.x_cov_std_error);
  close(emp.joint.y().covariance(), pair.y().covariance(), emp.y_cov_std_error);
  close(emp.joint.cross(), pair.cross(), emp.cross_std_error);
}

TEST_CASE("conditional samples have the conditional mean and covariance") {
  const JointGaussian j(GaussianVector::centered(mat(2, 2, {2, 0.3, 0.3, 1})),
                        GaussianVector::centered(mat(2, 2, {1.5, 0.2, 0.2, 1})), mat(2, 2, {0.5, 0.1, -0.2, 0.4}));
  const auto r = regress(j);
  const std::vector<double> x{0.7, -1.1};
  const auto mean = r.conditional_mean(x);
  const int n = 100000;
  Matrix zs(n, 2), dummy(n, 1);
  Stream s(3, 6, 0);
  for (int k = 0; k < n; ++k) {
    const auto z = conditional_sample(r, x, s);
    zs(k, 0) = z[0];
    zs(k, 1) = z[1];
  }
  const auto emp = empirical_correlator(dummy, zs);
  for (std::size_t a = 0; a < 2; ++a) {
    double avg = 0;
    for (int k = 0; k < n; ++k) avg += zs(k, a);
    avg /= n;
    CHECK(std::abs(avg - mean[a]) < 4.5 * std::sqrt(r.residual_cov(a, a) / n));
    for (std::size_t b = 0; b < 2; ++b)
      CHECK(std::abs(emp.joint.y().covariance()(a, b) - r.residual_cov(a, b)) <= 4.5 * emp.y_cov_std_error(a, b));
  }
}

TEST_CASE("empirical correlator on a hand-computed sample") {
  const Matrix xs = mat(3, 1, {1, 2, 3});
  const Matrix ys = mat(3, 1, {2, 4, 7});
  const auto emp = empirical_correlator(xs, ys);
  CHECK(emp.joint.x().covariance()(0, 0) == doctest::Approx(1.0));
  CHECK(emp.joint.cross()(0, 0) == doctest::Approx(2.5));
  CHECK(emp.joint.y().covariance()(0, 0) == doctest::Approx(19.0 / 3.0));
}
