#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mehtalab/symspace.hpp"

using namespace mehtalab;

namespace {

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

SymMatrix random_sym(std::size_t m, Stream& s) {
  SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a.set(i, j, s.normal());
  return a;
}

double log_normal_pdf(double x, double var) { return -0.5 * std::log(2 * M_PI * var) - x * x / (2 * var); }

}  // namespace

TEST_CASE("packed storage is symmetric and round-trips through dense") {
  SymMatrix a(4);
  double k = 1;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) a.set(i, j, k++);
  CHECK(a.packed_size(4) == 10);
  CHECK(a(3, 1) == a(1, 3));
  const Matrix d = a.to_dense();
  CHECK(max_asymmetry(d) == 0.0);
  const SymMatrix b = SymMatrix::from_dense(d);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(b(i, j) == a(i, j));
  Matrix bad = d;
  bad(0, 1) += 1e-6;
  CHECK_THROWS_AS(SymMatrix::from_dense(bad), std::invalid_argument);
}

TEST_CASE("omega coordinates are an isometry, ell coordinates are the entries") {
  Stream s(1, 1, 0);
  const SymMatrix a = random_sym(5, s), b = random_sym(5, s);
  const auto wa = omega_coords(a), wb = omega_coords(b);
  double dot = 0;
  for (std::size_t k = 0; k < wa.size(); ++k) dot += wa[k] * wb[k];
  const double frob = trace(a.to_dense() * b.to_dense());
  CHECK(inner_product(a, b) == doctest::Approx(frob).epsilon(1e-13));
  CHECK(dot == doctest::Approx(frob).epsilon(1e-13));
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(trace(a.to_dense() * a.to_dense()))));
  const auto ell = ell_coords(a);
  const SymMatrix back = from_ell_coords(5, ell), back_w = from_omega_coords(5, wa);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(back(i, j) == a(i, j));
      CHECK(back_w(i, j) == doctest::Approx(a(i, j)).epsilon(1e-15));
    }
}

TEST_CASE("congruence by an orthogonal matrix preserves the inner product") {
  Stream s(2, 1, 0);
  const SymMatrix a = random_sym(4, s), b = random_sym(4, s);
  const Matrix q = sample_orthogonal(4, s);
  CHECK(max_abs(q.transpose() * q - Matrix::identity(4)) < 1e-12);
  CHECK(inner_product(congruence(a, q), congruence(b, q)) == doctest::Approx(inner_product(a, b)).epsilon(1e-12));
  const Matrix direct = q.transpose() * a.to_dense() * q;
  CHECK(max_abs(congruence(a, q).to_dense() - direct) < 1e-12);
}

TEST_CASE("ensemble parameters") {
  CHECK_THROWS_AS(EnsembleParams(3, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleParams(3, -1.0, 1.0), std::invalid_argument);  // mu + 2v = -1
  CHECK_NOTHROW(EnsembleParams(3, -0.5, 1.0));                          // mu + 2v = 0.5
  CHECK_THROWS_AS(EnsembleParams(0, 0.0, 1.0), std::invalid_argument);
  const EnsembleParams p(3, 0.7, 0.4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = k; l < 3; ++l) {
          const double expect = 0.7 * delta(i, j) * delta(k, l) + 0.4 * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
          CHECK(p.ell_covariance(i, j, k, l) == doctest::Approx(expect));
        }
  Stream s(1, 1, 0);
  CHECK_THROWS(sample_goe(p, s));
}

TEST_CASE("covariance audit passes for admissible parameters including negative u") {
  McConfig cfg{11, 2};
  for (const auto& p : {EnsembleParams(3, 0.0, 0.5), EnsembleParams(2, 1.0, 1.0), EnsembleParams(3, -0.5, 1.0)}) {
    const auto checks = covariance_audit(p, 60000, cfg);
    const std::size_t d = SymMatrix::packed_size(p.m());
    CHECK(checks.size() == d * (d + 1) / 2);
    for (const auto& c : checks) CHECK(std::abs(c.z_score()) <= 4.5);
  }
}

TEST_CASE("a shifted identity component shows up on the diagonal") {
  // GOE samples audited against u = 1 must fail on E[l_ii l_jj].
  const auto checks = covariance_audit(EnsembleParams(2, 0.0, 1.0), 100000, McConfig{3});
  double worst = 0;
  for (const auto& c : checks) {
    const double wrong = c.expected + (c.i == c.j && c.k == c.l ? 1.0 : 0.0);
    worst = std::max(worst, std::abs(c.empirical - wrong) / c.std_error);
  }
  CHECK(worst > 10);
}

TEST_CASE("GOE log density equals a product of N(0, 2v) in omega coordinates") {
  Stream s(4, 1, 0);
  for (std::size_t m : {1u, 2u, 4u}) {
    const SymMatrix a = random_sym(m, s);
    const double v = 0.7;
    double expect = 0;
    for (double w : omega_coords(a)) expect += log_normal_pdf(w, 2 * v);
    CHECK(goe_log_density(a, v) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("matrix file round trip and validation") {
  Stream s(5, 1, 0);
  const SymMatrix a = random_sym(3, s);
  std::stringstream io;
  write_matrix(io, a);
  const SymMatrix b = read_matrix(io);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(b(i, j) == a(i, j));
  std::stringstream asym("2\n1 0.5\n0.4 2\n");
  CHECK_THROWS(read_matrix(asym));
  std::stringstream short_file("2\n1 0\n0\n");
  CHECK_THROWS(read_matrix(short_file));
  CHECK_THROWS(read_matrix_file("/nonexistent/matrix.txt"));
}
