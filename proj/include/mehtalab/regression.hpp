#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "mehtalab/estimator.hpp"
#include "mehtalab/linalg.hpp"
#include "mehtalab/rng.hpp"

namespace mehtalab {

// Gaussian vector in orthonormal coordinates.
class GaussianVector {
 public:
  GaussianVector(std::vector<double> mean, Matrix covariance);
  static GaussianVector centered(Matrix covariance);

  std::size_t dim() const { return mean_.size(); }
  std::span<const double> mean() const { return mean_; }
  const Matrix& covariance() const { return covariance_; }
  double smallest_eigenvalue() const { return smallest_eigenvalue_; }
  // 1e-10 * trace / dim.
  double degeneracy_threshold() const;
  bool nondegenerate() const { return smallest_eigenvalue_ > degeneracy_threshold(); }

 private:
  std::vector<double> mean_;
  Matrix covariance_;
  double smallest_eigenvalue_;
};

// Jointly Gaussian (X, Y); `cross` is the correlator C_{Y,X} (dim_y x dim_x).
class JointGaussian {
 public:
  JointGaussian(GaussianVector x, GaussianVector y, Matrix cross);

  const GaussianVector& x() const { return x_; }
  const GaussianVector& y() const { return y_; }
  const Matrix& cross() const { return cross_; }
  // C_{X,Y}, the adjoint of C_{Y,X}.
  Matrix cross_adjoint() const { return cross_.transpose(); }
  // [[Var X, C_{X,Y}], [C_{Y,X}, Var Y]].
  Matrix block_covariance() const;

  // Law of (X, T Y).
  JointGaussian map_y(const Matrix& t) const;

 private:
  GaussianVector x_;
  GaussianVector y_;
  Matrix cross_;
};

class DegenerateConditioningError : public std::domain_error {
 public:
  explicit DegenerateConditioningError(double smallest_eigenvalue);
  double smallest_eigenvalue() const { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

struct RegressionResult {
  Matrix op;                   // R_{Y,X} = C_{Y,X} Var[X]^{-1}
  Matrix residual_cov;         // Delta = Var[Y] - C_{Y,X} Var[X]^{-1} C_{X,Y}
  std::vector<double> offset;  // m(Y) - R m(X)
  Matrix residual_root;        // symmetric square root of Delta

  // E[Y | X = x] = offset + R x.
  std::vector<double> conditional_mean(std::span<const double> x) const;
};

void to_json(nlohmann::json& j, const RegressionResult& r);

// Var[X]^{-1} is applied through a Cholesky solve; throws
// DegenerateConditioningError when X is degenerate.
RegressionResult regress(const JointGaussian& joint);

// max |Var[Y] - Delta - C_{Y,X} Var[X]^{-1} C_{X,Y}|, with the inverse
// formed independently of regress() (eigendecomposition of Var[X]).
double total_variance_residual(const JointGaussian& joint, const RegressionResult& r);

// Z + E[Y | X = x] with Z ~ N(0, Delta).
std::vector<double> conditional_sample(const RegressionResult& r, std::span<const double> x, Stream& rng);

// Empirical moments of paired samples (rows of xs and ys), with the standard
// errors of each covariance entry.
struct EmpiricalJoint {
  JointGaussian joint;
  Matrix x_cov_std_error;
  Matrix y_cov_std_error;
  Matrix cross_std_error;
};

EmpiricalJoint empirical_correlator(const Matrix& xs, const Matrix& ys);

// Analytic law of (W, ell-coords of Hess_A(n)) for A in GOE_{m+1}^v, where
// W = (Phi_A(n), grad Phi_A(n)) = (a_00 / 2, a_01, ..., a_0m).
JointGaussian hessian_regression_pair(std::size_t m, double v);

// Diagonal map from ell- to omega-coordinates of Sym(R^m).
Matrix omega_scaling(std::size_t m);

// One draw of (W, ell-coords of Hess_A(n)) from A in GOE_{m+1}^v.
void sample_hessian_pair(std::size_t m, double v, Stream& rng, std::span<double> w, std::span<double> hess_ell);

// n draws of the pair, rows of the returned matrices.
std::pair<Matrix, Matrix> sample_hessian_pairs(std::size_t m, double v, std::uint64_t n, const McConfig& cfg);

}  // namespace mehtalab
