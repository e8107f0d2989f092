#include "mehtalab/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mehtalab/spherefield.hpp"
#include "mehtalab/symspace.hpp"

namespace mehtalab {

namespace {

double scale_of(const Matrix& c) { return std::max(1.0, max_abs(c)); }

}  // namespace

GaussianVector::GaussianVector(std::vector<double> mean, Matrix covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  if (mean_.empty()) throw std::invalid_argument("GaussianVector: dimension must be positive");
  if (covariance_.rows() != mean_.size() || covariance_.cols() != mean_.size())
    throw std::invalid_argument("GaussianVector: covariance shape does not match the mean");
  if (max_asymmetry(covariance_) > 1e-12 * scale_of(covariance_))
    throw std::invalid_argument("GaussianVector: covariance is not symmetric");
  smallest_eigenvalue_ = symmetric_eigen(covariance_).values.front();
  if (smallest_eigenvalue_ < -1e-10 * scale_of(covariance_)) {
    std::ostringstream msg;
    msg << "GaussianVector: covariance is not PSD (smallest eigenvalue " << smallest_eigenvalue_ << ")";
    throw std::invalid_argument(msg.str());
  }
}

GaussianVector GaussianVector::centered(Matrix covariance) {
  std::vector<double> zero(covariance.rows(), 0.0);
  return GaussianVector(std::move(zero), std::move(covariance));
}

double GaussianVector::degeneracy_threshold() const {
  return 1e-10 * trace(covariance_) / static_cast<double>(dim());
}

JointGaussian::JointGaussian(GaussianVector x, GaussianVector y, Matrix cross)
    : x_(std::move(x)), y_(std::move(y)), cross_(std::move(cross)) {
  if (cross_.rows() != y_.dim() || cross_.cols() != x_.dim())
    throw std::invalid_argument("JointGaussian: correlator must be dim_y x dim_x");
  const Matrix block = block_covariance();
  const double lowest = symmetric_eigen(block).values.front();
  if (lowest < -1e-10 * scale_of(block)) {
    std::ostringstream msg;
    msg << "JointGaussian: block covariance is not PSD (smallest eigenvalue " << lowest << ")";
    throw std::invalid_argument(msg.str());
  }
}

Matrix JointGaussian::block_covariance() const {
  const std::size_t dx = x_.dim(), dy = y_.dim();
  Matrix b(dx + dy, dx + dy);
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dx; ++j) b(i, j) = x_.covariance()(i, j);
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t j = 0; j < dy; ++j) b(dx + i, dx + j) = y_.covariance()(i, j);
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t j = 0; j < dx; ++j) b(dx + i, j) = b(j, dx + i) = cross_(i, j);
  return b;
}

JointGaussian JointGaussian::map_y(const Matrix& t) const {
  std::vector<double> mean = t * y_.mean();
  Matrix cov = t * y_.covariance() * t.transpose();
  for (std::size_t i = 0; i < cov.rows(); ++i)
    for (std::size_t j = i + 1; j < cov.cols(); ++j) cov(i, j) = cov(j, i) = 0.5 * (cov(i, j) + cov(j, i));
  return JointGaussian(x_, GaussianVector(std::move(mean), std::move(cov)), t * cross_);
}

DegenerateConditioningError::DegenerateConditioningError(double smallest_eigenvalue)
    : std::domain_error("regression: conditioning vector is degenerate (smallest covariance eigenvalue " +
                        std::to_string(smallest_eigenvalue) + ")"),
      smallest_eigenvalue_(smallest_eigenvalue) {}

std::vector<double> RegressionResult::conditional_mean(std::span<const double> x) const {
  auto y = op * x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += offset[i];
  return y;
}

void to_json(nlohmann::json& j, const RegressionResult& r) {
  j = nlohmann::json{{"R", r.op}, {"Delta", r.residual_cov}, {"offset", r.offset}};
}

RegressionResult regress(const JointGaussian& joint) {
  const auto& x = joint.x();
  const auto& y = joint.y();
  if (!x.nondegenerate()) throw DegenerateConditioningError(x.smallest_eigenvalue());
  const auto lower = cholesky(x.covariance());
  if (!lower) throw DegenerateConditioningError(x.smallest_eigenvalue());

  const Matrix cxy = joint.cross_adjoint();
  // Var[X]^{-1} C_{X,Y} = R^T.
  const Matrix rt = cholesky_solve(*lower, cxy);
  RegressionResult r;
  r.op = rt.transpose();
  Matrix explained = joint.cross() * rt;
  r.residual_cov = y.covariance() - explained;
  for (std::size_t i = 0; i < r.residual_cov.rows(); ++i)
    for (std::size_t j = i + 1; j < r.residual_cov.cols(); ++j)
      r.residual_cov(i, j) = r.residual_cov(j, i) = 0.5 * (r.residual_cov(i, j) + r.residual_cov(j, i));
  const auto shift = r.op * x.mean();
  r.offset.resize(y.dim());
  for (std::size_t i = 0; i < y.dim(); ++i) r.offset[i] = y.mean()[i] - shift[i];
  r.residual_root = psd_sqrt(r.residual_cov, 1e-10 * std::max(1.0, max_abs(y.covariance())));
  return r;
}

double total_variance_residual(const JointGaussian& joint, const RegressionResult& r) {
  const auto eig = symmetric_eigen(joint.x().covariance());
  const std::size_t n = eig.values.size();
  Matrix inverse(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inverse(i, j) += eig.vectors(i, k) * eig.vectors(j, k) / eig.values[k];
  const Matrix residual = joint.y().covariance() - r.residual_cov - joint.cross() * inverse * joint.cross_adjoint();
  return max_abs(residual);
}

std::vector<double> conditional_sample(const RegressionResult& r, std::span<const double> x, Stream& rng) {
  std::vector<double> g(r.residual_root.cols());
  for (double& e : g) e = rng.normal();
  auto z = r.residual_root * g;
  const auto mean = r.conditional_mean(x);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += mean[i];
  return z;
}

EmpiricalJoint empirical_correlator(const Matrix& xs, const Matrix& ys) {
  const std::size_t n = xs.rows();
  if (ys.rows() != n) throw std::invalid_argument("empirical_correlator: X and Y sample counts differ");
  if (n < 2) throw std::invalid_argument("empirical_correlator: need at least 2 samples");
  const std::size_t dx = xs.cols(), dy = ys.cols();
  const std::size_t d = dx + dy;

  std::vector<double> mean(d, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < dx; ++i) mean[i] += xs(s, i);
    for (std::size_t i = 0; i < dy; ++i) mean[dx + i] += ys(s, i);
  }
  for (double& x : mean) x /= static_cast<double>(n);

  // Second pass: centered co-moments and the spread of their summands.
  Matrix sum(d, d), sum_sq(d, d);
  std::vector<double> c(d);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < dx; ++i) c[i] = xs(s, i) - mean[i];
    for (std::size_t i = 0; i < dy; ++i) c[dx + i] = ys(s, i) - mean[dx + i];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        const double p = c[i] * c[j];
        sum(i, j) += p;
        sum_sq(i, j) += p * p;
      }
  }
  const double nn = static_cast<double>(n);
  Matrix cov(d, d), se(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      const double mean_p = sum(i, j) / nn;
      const double var_p = std::max(0.0, (sum_sq(i, j) - nn * mean_p * mean_p) / (nn - 1.0));
      cov(i, j) = cov(j, i) = sum(i, j) / (nn - 1.0);
      se(i, j) = se(j, i) = std::sqrt(var_p / nn);
    }

  const auto block = [&](const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
    Matrix b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) b(i, j) = m(r0 + i, c0 + j);
    return b;
  };
  GaussianVector gx(std::vector<double>(mean.begin(), mean.begin() + static_cast<std::ptrdiff_t>(dx)),
                    block(cov, 0, 0, dx, dx));
  GaussianVector gy(std::vector<double>(mean.begin() + static_cast<std::ptrdiff_t>(dx), mean.end()),
                    block(cov, dx, dx, dy, dy));
  return EmpiricalJoint{JointGaussian(std::move(gx), std::move(gy), block(cov, dx, 0, dy, dx)),
                        block(se, 0, 0, dx, dx), block(se, dx, dx, dy, dy), block(se, dx, 0, dy, dx)};
}

JointGaussian hessian_regression_pair(std::size_t m, double v) {
  if (m < 1) throw std::invalid_argument("hessian_regression_pair: m must be >= 1");
  if (!(v > 0.0)) throw std::invalid_argument("hessian_regression_pair: need v > 0");
  std::vector<double> w_var(m + 1, v);
  w_var[0] = v / 2.0;
  GaussianVector w = GaussianVector::centered(Matrix::diagonal(w_var));

  // Hess_A(n) = A_* - a_00 1_m lies in S_m^{2v,v}.
  const EnsembleParams hess_law(m, 2.0 * v, v);
  const std::size_t dim = SymMatrix::packed_size(m);
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pos.emplace_back(i, j);
  Matrix hess_cov(dim, dim);
  Matrix cross(dim, m + 1);
  for (std::size_t p = 0; p < dim; ++p) {
    for (std::size_t q = 0; q < dim; ++q)
      hess_cov(p, q) = hess_law.ell_covariance(pos[p].first, pos[p].second, pos[q].first, pos[q].second);
    // cov(a_ii - a_00, a_00 / 2) = -v; gradient entries a_0k are independent of A_* and a_00.
    if (pos[p].first == pos[p].second) cross(p, 0) = -v;
  }
  return JointGaussian(std::move(w), GaussianVector::centered(std::move(hess_cov)), std::move(cross));
}

Matrix omega_scaling(std::size_t m) {
  std::vector<double> d;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) d.push_back(i == j ? 1.0 : std::numbers::sqrt2);
  return Matrix::diagonal(d);
}

void sample_hessian_pair(std::size_t m, double v, Stream& rng, std::span<double> w, std::span<double> hess_ell) {
  const SymMatrix a = sample_goe(EnsembleParams::goe(m + 1, v), rng);
  w[0] = 0.5 * a(0, 0);
  for (std::size_t k = 1; k <= m; ++k) w[k] = a(0, k);
  const Matrix h = hess_phi(a, SpherePoint::north_pole(m));
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) hess_ell[k++] = h(i, j);
}

std::pair<Matrix, Matrix> sample_hessian_pairs(std::size_t m, double v, std::uint64_t n, const McConfig& cfg) {
  const std::size_t dw = m + 1, dh = SymMatrix::packed_size(m);
  auto parts = run_chunks(n, cfg, StreamTag::regression, [&](Stream& s, std::uint64_t count) {
    std::vector<double> buf(count * (dw + dh));
    for (std::uint64_t i = 0; i < count; ++i) {
      double* row = buf.data() + i * (dw + dh);
      sample_hessian_pair(m, v, s, {row, dw}, {row + dw, dh});
    }
    return buf;
  });
  Matrix ws(n, dw), hs(n, dh);
  std::size_t r = 0;
  for (const auto& part : parts)
    for (std::size_t off = 0; off < part.size(); off += dw + dh, ++r) {
      for (std::size_t k = 0; k < dw; ++k) ws(r, k) = part[off + k];
      for (std::size_t k = 0; k < dh; ++k) hs(r, k) = part[off + dw + k];
    }
  return {std::move(ws), std::move(hs)};
}

}  // namespace mehtalab
