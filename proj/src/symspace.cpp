#include "mehtalab/symspace.hpp"

#include <cmath>
#include <algorithm>
#include <fstream>
#include <limits>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mehtalab {

SymMatrix::SymMatrix(std::size_t m) : m_(m), packed_(packed_size(m), 0.0) {
  if (m == 0) throw std::invalid_argument("SymMatrix: dimension must be positive");
}

SymMatrix SymMatrix::identity(std::size_t m) {
  SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i) a.set(i, i, 1.0);
  return a;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix a(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a.set(i, i, d[i]);
  return a;
}

SymMatrix SymMatrix::from_dense(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("from_dense: matrix is not square");
  SymMatrix s(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) {
      const double scale = std::max({1.0, std::abs(a(i, j)), std::abs(a(j, i))});
      if (std::abs(a(i, j) - a(j, i)) > tol * scale) {
        std::ostringstream msg;
        msg << "matrix is not symmetric at (" << i << "," << j << "): " << a(i, j) << " vs " << a(j, i);
        throw std::invalid_argument(msg.str());
      }
      s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
    }
  return s;
}

Matrix SymMatrix::to_dense() const {
  Matrix a(m_, m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) a(i, j) = (*this)(i, j);
  return a;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < m_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::frobenius_norm() const { return std::sqrt(inner_product(*this, *this)); }

double inner_product(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * b(j, i);
  return s;
}

std::vector<double> ell_coords(const SymMatrix& a) {
  return {a.packed().begin(), a.packed().end()};
}

std::vector<double> omega_coords(const SymMatrix& a) {
  std::vector<double> w;
  w.reserve(a.packed().size());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) w.push_back(i == j ? a(i, j) : std::numbers::sqrt2 * a(i, j));
  return w;
}

SymMatrix from_ell_coords(std::size_t m, std::span<const double> ell) {
  if (ell.size() != SymMatrix::packed_size(m)) throw std::invalid_argument("from_ell_coords: wrong length");
  SymMatrix a(m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a.set(i, j, ell[k++]);
  return a;
}

SymMatrix from_omega_coords(std::size_t m, std::span<const double> omega) {
  if (omega.size() != SymMatrix::packed_size(m)) throw std::invalid_argument("from_omega_coords: wrong length");
  SymMatrix a(m);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      a.set(i, j, i == j ? omega[k] : omega[k] / std::numbers::sqrt2);
      ++k;
    }
  return a;
}

SymMatrix congruence(const SymMatrix& a, const Matrix& q) {
  const Matrix r = q.transpose() * a.to_dense() * q;
  SymMatrix s(r.rows());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = i; j < r.cols(); ++j) s.set(i, j, 0.5 * (r(i, j) + r(j, i)));
  return s;
}

EnsembleParams::EnsembleParams(std::size_t m, double u, double v) : m_(m), u_(u), v_(v) {
  if (m == 0) throw std::invalid_argument("EnsembleParams: m must be positive");
  if (!(v > 0.0)) throw std::invalid_argument("EnsembleParams: need v > 0");
  if (!(static_cast<double>(m) * u + 2.0 * v > 0.0))
    throw std::invalid_argument("EnsembleParams: need m*u + 2v > 0");
}

double EnsembleParams::ell_covariance(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
  const auto d = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };
  return u_ * d(i, j) * d(k, l) + v_ * (d(i, k) * d(j, l) + d(i, l) * d(j, k));
}

SymMatrix sample_goe(const EnsembleParams& params, Stream& rng) {
  if (!params.is_goe()) throw std::invalid_argument("sample_goe: requires u = 0");
  const std::size_t m = params.m();
  const double sd_diag = std::sqrt(2.0 * params.v());
  const double sd_off = std::sqrt(params.v());
  SymMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a.set(i, j, (i == j ? sd_diag : sd_off) * rng.normal());
  return a;
}

SymMatrix sample_suv(const EnsembleParams& params, Stream& rng) {
  const std::size_t m = params.m();
  if (params.u() >= 0.0) {
    SymMatrix a = sample_goe(EnsembleParams::goe(m, params.v()), rng);
    const double x = std::sqrt(params.u()) * rng.normal();
    for (std::size_t i = 0; i < m; ++i) a.set(i, i, a(i, i) + x);
    return a;
  }
  // Off-diagonal entries are unaffected by u.
  SymMatrix a(m);
  const double sd_off = std::sqrt(params.v());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) a.set(i, j, sd_off * rng.normal());
  std::vector<double> g(m);
  double mean = 0.0;
  for (auto& x : g) {
    x = rng.normal();
    mean += x;
  }
  mean /= static_cast<double>(m);
  const double sd_const = std::sqrt(static_cast<double>(m) * params.u() + 2.0 * params.v());
  const double sd_perp = std::sqrt(2.0 * params.v());
  for (std::size_t i = 0; i < m; ++i) a.set(i, i, sd_const * mean + sd_perp * (g[i] - mean));
  return a;
}

double goe_log_density(const SymMatrix& a, double v) {
  if (!(v > 0.0)) throw std::invalid_argument("goe_log_density: need v > 0");
  const double m = static_cast<double>(a.dim());
  return -(m * (m + 1.0) / 4.0) * std::log(4.0 * std::numbers::pi * v) - inner_product(a, a) / (4.0 * v);
}

Matrix sample_orthogonal(std::size_t n, Stream& rng) {
  Matrix q(n, n);
  for (double& x : q.data()) x = rng.normal();
  // Modified Gram-Schmidt on columns; positive R diagonal gives Haar measure.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
      for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

double MomentCheck::z_score() const {
  if (std_error > 0.0) return (empirical - expected) / std_error;
  return empirical == expected ? 0.0 : std::numeric_limits<double>::infinity();
}

std::vector<MomentCheck> covariance_audit(const EnsembleParams& params, std::uint64_t n, const McConfig& cfg) {
  if (n < 2) throw std::invalid_argument("covariance_audit: need at least 2 samples");
  const std::size_t m = params.m();
  const std::size_t dim = SymMatrix::packed_size(m);
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) pos.emplace_back(i, j);

  const std::size_t n_pairs = dim * (dim + 1) / 2;
  const auto stats = mc_mean_vector(n, n_pairs, cfg, StreamTag::covariance_audit,
                                    [&](Stream& s, std::vector<double>& out) {
                                      const SymMatrix a = sample_suv(params, s);
                                      const auto ell = a.packed();
                                      std::size_t k = 0;
                                      for (std::size_t p = 0; p < dim; ++p)
                                        for (std::size_t q = p; q < dim; ++q) out[k++] = ell[p] * ell[q];
                                    });
  std::vector<MomentCheck> checks;
  checks.reserve(n_pairs);
  std::size_t k = 0;
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p; q < dim; ++q) {
      const auto [i, j] = pos[p];
      const auto [kk, l] = pos[q];
      checks.push_back({i, j, kk, l, stats[k].mean, params.ell_covariance(i, j, kk, l), stats[k].std_error()});
      ++k;
    }
  return checks;
}

SymMatrix read_matrix(std::istream& in) {
  long long m = 0;
  if (!(in >> m) || m <= 0) throw std::runtime_error("matrix file: expected a positive dimension on the first line");
  Matrix a(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(in >> a(i, j))) {
        std::ostringstream msg;
        msg << "matrix file: missing or malformed entry (" << i << "," << j << ")";
        throw std::runtime_error(msg.str());
      }
  std::string extra;
  if (in >> extra) throw std::runtime_error("matrix file: trailing content '" + extra + "'");
  return SymMatrix::from_dense(a, 1e-9);
}

SymMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const SymMatrix& a) {
  out << a.dim() << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out << (j ? " " : "") << a(i, j);
    out << '\n';
  }
}

}  // namespace mehtalab
