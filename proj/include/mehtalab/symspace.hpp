#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mehtalab/estimator.hpp"
#include "mehtalab/linalg.hpp"
#include "mehtalab/rng.hpp"

namespace mehtalab {

// Real symmetric m x m matrix in packed upper-triangle storage, so symmetry
// holds by construction. Entries are indexed 0..m-1.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t m);

  static SymMatrix identity(std::size_t m);
  static SymMatrix diagonal(std::span<const double> d);
  // Rejects inputs whose asymmetry exceeds tol; the mean of (i,j),(j,i) is kept.
  static SymMatrix from_dense(const Matrix& a, double tol = 1e-9);

  std::size_t dim() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return packed_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double value) { packed_[index(i, j)] = value; }

  std::span<const double> packed() const { return packed_; }
  Matrix to_dense() const;
  double trace() const;
  double frobenius_norm() const;

  // Number of independent entries, m(m+1)/2.
  static std::size_t packed_size(std::size_t m) { return m * (m + 1) / 2; }
  // Position of (i, j) in the packed order (0,0),(0,1),...,(0,m-1),(1,1),...
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * m_ - (i * (i + 1)) / 2 + j;
  }

 private:
  std::size_t m_;
  std::vector<double> packed_;
};

// tr(AB).
double inner_product(const SymMatrix& a, const SymMatrix& b);

// ell_ij = a_ij; omega_ii = a_ii, omega_ij = sqrt(2) a_ij (i < j). Both in
// packed order. omega_coords is an isometry onto R^{m(m+1)/2}.
std::vector<double> ell_coords(const SymMatrix& a);
std::vector<double> omega_coords(const SymMatrix& a);
SymMatrix from_ell_coords(std::size_t m, std::span<const double> ell);
SymMatrix from_omega_coords(std::size_t m, std::span<const double> omega);

// Q^T A Q.
SymMatrix congruence(const SymMatrix& a, const Matrix& q);

// Parameters (m, u, v) of the orthogonally invariant Gaussian measure with
// E[a_ij a_kl] = u d_ij d_kl + v (d_ik d_jl + d_il d_jk). u = 0 is GOE_m^v.
class EnsembleParams {
 public:
  EnsembleParams(std::size_t m, double u, double v);
  static EnsembleParams goe(std::size_t m, double v) { return {m, 0.0, v}; }

  std::size_t m() const { return m_; }
  double u() const { return u_; }
  double v() const { return v_; }
  bool is_goe() const { return u_ == 0.0; }

  // E[ell_ij ell_kl].
  double ell_covariance(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const;

 private:
  std::size_t m_;
  double u_;
  double v_;
};

// Independent entries: diagonal N(0, 2v), off-diagonal N(0, v).
SymMatrix sample_goe(const EnsembleParams& params, Stream& rng);
// GOE_m^v + N(0,u) 1_m for u >= 0; for u < 0 the diagonal is drawn from its
// covariance uJ + 2vI through the eigen-split (mu+2v on the constant vector,
// 2v on its complement).
SymMatrix sample_suv(const EnsembleParams& params, Stream& rng);

// log of the GOE_m^v density with respect to prod_{i<=j} d omega_ij.
double goe_log_density(const SymMatrix& a, double v);

// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Matrix sample_orthogonal(std::size_t n, Stream& rng);

// One entry of the second-moment audit of ell-coordinates.
struct MomentCheck {
  std::size_t i, j, k, l;
  double empirical;
  double expected;
  double std_error;
  double z_score() const;
};

// All m(m+1)/2 x m(m+1)/2 second moments E[ell_ij ell_kl] (upper triangle of
// the moment matrix) estimated from n samples of S_m^{u,v}.
std::vector<MomentCheck> covariance_audit(const EnsembleParams& params, std::uint64_t n,
                                          const McConfig& cfg);

// Text matrix format: first line m, then m lines of m entries.
SymMatrix read_matrix(std::istream& in);
SymMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const SymMatrix& a);

}  // namespace mehtalab
