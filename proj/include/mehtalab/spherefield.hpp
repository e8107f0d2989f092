#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "mehtalab/linalg.hpp"
#include "mehtalab/rng.hpp"
#include "mehtalab/spectral.hpp"
#include "mehtalab/symspace.hpp"

namespace mehtalab {

// Unit vector in R^{m+1}; normalized on construction.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);
  // n = (1, 0, ..., 0) on S^m.
  static SpherePoint north_pole(std::size_t m);

  std::span<const double> coords() const { return coords_; }
  std::size_t ambient_dim() const { return coords_.size(); }
  SpherePoint antipode() const;

 private:
  std::vector<double> coords_;
};

struct CriticalPoint {
  SpherePoint point;
  double value;  // critical value of 2 Phi_A, i.e. (Ax, x)
  double gradient_norm;
  int morse_index;
};

void to_json(nlohmann::json& j, const CriticalPoint& cp);

class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IncompleteSearchError : public std::runtime_error {
 public:
  IncompleteSearchError(std::size_t found, std::size_t expected);
  std::size_t found() const { return found_; }

 private:
  std::size_t found_;
};

// Phi_A(x) = (Ax, x) / 2.
double phi(const SymMatrix& a, const SpherePoint& x);
// Ax - (Ax, x) x, as a vector in R^{m+1} tangent to the sphere at x.
std::vector<double> grad_phi(const SymMatrix& a, const SpherePoint& x);
// Orthonormal basis of T_x S^m: columns 2..m+1 of the Householder reflection
// exchanging e_1 and -sign(x_0) x. At the north pole this is (e_2, ..., e_{m+1}).
Matrix tangent_basis(const SpherePoint& x);
// Riemannian Hessian in the tangent_basis frame: B^T A B - (Ax, x) 1_m. At
// the north pole this is A_* - a_00 1_m.
Matrix hess_phi(const SymMatrix& a, const SpherePoint& x);

int morse_index(const SymMatrix& a, const SpherePoint& x);

struct FinderOptions {
  double tol = 1e-10;          // gradient-norm acceptance
  std::size_t n_starts = 0;    // 0 means 20 (m+1)(m+2)
  int max_iterations = 100;
};

// All critical points of Phi_A by safeguarded Riemannian Newton from uniform
// antipodal start pairs. Returns exactly 2(m+1) points sorted by value or
// throws DegenerateInputError / IncompleteSearchError.
std::vector<CriticalPoint> find_critical_points(const SymMatrix& a, Stream& rng, FinderOptions options = {});

enum class DiscriminantMethod { analytic, search };

// sum over critical points of delta_{2 Phi_A(x)}.
PointMeasure discriminant_measure(const SymMatrix& a, DiscriminantMethod method, Stream* rng = nullptr);

struct IndexedValue {
  double value;
  int morse_index;
};

// (critical value, Morse index) for both antipodal eigenvectors of each
// eigenvalue, ascending; the Hessian is evaluated at each eigenvector.
std::vector<IndexedValue> morse_index_spectrum(const SymMatrix& a);

// Minimum gap between consecutive eigenvalues.
double min_eigenvalue_gap(const SymMatrix& a);

}  // namespace mehtalab
