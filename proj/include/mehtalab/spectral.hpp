#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "mehtalab/estimator.hpp"
#include "mehtalab/linalg.hpp"
#include "mehtalab/quadrature.hpp"
#include "mehtalab/symspace.hpp"

namespace mehtalab {

// Ascending eigenvalues (cyclic Jacobi).
std::vector<double> eigenvalues(const SymMatrix& a);
SymmetricEigen eigen_decomposition(const SymMatrix& a);

// Finite sum of weighted Dirac masses on R, atoms sorted by location.
class PointMeasure {
 public:
  struct Atom {
    double location;
    double weight;
  };

  PointMeasure() = default;
  explicit PointMeasure(std::vector<Atom> atoms);
  static PointMeasure from_points(std::span<const double> locations, double weight = 1.0);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_mass() const;
  // Mass of [a, b].
  double mass(double a, double b) const;
  // Merges maximal runs of atoms whose consecutive gaps are < tol; the merged
  // atom sits at the weighted mean and carries the summed weight.
  PointMeasure merged(double tol) const;
  PointMeasure scaled(double factor) const;
  // Same number of atoms, equal weights, locations within loc_tol.
  bool matches(const PointMeasure& other, double loc_tol) const;

 private:
  std::vector<Atom> atoms_;
};

void write_csv(std::ostream& out, const PointMeasure& mu);

// 1e-8 (1 + |A|_F).
double default_degeneracy_tol(const SymMatrix& a);

// sum over eigenvalue clusters of mult(lambda) delta_lambda.
PointMeasure spectral_measure(const SymMatrix& a, double degeneracy_tol);

using SpectralFunction = std::function<double(std::span<const double>)>;

// E_{GOE_m^v}[f(eigenvalues(A))] by direct sampling.
EstimatorResult weyl_expectation_mc(const SpectralFunction& f, const EnsembleParams& params,
                                    std::uint64_t n_samples, const McConfig& cfg);

// (1/Z_m(v)) int f Q_{m,v} over [-L, L]^m for m <= 3, with
// Q_{m,v} = prod_{i<j}|l_i - l_j| prod exp(-l_i^2 / 4v) and
// L = 8 sqrt(2v) + max |kink|. f must be symmetric; kinks are locations where
// f is not smooth in a single coordinate. The normalizer is the same rule
// applied to f = 1.
QuadratureResult weyl_rhs_quadrature(const SpectralFunction& f, std::size_t m, double v,
                                     std::span<const double> kinks = {}, double abs_tol = 1e-6);

struct HistogramEstimator {
  std::optional<double> bin_width;  // default 0.05 sqrt(2v) sqrt(n), clipped to [0.01, 0.2]
  double anchor = 0.0;              // bin edges sit at anchor + k * bin_width
};
struct KernelEstimator {
  double bandwidth;  // Gaussian kernel standard deviation
};
using CorrelationEstimator = std::variant<HistogramEstimator, KernelEstimator>;

// Normalized 1-point correlation estimate on a grid.
struct DensityEstimate {
  enum class Kind { histogram, kernel };
  Kind kind = Kind::histogram;
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> std_errors;
  double bandwidth = 0.0;  // bin width for histograms
  std::uint64_t n_samples = 0;
  double tolerance = 0.01;  // declared bound on |integral - 1|

  double trapezoid_integral() const;
  // int_a^b rho-hat; exact for the piecewise-constant histogram.
  double integral(double a, double b) const;
  // int g rho-hat over the grid (bin midpoints for histograms, trapezoid otherwise).
  double integrate(const std::function<double(double)>& g) const;
};

// Half-width of the grid: semicircle edge plus a Gaussian margin.
double correlation_support(std::size_t n, double v);
double default_bin_width(std::size_t n, double v);

DensityEstimate one_point_correlation(std::size_t n, double v, std::uint64_t n_samples,
                                      const CorrelationEstimator& estimator, const McConfig& cfg,
                                      StreamTag tag = StreamTag::correlation);

// Kernel estimate of rho_{n,v}(x) (derivative = 0) or of rho''_{n,v}(x)
// (derivative = 2) at a single point, with its Monte Carlo error.
EstimatorResult correlation_kernel_at(std::size_t n, double v, double x, double bandwidth, int derivative,
                                      std::uint64_t n_samples, const McConfig& cfg, StreamTag tag);

void write_csv(std::ostream& out, const DensityEstimate& rho);

}  // namespace mehtalab
