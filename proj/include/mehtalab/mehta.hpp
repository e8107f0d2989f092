#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mehtalab/estimator.hpp"
#include "mehtalab/quadrature.hpp"

namespace mehtalab {

// Lanczos (g = 7, 9 terms) log-gamma for x > 0.
double log_gamma(double x);
double gamma_fn(double x);

// vol[S^m] = 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(std::size_t m);

// Z_m = 2^{3m/2} prod_{j=0}^{m-1} Gamma((j+3)/2), evaluated in log space.
double log_mehta_closed_form(std::size_t m);
double mehta_closed_form(std::size_t m);
// Z_m(v) = (2v)^{m(m+1)/4} Z_m.
double log_mehta_closed_form(std::size_t m, double v);
double mehta_closed_form(std::size_t m, double v);

// Z_{m+1} / Z_m = 2^{3/2} Gamma((m+3)/2).
double mehta_ratio(std::size_t m);

// Z_m ~ (2 pi)^{m/2} E[prod_{i<j} |l_i - l_j|] with l_i iid N(0,1); the
// Vandermonde product is accumulated as a sum of logs.
EstimatorResult mehta_mc(std::size_t m, std::uint64_t n_samples, const McConfig& cfg);

// Nested adaptive quadrature of the defining integral over [-8, 8]^m, m <= 3.
QuadratureResult mehta_quadrature(std::size_t m, double abs_tol = 1e-6);

// E_{GOE_m^v} |det(A - c 1_m)|.
EstimatorResult exp_abs_det_mc(std::size_t m, double v, double c, std::uint64_t n_samples, const McConfig& cfg,
                               StreamTag tag = StreamTag::abs_det);

// How the integrated expected-|det| identity is sampled: c ~ N(0, 2v) next to
// an independent A in GOE_m^v, or the north-pole Hessian A_* - a_00 1_m of
// A in GOE_{m+1}^v (same law, drawn on the sphere side).
enum class DetmomentSampler { direct, sphere };

// sqrt(4 pi v) E|det(A - c 1_m)| over c ~ N(0, 2v), against the reference
// Z_{m+1}(v) / Z_m(v) = (2v)^{(m+1)/2} Z_{m+1} / Z_m.
EstimatorResult detmoment_identity_check(std::size_t m, double v, std::uint64_t n_samples, const McConfig& cfg,
                                         DetmomentSampler sampler = DetmomentSampler::direct,
                                         StreamTag tag = StreamTag::detmoment);

struct PointwiseCheck {
  EstimatorResult result;  // estimate: E|det(A - c)|; reference: the correlation side
  double bandwidth = 0.0;
  double bias_bound = 0.0;
  bool bandwidth_dominated = false;
  // Filled when the pointwise comparison was abandoned for the integrated one.
  std::optional<EstimatorResult> integrated_fallback;
};

// E|det(A - c)| against e^{c^2/4v} (2v)^{(m+1)/2} (Z_{m+1}/Z_m) rho_{m+1,v}(c),
// with rho from a kernel estimate whose bandwidth keeps the smoothing bias
// bound below half of its Monte Carlo error.
PointwiseCheck exp_det_pointwise_check(std::size_t m, double v, double c, std::uint64_t n_samples,
                                       const McConfig& cfg);

// rho_A(t) = (2 pi v)^{-m/2} vol[S^m] E_{GOE_m^v}|det(A - t 1_m)|.
EstimatorResult kacrice_density(std::size_t m, double t, double v, std::uint64_t n_samples, const McConfig& cfg);

// Truncation of C = R: L = 10 sqrt(v (m+1)).
double kacrice_truncation(std::size_t m, double v);

struct KacRiceComparison {
  double a = 0.0, b = 0.0;  // the interval actually used
  EstimatorResult empirical;   // 2 * #eigenvalues of A in GOE_{m+1}^v inside C
  EstimatorResult kac_rice;    // int_C rho_A(t) gamma_{2v}(dt)
  EstimatorResult spectral;    // 2(m+1) int_C rho-hat_{m+1,v}
  double z_empirical_kacrice = 0.0;
  double z_empirical_spectral = 0.0;
  double z_kacrice_spectral = 0.0;
  bool pass() const;
};

// Infinite endpoints are truncated at -/+ kacrice_truncation(m, v).
KacRiceComparison kacrice_vs_empirical(std::size_t m, double v, double a, double b, std::uint64_t n_samples,
                                       const McConfig& cfg);

struct ZmRow {
  std::size_t m;            // the row reports Z_{m+1} from the ratio Z_{m+1}/Z_m
  EstimatorResult ratio;    // estimated Z_{m+1}/Z_m, reference mehta_ratio(m)
  EstimatorResult balance;  // Kac-Rice total mass E[D_A[R]] / (m+1), reference 2
  EstimatorResult z_next;   // estimated Z_{m+1}, reference closed form
};

// Z_2, ..., Z_{m_max+1} from Z_1 = sqrt(2 pi) and sphere-side Monte Carlo
// ratios; errors propagate in quadrature through the running product.
std::vector<ZmRow> reproduce_zm(std::size_t m_max, std::uint64_t n_samples, const McConfig& cfg);

// (x - y) / sqrt(se_x^2 + se_y^2) for two independent estimates.
double pair_z(const EstimatorResult& x, const EstimatorResult& y);

}  // namespace mehtalab
