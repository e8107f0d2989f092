#include "mehtalab/mehta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mehtalab/linalg.hpp"
#include "mehtalab/spectral.hpp"
#include "mehtalab/spherefield.hpp"
#include "mehtalab/symspace.hpp"

namespace mehtalab {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,      -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

void require_m(std::size_t m, const char* who) {
  if (m == 0) throw std::invalid_argument(std::string(who) + ": m must be >= 1");
}

void require_v(double v, const char* who) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(who) + ": need v > 0");
}

// |det M| from the LU factors, in place of cofactor expansion.
double abs_det_shifted(const SymMatrix& a, double c) {
  Matrix d = a.to_dense();
  for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) -= c;
  return std::abs(determinant(d));
}

double gaussian_density(double t, double variance) {
  return std::exp(-t * t / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (int i = 1; i < 9; ++i) sum += kLanczos[i] / (z + i);
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

double sphere_volume(std::size_t m) {
  const double n = static_cast<double>(m) + 1.0;
  return 2.0 * std::exp(0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n));
}

double log_mehta_closed_form(std::size_t m) {
  require_m(m, "mehta_closed_form");
  double s = 1.5 * static_cast<double>(m) * std::numbers::ln2;
  for (std::size_t j = 0; j < m; ++j) s += log_gamma(0.5 * (static_cast<double>(j) + 3.0));
  return s;
}

double mehta_closed_form(std::size_t m) { return std::exp(log_mehta_closed_form(m)); }

double log_mehta_closed_form(std::size_t m, double v) {
  require_v(v, "mehta_closed_form");
  const double md = static_cast<double>(m);
  return md * (md + 1.0) / 4.0 * std::log(2.0 * v) + log_mehta_closed_form(m);
}

double mehta_closed_form(std::size_t m, double v) { return std::exp(log_mehta_closed_form(m, v)); }

double mehta_ratio(std::size_t m) {
  require_m(m, "mehta_ratio");
  return std::exp(1.5 * std::numbers::ln2 + log_gamma(0.5 * (static_cast<double>(m) + 3.0)));
}

EstimatorResult mehta_mc(std::size_t m, std::uint64_t n_samples, const McConfig& cfg) {
  require_m(m, "mehta_mc");
  if (n_samples == 0) throw std::invalid_argument("mehta_mc: n_samples must be positive");
  const auto stats = mc_mean(n_samples, cfg, StreamTag::mehta_mc, [m](Stream& s) {
    std::vector<double> lambda(m);
    for (double& l : lambda) l = s.normal();
    double log_vdm = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) log_vdm += std::log(std::abs(lambda[i] - lambda[j]));
    return std::exp(log_vdm);
  });
  auto r = make_result(stats, cfg.seed, std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(m)));
  r.reference = mehta_closed_form(m);
  return r;
}

QuadratureResult mehta_quadrature(std::size_t m, double abs_tol) {
  require_m(m, "mehta_quadrature");
  if (m > 3) throw std::invalid_argument("mehta_quadrature: only m <= 3 is supported");
  const auto integrand = [m](std::span<const double> l) {
    double q = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) q *= l[j] - l[i];
      q *= std::exp(-0.5 * l[i] * l[i]);
    }
    return q;
  };
  const double breaks[] = {0.0};
  return integrate_symmetric(integrand, m, 8.0, breaks, abs_tol);
}

EstimatorResult exp_abs_det_mc(std::size_t m, double v, double c, std::uint64_t n_samples, const McConfig& cfg,
                               StreamTag tag) {
  require_m(m, "exp_abs_det_mc");
  require_v(v, "exp_abs_det_mc");
  const EnsembleParams params = EnsembleParams::goe(m, v);
  const auto stats = mc_mean(n_samples, cfg, tag, [&](Stream& s) { return abs_det_shifted(sample_goe(params, s), c); });
  return make_result(stats, cfg.seed);
}

EstimatorResult detmoment_identity_check(std::size_t m, double v, std::uint64_t n_samples, const McConfig& cfg,
                                         DetmomentSampler sampler, StreamTag tag) {
  require_m(m, "detmoment_identity_check");
  require_v(v, "detmoment_identity_check");
  RunningStats stats;
  if (sampler == DetmomentSampler::direct) {
    const EnsembleParams params = EnsembleParams::goe(m, v);
    stats = mc_mean(n_samples, cfg, tag, [&](Stream& s) {
      const double c = s.normal(2.0 * v);
      return abs_det_shifted(sample_goe(params, s), c);
    });
  } else {
    const EnsembleParams params = EnsembleParams::goe(m + 1, v);
    const SpherePoint pole = SpherePoint::north_pole(m);
    stats = mc_mean(n_samples, cfg, tag,
                    [&](Stream& s) { return std::abs(determinant(hess_phi(sample_goe(params, s), pole))); });
  }
  auto r = make_result(stats, cfg.seed, std::sqrt(4.0 * std::numbers::pi * v));
  r.reference = std::pow(2.0 * v, 0.5 * (static_cast<double>(m) + 1.0)) * mehta_ratio(m);
  return r;
}

PointwiseCheck exp_det_pointwise_check(std::size_t m, double v, double c, std::uint64_t n_samples,
                                       const McConfig& cfg) {
  require_m(m, "exp_det_pointwise_check");
  require_v(v, "exp_det_pointwise_check");
  const std::size_t n = m + 1;
  const double scale = std::exp(c * c / (4.0 * v)) * std::pow(2.0 * v, 0.5 * static_cast<double>(n)) * mehta_ratio(m);

  // Pilot estimates of rho and rho'' at c from an independent stream.
  const double pilot_h = 0.25 * std::sqrt(2.0 * v);
  const std::uint64_t pilot_n = std::max<std::uint64_t>(n_samples / 4, 1000);
  const auto rho0 = correlation_kernel_at(n, v, c, pilot_h, 0, pilot_n, cfg, StreamTag::correlation_pilot);
  const auto rho2 = correlation_kernel_at(n, v, c, pilot_h, 2, pilot_n, cfg, StreamTag::correlation_pilot);
  const double curvature = std::abs(rho2.estimate) + 2.0 * rho2.std_error;
  const double kernel_roughness = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
  const double noise = std::sqrt(std::max(rho0.estimate, 1e-12) * kernel_roughness /
                                 (static_cast<double>(n) * static_cast<double>(n_samples)));
  // Solve (h^2 / 2) curvature = (1/2) noise / sqrt(h), then take a margin.
  double h = curvature > 0.0 ? 0.8 * std::pow(noise / curvature, 0.4) : pilot_h;
  h = std::min(h, pilot_h);

  PointwiseCheck out;
  out.bandwidth = h;
  out.result = exp_abs_det_mc(m, v, c, n_samples, cfg);
  const auto rho = correlation_kernel_at(n, v, c, h, 0, n_samples, cfg, StreamTag::correlation);
  out.result.reference = scale * rho.estimate;
  out.result.reference_std_error = scale * rho.std_error;
  out.bias_bound = scale * 0.5 * h * h * curvature;
  out.bandwidth_dominated = out.bias_bound > 0.5 * scale * rho.std_error;
  if (out.bandwidth_dominated) out.integrated_fallback = detmoment_identity_check(m, v, n_samples, cfg);
  return out;
}

EstimatorResult kacrice_density(std::size_t m, double t, double v, std::uint64_t n_samples, const McConfig& cfg) {
  auto r = exp_abs_det_mc(m, v, t, n_samples, cfg, StreamTag::kacrice);
  const double factor = std::pow(2.0 * std::numbers::pi * v, -0.5 * static_cast<double>(m)) * sphere_volume(m);
  r.estimate *= factor;
  r.std_error *= factor;
  return r;
}

double kacrice_truncation(std::size_t m, double v) { return 10.0 * std::sqrt(v * (static_cast<double>(m) + 1.0)); }

double pair_z(const EstimatorResult& x, const EstimatorResult& y) {
  const double se = std::sqrt(x.std_error * x.std_error + y.std_error * y.std_error);
  const double diff = x.estimate - y.estimate;
  if (se > 0.0) return diff / se;
  return std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(x.estimate)) ? 0.0
                                                                         : std::numeric_limits<double>::infinity();
}

bool KacRiceComparison::pass() const {
  const double t = EstimatorResult::kZThreshold;
  return std::abs(z_empirical_kacrice) <= t && std::abs(z_empirical_spectral) <= t &&
         std::abs(z_kacrice_spectral) <= t;
}

KacRiceComparison kacrice_vs_empirical(std::size_t m, double v, double a, double b, std::uint64_t n_samples,
                                       const McConfig& cfg) {
  require_m(m, "kacrice_vs_empirical");
  require_v(v, "kacrice_vs_empirical");
  if (!(a < b)) throw std::invalid_argument("kacrice_vs_empirical: need a < b");
  const double big = kacrice_truncation(m, v);
  KacRiceComparison out;
  out.a = std::max(a, -big);
  out.b = std::min(b, big);
  const double lo = out.a, hi = out.b;
  const std::size_t n = m + 1;

  const EnsembleParams big_law = EnsembleParams::goe(n, v);
  const auto empirical = mc_mean(n_samples, cfg, StreamTag::kacrice_empirical, [&](Stream& s) {
    double count = 0.0;
    for (double l : eigenvalues(sample_goe(big_law, s)))
      if (l >= lo && l <= hi) count += 1.0;
    return 2.0 * count;
  });
  out.empirical = make_result(empirical, cfg.seed);

  // Per draw of A_* in GOE_m^v, int_C |det(A_* - t)| gamma_{2v}(dt), split at
  // the eigenvalues of A_* where the integrand has kinks.
  const EnsembleParams small_law = EnsembleParams::goe(m, v);
  const double factor = std::pow(2.0 * std::numbers::pi * v, -0.5 * static_cast<double>(m)) * sphere_volume(m);
  const auto kac_rice = mc_mean(n_samples, cfg, StreamTag::kacrice, [&](Stream& s) {
    const auto lambda = eigenvalues(sample_goe(small_law, s));
    const auto f = [&](double t) {
      double p = gaussian_density(t, 2.0 * v);
      for (double l : lambda) p *= std::abs(l - t);
      return p;
    };
    return integrate(f, lo, hi, lambda, 1e-12, 1e-10).value;
  });
  out.kac_rice = make_result(kac_rice, cfg.seed, factor);

  // Histogram edges aligned with C so its integral over C is exact.
  const double bw0 = default_bin_width(n, v);
  double bw = bw0;
  double anchor = 0.0;
  if (std::isfinite(lo)) {
    anchor = lo;
    if (hi - lo < 1e3 * bw0) bw = (hi - lo) / std::ceil((hi - lo) / bw0);
  }
  const auto rho = one_point_correlation(n, v, n_samples, HistogramEstimator{bw, anchor}, cfg,
                                         StreamTag::kacrice_correlation);
  // Same stream and tag, so these are the same matrices; this pass yields the
  // per-sample spread of the integral over C.
  const auto spread = mc_mean(n_samples, cfg, StreamTag::kacrice_correlation, [&](Stream& s) {
    double count = 0.0;
    for (double l : eigenvalues(sample_goe(big_law, s)))
      if (l >= lo && l <= hi) count += 1.0;
    return count / static_cast<double>(n);
  });
  const double mass = 2.0 * static_cast<double>(n);
  out.spectral = make_result(spread, cfg.seed, mass);
  out.spectral.estimate = mass * rho.integral(lo, hi);

  out.z_empirical_kacrice = pair_z(out.empirical, out.kac_rice);
  out.z_empirical_spectral = pair_z(out.empirical, out.spectral);
  out.z_kacrice_spectral = pair_z(out.kac_rice, out.spectral);
  return out;
}

std::vector<ZmRow> reproduce_zm(std::size_t m_max, std::uint64_t n_samples, const McConfig& cfg) {
  require_m(m_max, "reproduce_zm");
  std::vector<ZmRow> rows;
  double z = std::sqrt(2.0 * std::numbers::pi);
  double rel_var = 0.0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const auto moment =
        detmoment_identity_check(m, 1.0, n_samples, cfg, DetmomentSampler::sphere, substream(StreamTag::reproduce, m));
    // Kac-Rice total mass E[D_A[R]] = (2 pi)^{-m/2} vol[S^m] (4 pi)^{-1/2} K_m;
    // the balance with E[D_A[R]] = 2(m+1) fixes Z_{m+1}/Z_m = K_m / 2^{(m+1)/2}.
    const double md = static_cast<double>(m);
    const double mass_factor =
        std::pow(2.0 * std::numbers::pi, -0.5 * md) * sphere_volume(m) / std::sqrt(4.0 * std::numbers::pi);
    ZmRow row{m, moment, moment, moment};
    row.balance.estimate = mass_factor * moment.estimate / (md + 1.0);
    row.balance.std_error = mass_factor * moment.std_error / (md + 1.0);
    row.balance.reference = 2.0;

    const double ratio_factor = std::pow(2.0, -0.5 * (md + 1.0));
    row.ratio.estimate = ratio_factor * moment.estimate;
    row.ratio.std_error = ratio_factor * moment.std_error;
    row.ratio.reference = mehta_ratio(m);

    z *= row.ratio.estimate;
    const double rel = row.ratio.std_error / row.ratio.estimate;
    rel_var += rel * rel;
    row.z_next.estimate = z;
    row.z_next.std_error = z * std::sqrt(rel_var);
    row.z_next.reference = mehta_closed_form(m + 1);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mehtalab
