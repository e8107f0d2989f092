#include "mehtalab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace mehtalab {

std::vector<double> eigenvalues(const SymMatrix& a) { return symmetric_eigen(a.to_dense()).values; }

SymmetricEigen eigen_decomposition(const SymMatrix& a) { return symmetric_eigen(a.to_dense()); }

PointMeasure::PointMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& atom : atoms_)
    if (!(atom.weight > 0.0)) throw std::invalid_argument("PointMeasure: atom weights must be positive");
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

PointMeasure PointMeasure::from_points(std::span<const double> locations, double weight) {
  std::vector<Atom> atoms;
  atoms.reserve(locations.size());
  for (double x : locations) atoms.push_back({x, weight});
  return PointMeasure(std::move(atoms));
}

double PointMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& atom : atoms_) s += atom.weight;
  return s;
}

double PointMeasure::mass(double a, double b) const {
  double s = 0.0;
  for (const auto& atom : atoms_)
    if (atom.location >= a && atom.location <= b) s += atom.weight;
  return s;
}

PointMeasure PointMeasure::merged(double tol) const {
  std::vector<Atom> out;
  for (std::size_t k = 0; k < atoms_.size();) {
    std::size_t end = k + 1;
    while (end < atoms_.size() && atoms_[end].location - atoms_[end - 1].location < tol) ++end;
    double weight = 0.0;
    double moment = 0.0;
    for (std::size_t i = k; i < end; ++i) {
      weight += atoms_[i].weight;
      moment += atoms_[i].weight * atoms_[i].location;
    }
    out.push_back({end - k == 1 ? atoms_[k].location : moment / weight, weight});
    k = end;
  }
  return PointMeasure(std::move(out));
}

PointMeasure PointMeasure::scaled(double factor) const {
  std::vector<Atom> out(atoms_.begin(), atoms_.end());
  for (auto& atom : out) atom.weight *= factor;
  return PointMeasure(std::move(out));
}

bool PointMeasure::matches(const PointMeasure& other, double loc_tol) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    if (std::abs(atoms_[k].location - other.atoms_[k].location) > loc_tol) return false;
    if (atoms_[k].weight != other.atoms_[k].weight) return false;
  }
  return true;
}

void write_csv(std::ostream& out, const PointMeasure& mu) {
  out << "location,weight\n" << std::setprecision(17);
  for (const auto& atom : mu.atoms()) out << atom.location << ',' << atom.weight << '\n';
}

double default_degeneracy_tol(const SymMatrix& a) { return 1e-8 * (1.0 + a.frobenius_norm()); }

PointMeasure spectral_measure(const SymMatrix& a, double degeneracy_tol) {
  if (degeneracy_tol < 0.0) throw std::invalid_argument("spectral_measure: degeneracy_tol must be >= 0");
  const auto lambda = eigenvalues(a);
  return PointMeasure::from_points(lambda).merged(degeneracy_tol);
}

EstimatorResult weyl_expectation_mc(const SpectralFunction& f, const EnsembleParams& params,
                                    std::uint64_t n_samples, const McConfig& cfg) {
  if (n_samples == 0) throw std::invalid_argument("weyl_expectation_mc: n_samples must be positive");
  if (!params.is_goe()) throw std::invalid_argument("weyl_expectation_mc: requires u = 0");
  const auto stats = mc_mean(n_samples, cfg, StreamTag::weyl,
                             [&](Stream& s) { return f(eigenvalues(sample_goe(params, s))); });
  return make_result(stats, cfg.seed);
}

QuadratureResult weyl_rhs_quadrature(const SpectralFunction& f, std::size_t m, double v,
                                     std::span<const double> kinks, double abs_tol) {
  if (m < 1 || m > 3) throw std::invalid_argument("weyl_rhs_quadrature: only m in {1,2,3} is supported");
  if (!(v > 0.0)) throw std::invalid_argument("weyl_rhs_quadrature: need v > 0");
  double shift = 0.0;
  for (double c : kinks) shift = std::max(shift, std::abs(c));
  const double half_width = 8.0 * std::sqrt(2.0 * v) + shift;
  std::vector<double> breaks(kinks.begin(), kinks.end());
  breaks.push_back(0.0);

  // On the ordered chamber the Vandermonde factor needs no absolute value.
  const auto weight = [m, v](std::span<const double> l) {
    double q = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) q *= l[j] - l[i];
      q *= std::exp(-l[i] * l[i] / (4.0 * v));
    }
    return q;
  };
  const auto norm = integrate_symmetric(weight, m, half_width, breaks, 1e-3 * abs_tol);
  const double z = norm.value;
  auto r = integrate_symmetric([&](std::span<const double> l) { return f(l) * weight(l); }, m, half_width, breaks,
                               abs_tol * z);
  r.value /= z;
  r.error = r.error / z + std::abs(r.value) * norm.error / z;
  r.converged = r.converged && norm.converged;
  r.evaluations += norm.evaluations;
  return r;
}

double DensityEstimate::trapezoid_integral() const {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) s += 0.5 * (values[k] + values[k + 1]) * (grid[k + 1] - grid[k]);
  return s;
}

double DensityEstimate::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  double s = 0.0;
  if (kind == Kind::histogram) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double lo = std::max(a, grid[k] - 0.5 * bandwidth);
      const double hi = std::min(b, grid[k] + 0.5 * bandwidth);
      if (hi > lo) s += values[k] * (hi - lo);
    }
    return s;
  }
  const auto interp = [&](double x) {
    if (x <= grid.front() || x >= grid.back()) return 0.0;
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - grid.begin()) - 1;
    const double t = (x - grid[k]) / (grid[k + 1] - grid[k]);
    return (1 - t) * values[k] + t * values[k + 1];
  };
  std::vector<double> xs{a};
  for (double g : grid)
    if (g > a && g < b) xs.push_back(g);
  xs.push_back(b);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) s += 0.5 * (interp(xs[k]) + interp(xs[k + 1])) * (xs[k + 1] - xs[k]);
  return s;
}

double DensityEstimate::integrate(const std::function<double(double)>& g) const {
  double s = 0.0;
  if (kind == Kind::histogram) {
    for (std::size_t k = 0; k < grid.size(); ++k) s += g(grid[k]) * values[k] * bandwidth;
    return s;
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    s += 0.5 * (g(grid[k]) * values[k] + g(grid[k + 1]) * values[k + 1]) * (grid[k + 1] - grid[k]);
  return s;
}

double correlation_support(std::size_t n, double v) {
  return 2.0 * std::sqrt(static_cast<double>(n) * v) + 8.0 * std::sqrt(2.0 * v);
}

double default_bin_width(std::size_t n, double v) {
  return std::clamp(0.05 * std::sqrt(2.0 * v) * std::sqrt(static_cast<double>(n)), 0.01, 0.2);
}

namespace {

struct GridSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

DensityEstimate finish(DensityEstimate est, const std::vector<GridSums>& parts, std::uint64_t n_samples,
                       double scale) {
  const std::size_t g = est.grid.size();
  std::vector<double> sum(g, 0.0), sum_sq(g, 0.0);
  for (const auto& p : parts)
    for (std::size_t k = 0; k < g; ++k) {
      sum[k] += p.sum[k];
      sum_sq[k] += p.sum_sq[k];
    }
  const double n = static_cast<double>(n_samples);
  est.values.resize(g);
  est.std_errors.resize(g);
  for (std::size_t k = 0; k < g; ++k) {
    const double mean = sum[k] / n;
    const double var = n > 1 ? std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1)) : 0.0;
    est.values[k] = scale * mean;
    est.std_errors[k] = scale * std::sqrt(var / n);
  }
  est.n_samples = n_samples;
  return est;
}

inline double gaussian_kernel(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); }

}  // namespace

DensityEstimate one_point_correlation(std::size_t n, double v, std::uint64_t n_samples,
                                      const CorrelationEstimator& estimator, const McConfig& cfg, StreamTag tag) {
  if (n_samples < 1000) throw std::invalid_argument("one_point_correlation: need at least 1000 samples");
  const EnsembleParams params = EnsembleParams::goe(n, v);
  const double half = correlation_support(n, v);
  DensityEstimate est;

  if (const auto* hist = std::get_if<HistogramEstimator>(&estimator)) {
    const double bw = hist->bin_width.value_or(default_bin_width(n, v));
    if (!(bw > 0.0)) throw std::invalid_argument("one_point_correlation: bin width must be positive");
    const long long first = static_cast<long long>(std::floor((-half - hist->anchor) / bw));
    const long long last = static_cast<long long>(std::ceil((half - hist->anchor) / bw));
    const std::size_t bins = static_cast<std::size_t>(last - first);
    est.kind = DensityEstimate::Kind::histogram;
    est.bandwidth = bw;
    for (std::size_t b = 0; b < bins; ++b)
      est.grid.push_back(hist->anchor + (static_cast<double>(first) + static_cast<double>(b) + 0.5) * bw);
    const double lo_edge = hist->anchor + static_cast<double>(first) * bw;

    auto parts = run_chunks(n_samples, cfg, tag, [&](Stream& s, std::uint64_t count) {
      GridSums gs{std::vector<double>(bins, 0.0), std::vector<double>(bins, 0.0)};
      for (std::uint64_t i = 0; i < count; ++i) {
        const auto lambda = eigenvalues(sample_goe(params, s));
        std::size_t k = 0;
        while (k < lambda.size()) {
          const double pos = std::floor((lambda[k] - lo_edge) / bw);
          std::size_t run = 1;
          while (k + run < lambda.size() && std::floor((lambda[k + run] - lo_edge) / bw) == pos) ++run;
          if (pos >= 0 && pos < static_cast<double>(bins)) {
            const auto b = static_cast<std::size_t>(pos);
            gs.sum[b] += static_cast<double>(run);
            gs.sum_sq[b] += static_cast<double>(run * run);
          }
          k += run;
        }
      }
      return gs;
    });
    return finish(std::move(est), parts, n_samples, 1.0 / (static_cast<double>(n) * bw));
  }

  const double h = std::get<KernelEstimator>(estimator).bandwidth;
  if (!(h > 0.0)) throw std::invalid_argument("one_point_correlation: bandwidth must be positive");
  const double step = 0.5 * h;
  const auto points = static_cast<std::size_t>(std::ceil(2.0 * half / step)) + 1;
  est.kind = DensityEstimate::Kind::kernel;
  est.bandwidth = h;
  for (std::size_t k = 0; k < points; ++k) est.grid.push_back(-half + static_cast<double>(k) * step);
  const double reach = 8.0 * h;

  auto parts = run_chunks(n_samples, cfg, tag, [&](Stream& s, std::uint64_t count) {
    GridSums gs{std::vector<double>(points, 0.0), std::vector<double>(points, 0.0)};
    std::vector<double> scratch(points, 0.0);
    std::vector<std::size_t> touched;
    for (std::uint64_t i = 0; i < count; ++i) {
      const auto lambda = eigenvalues(sample_goe(params, s));
      for (double x : lambda) {
        const double lo = std::max(0.0, std::ceil((x - reach + half) / step));
        const double hi = std::min(static_cast<double>(points - 1), std::floor((x + reach + half) / step));
        for (double kd = lo; kd <= hi; kd += 1.0) {
          const auto k = static_cast<std::size_t>(kd);
          if (scratch[k] == 0.0) touched.push_back(k);
          scratch[k] += gaussian_kernel((est.grid[k] - x) / h);
        }
      }
      for (std::size_t k : touched) {
        gs.sum[k] += scratch[k];
        gs.sum_sq[k] += scratch[k] * scratch[k];
        scratch[k] = 0.0;
      }
      touched.clear();
    }
    return gs;
  });
  return finish(std::move(est), parts, n_samples, 1.0 / (static_cast<double>(n) * h));
}

EstimatorResult correlation_kernel_at(std::size_t n, double v, double x, double h, int derivative,
                                      std::uint64_t n_samples, const McConfig& cfg, StreamTag tag) {
  if (!(h > 0.0)) throw std::invalid_argument("correlation_kernel_at: bandwidth must be positive");
  if (derivative != 0 && derivative != 2) throw std::invalid_argument("correlation_kernel_at: derivative is 0 or 2");
  const EnsembleParams params = EnsembleParams::goe(n, v);
  const double nd = static_cast<double>(n);
  const auto stats = mc_mean(n_samples, cfg, tag, [&](Stream& s) {
    double y = 0.0;
    for (double lambda : eigenvalues(sample_goe(params, s))) {
      const double u = (x - lambda) / h;
      const double k = gaussian_kernel(u) / h;
      y += derivative == 0 ? k : k * (u * u - 1.0) / (h * h);
    }
    return y / nd;
  });
  return make_result(stats, cfg.seed);
}

void write_csv(std::ostream& out, const DensityEstimate& rho) {
  out << "x,rho,stderr\n" << std::setprecision(17);
  for (std::size_t k = 0; k < rho.grid.size(); ++k)
    out << rho.grid[k] << ',' << rho.values[k] << ',' << rho.std_errors[k] << '\n';
}

}  // namespace mehtalab
