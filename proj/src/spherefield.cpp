#include "mehtalab/spherefield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mehtalab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> apply(const SymMatrix& a, std::span<const double> x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw std::invalid_argument("dimension mismatch between matrix and sphere point");
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  const double r = norm(coords_);
  if (coords_.empty() || !(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("SpherePoint: need a nonzero finite vector");
  if (r != 1.0)
    for (double& c : coords_) c /= r;
}

SpherePoint SpherePoint::north_pole(std::size_t m) {
  std::vector<double> c(m + 1, 0.0);
  c[0] = 1.0;
  return SpherePoint(std::move(c));
}

SpherePoint SpherePoint::antipode() const {
  std::vector<double> c(coords_);
  for (double& x : c) x = -x;
  return SpherePoint(std::move(c));
}

void to_json(nlohmann::json& j, const CriticalPoint& cp) {
  j = nlohmann::json{{"point", std::vector<double>(cp.point.coords().begin(), cp.point.coords().end())},
                     {"value", cp.value},
                     {"gradient_norm", cp.gradient_norm},
                     {"morse_index", cp.morse_index}};
}

IncompleteSearchError::IncompleteSearchError(std::size_t found, std::size_t expected)
    : std::runtime_error("critical point search incomplete: found " + std::to_string(found) + " of " +
                         std::to_string(expected) + " points"),
      found_(found) {}

double phi(const SymMatrix& a, const SpherePoint& x) { return 0.5 * dot(apply(a, x.coords()), x.coords()); }

std::vector<double> grad_phi(const SymMatrix& a, const SpherePoint& x) {
  auto g = apply(a, x.coords());
  const double q = dot(g, x.coords());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= q * x.coords()[i];
  return g;
}

Matrix tangent_basis(const SpherePoint& x) {
  const auto c = x.coords();
  const std::size_t n = c.size();
  // w = x + sign(x_0) e_1 avoids cancellation; H = I - 2 w w^T / (w, w).
  std::vector<double> w(c.begin(), c.end());
  w[0] += c[0] >= 0.0 ? 1.0 : -1.0;
  const double ww = dot(w, w);
  Matrix basis(n, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) basis(i, j - 1) = (i == j ? 1.0 : 0.0) - 2.0 * w[i] * w[j] / ww;
  return basis;
}

Matrix hess_phi(const SymMatrix& a, const SpherePoint& x) {
  const Matrix b = tangent_basis(x);
  const double q = dot(apply(a, x.coords()), x.coords());
  Matrix h = b.transpose() * a.to_dense() * b;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t j = i + 1; j < h.cols(); ++j) h(i, j) = h(j, i) = 0.5 * (h(i, j) + h(j, i));
    h(i, i) -= q;
  }
  return h;
}

int morse_index(const SymMatrix& a, const SpherePoint& x) {
  if (a.dim() == 1) return 0;
  const auto eig = symmetric_eigen(hess_phi(a, x));
  return static_cast<int>(std::count_if(eig.values.begin(), eig.values.end(), [](double l) { return l < 0.0; }));
}

double min_eigenvalue_gap(const SymMatrix& a) {
  const auto lambda = eigenvalues(a);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < lambda.size(); ++k) gap = std::min(gap, lambda[k] - lambda[k - 1]);
  return gap;
}

namespace {

// One Newton run; returns the converged point or nothing.
std::optional<SpherePoint> newton_on_sphere(const SymMatrix& a, SpherePoint x, const FinderOptions& opt,
                                            double scale) {
  const std::size_t n = a.dim();
  for (int it = 0; it < opt.max_iterations; ++it) {
    const auto g = grad_phi(a, x);
    const double gnorm = norm(g);
    if (gnorm < opt.tol) return x;
    const Matrix basis = tangent_basis(x);
    const Matrix h = hess_phi(a, x);
    std::vector<double> gt(n - 1, 0.0);
    for (std::size_t j = 0; j + 1 < n; ++j)
      for (std::size_t i = 0; i < n; ++i) gt[j] += basis(i, j) * g[i];

    std::vector<double> step(n, 0.0);
    bool newton_ok = false;
    try {
      auto rhs = gt;
      for (double& r : rhs) r = -r;
      const auto xi = solve(h, rhs);
      double xi_norm = norm(xi);
      if (std::isfinite(xi_norm)) {
        // Damp long steps; the retraction only sees directions up to ~pi/2.
        const double damp = xi_norm > 1.0 ? 1.0 / xi_norm : 1.0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j + 1 < n; ++j) step[i] += damp * basis(i, j) * xi[j];
        newton_ok = true;
      }
    } catch (const std::domain_error&) {
    }
    if (!newton_ok)
      for (std::size_t i = 0; i < n; ++i) step[i] = -g[i] / scale;

    std::vector<double> next(x.coords().begin(), x.coords().end());
    for (std::size_t i = 0; i < n; ++i) next[i] += step[i];
    x = SpherePoint(std::move(next));
  }
  if (norm(grad_phi(a, x)) < opt.tol) return x;
  return std::nullopt;
}

double distance(const SpherePoint& p, const SpherePoint& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.ambient_dim(); ++i) {
    const double d = p.coords()[i] - q.coords()[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const SymMatrix& a, Stream& rng, FinderOptions options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("find_critical_points: tol must be positive");
  const std::size_t n = a.dim();
  const std::size_t expected = 2 * n;
  const double gap = min_eigenvalue_gap(a);
  if (n > 1 && !(gap > default_degeneracy_tol(a)))
    throw DegenerateInputError("find_critical_points: matrix is not simple (eigenvalue gap " + std::to_string(gap) +
                               ")");
  const std::size_t m = n - 1;
  const std::size_t n_starts = options.n_starts ? options.n_starts : 20 * (m + 1) * (m + 2);
  const double scale = 1.0 + a.frobenius_norm();
  const double dedup = std::sqrt(options.tol);

  std::vector<SpherePoint> found;
  const auto record = [&](const SpherePoint& p) {
    for (const auto& q : found)
      if (distance(p, q) < dedup) return;
    found.push_back(p);
  };

  if (n == 1) {
    found.push_back(SpherePoint({1.0}));
    found.push_back(SpherePoint({-1.0}));
  }
  // Newton commutes with x -> -x, so each start also certifies the antipode.
  for (std::size_t s = 0; s < n_starts && found.size() < expected; s += 2) {
    std::vector<double> start(n);
    for (double& c : start) c = rng.normal();
    if (!(norm(start) > 0.0)) continue;
    const auto p = newton_on_sphere(a, SpherePoint(std::move(start)), options, scale);
    if (!p) continue;
    record(*p);
    record(p->antipode());
  }
  if (found.size() != expected) throw IncompleteSearchError(found.size(), expected);

  std::vector<CriticalPoint> out;
  out.reserve(found.size());
  for (const auto& p : found)
    out.push_back({p, 2.0 * phi(a, p), norm(grad_phi(a, p)), morse_index(a, p)});
  std::sort(out.begin(), out.end(), [](const CriticalPoint& x, const CriticalPoint& y) {
    if (x.value != y.value) return x.value < y.value;
    return std::lexicographical_compare(x.point.coords().begin(), x.point.coords().end(), y.point.coords().begin(),
                                        y.point.coords().end());
  });
  return out;
}

PointMeasure discriminant_measure(const SymMatrix& a, DiscriminantMethod method, Stream* rng) {
  const double tol = default_degeneracy_tol(a);
  if (method == DiscriminantMethod::analytic) return spectral_measure(a, tol).scaled(2.0);
  if (rng == nullptr) throw std::invalid_argument("discriminant_measure: search method needs a random stream");
  const auto points = find_critical_points(a, *rng);
  std::vector<double> values;
  values.reserve(points.size());
  for (const auto& cp : points) values.push_back(cp.value);
  return PointMeasure::from_points(values).merged(tol);
}

std::vector<IndexedValue> morse_index_spectrum(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n > 1 && !(min_eigenvalue_gap(a) > default_degeneracy_tol(a)))
    throw DegenerateInputError("morse_index_spectrum: matrix is not simple");
  const auto eig = eigen_decomposition(a);
  std::vector<IndexedValue> out;
  for (std::size_t k = 0; k < n; ++k) {
    const SpherePoint p(eig.vectors.column(k));
    out.push_back({eig.values[k], morse_index(a, p)});
    out.push_back({eig.values[k], morse_index(a, p.antipode())});
  }
  return out;
}

}  // namespace mehtalab
