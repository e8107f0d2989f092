#include "mehtalab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace mehtalab {

namespace {

// Kronrod abscissae and weights; Gauss weights pair with the odd Kronrod nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const Integrand1D& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    kronrod += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  // QUADPACK error heuristic.
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  resasc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  double resabs = kWgk[7] * std::abs(fc);
  for (int j = 0; j < 7; ++j) resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
  resabs *= std::abs(half);
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return {a, b, kronrod * half, err};
}

}  // namespace

QuadratureResult integrate(const Integrand1D& f, double a, double b, double abs_tol, double rel_tol,
                           std::size_t max_intervals) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, a, b));
  out.evaluations = 15;
  double total = heap.top().value;
  double error = heap.top().error;
  while (error > std::max(abs_tol, rel_tol * std::abs(total)) && heap.size() < max_intervals) {
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= std::min(worst.a, worst.b) || mid >= std::max(worst.a, worst.b)) break;
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = error;
  out.converged = error <= std::max(abs_tol, rel_tol * std::abs(total));
  return out;
}

QuadratureResult integrate(const Integrand1D& f, double a, double b, std::span<const double> breakpoints,
                           double abs_tol, double rel_tol) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  std::vector<double> cuts{lo};
  for (double p : breakpoints)
    if (p > lo && p < hi) cuts.push_back(p);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult out;
  out.converged = true;
  const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto r = integrate(f, cuts[k], cuts[k + 1], piece_tol, rel_tol);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
  }
  if (b < a) out.value = -out.value;
  return out;
}

namespace {

struct ChamberIntegrator {
  const IntegrandND& f;
  std::size_t m;
  double half_width;
  std::span<const double> breakpoints;
  std::vector<double> point;
  std::size_t evaluations = 0;
  bool converged = true;
  double top_error = 0.0;

  // Integrates coordinates k..m-1 over lower <= l_k <= ... <= L.
  double level(std::size_t k, double lower, double tol) {
    if (k == m) {
      ++evaluations;
      return f(point);
    }
    const double inner_tol = tol / (20.0 * half_width);
    const auto r = integrate(
        [&](double x) {
          point[k] = x;
          return level(k + 1, x, inner_tol);
        },
        lower, half_width, breakpoints, tol);
    converged = converged && r.converged;
    if (k == 0) top_error = r.error;
    return r.value;
  }
};

}  // namespace

QuadratureResult integrate_symmetric(const IntegrandND& f, std::size_t m, double half_width,
                                     std::span<const double> breakpoints, double abs_tol) {
  if (m == 0) throw std::invalid_argument("integrate_symmetric: m must be positive");
  if (!(half_width > 0.0)) throw std::invalid_argument("integrate_symmetric: half_width must be positive");
  double factorial = 1.0;
  for (std::size_t k = 2; k <= m; ++k) factorial *= static_cast<double>(k);
  ChamberIntegrator chamber{f, m, half_width, breakpoints, std::vector<double>(m)};
  QuadratureResult out;
  out.value = factorial * chamber.level(0, -half_width, abs_tol / factorial);
  out.error = factorial * chamber.top_error;
  out.converged = chamber.converged;
  out.evaluations = chamber.evaluations;
  return out;
}

}  // namespace mehtalab
