#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "common.hpp"

namespace bandlim {

// Nodes and weights on [-1, 1], nodes ascending.
struct quad_rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// (P_m(x), P_m'(x)), classical normalization
inline std::pair<double, double> legendre_value_deriv(int m, double x) {
  if (m == 0) return {1.0, 0.0};
  double pm1 = 1.0, p = x;
  for (int k = 1; k < m; ++k) {
    double pn = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
    pm1 = p;
    p = pn;
  }
  double dp = m * (x * p - pm1) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace detail

// Gauss-Legendre rule of order m, cached. Roots by Newton iteration on P_m
// from Chebyshev-angle initial guesses; weights 2 / ((1-x^2) P_m'(x)^2).
inline const quad_rule& gauss_legendre(int m) {
  if (m < 1 || m > 4096) throw std::invalid_argument("gauss_legendre: order must be in [1, 4096]");
  static std::map<int, quad_rule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  quad_rule r;
  r.nodes.assign(m, 0.0);
  r.weights.assign(m, 0.0);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (m + 0.5));
    for (int step = 0; step < 64; ++step) {
      auto [p, dp] = detail::legendre_value_deriv(m, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, dp] = detail::legendre_value_deriv(m, x);
    (void)p;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[m - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[m - 1 - i] = w;
    r.weights[i] = w;
  }
  return cache.emplace(m, std::move(r)).first->second;
}

// Integral of f over [a, b]. Long intervals are split into panels of width
// about 2 so a fixed-order rule keeps resolving moderate oscillation.
template <class F>
double integrate(F&& f, double a, double b, int m = 64) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return 0.0;
  const quad_rule& r = gauss_legendre(m);
  int panels = (b - a > 4.0) ? static_cast<int>(std::ceil((b - a) / 2.0)) : 1;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double pa = a + (b - a) * p / panels;
    double pb = a + (b - a) * (p + 1) / panels;
    double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
    double s = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * f(c + h * r.nodes[j]);
    total += s * h;
  }
  return total;
}

// Integral of f over [a, b] when f oscillates at angular frequency up to
// `freq` (radians per unit length). Panel width is chosen so the rule sees
// at least ~8 nodes per oscillation period.
template <class F>
double integrate_oscillatory(F&& f, double a, double b, double freq, int m = 64) {
  if (!(a <= b)) throw std::invalid_argument("integrate_oscillatory: requires a <= b");
  if (a == b) return 0.0;
  double width = 2.0;
  if (freq > 0.0) width = std::min(width, pi * m / (4.0 * freq));
  int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  const quad_rule& r = gauss_legendre(m);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double pa = a + (b - a) * p / panels;
    double pb = a + (b - a) * (p + 1) / panels;
    double c = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
    double s = 0.0;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) s += r.weights[j] * f(c + h * r.nodes[j]);
    total += s * h;
  }
  return total;
}

// Same, but additionally splits at interior breakpoints (kinks or jumps of
// the integrand), so each smooth piece is integrated by closed panels.
template <class F>
double integrate_piecewise(F&& f, double a, double b, const std::vector<double>& breakpoints,
                           double freq = 0.0, int m = 64) {
  std::vector<double> cuts{a};
  for (double t : breakpoints)
    if (t > a && t < b) cuts.push_back(t);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate_oscillatory(f, cuts[i], cuts[i + 1], freq, m);
  return total;
}

// Gauss-Chebyshev: integral of g(x) (1-x^2)^{-1/2} dx over (-1,1)
// as (pi/m) * sum g(cos((2j+1)pi/2m)).
template <class F>
double integrate_chebyshev_weighted(F&& g, int m = 256) {
  if (m < 1) throw std::invalid_argument("integrate_chebyshev_weighted: order must be positive");
  double s = 0.0;
  for (int j = 0; j < m; ++j) s += g(std::cos((2.0 * j + 1.0) * pi / (2.0 * m)));
  return s * pi / m;
}

// tanh-sinh rule on (-1, 1); robust to integrable endpoint singularities.
// Doubles the node density until two successive levels agree. Caveat: with
// double-precision abscissas the distance to the endpoints saturates near
// 1e-16, so inverse-square-root singularities converge only to ~1e-8; for
// the Chebyshev weight prefer integrate_chebyshev_weighted, which treats
// the weight analytically.
template <class F>
double integrate_tanh_sinh(F&& f, double rel_tol = 1e-12, int max_level = 12) {
  const double tmax = 6.1;  // 1 - |x| underflows past this
  double h = 1.0;
  double sum = (pi / 2.0) * f(0.0);
  for (double t = h; t <= tmax; t += h) {
    double u = (pi / 2.0) * std::sinh(t);
    double x = std::tanh(u);
    double w = (pi / 2.0) * std::cosh(t) / (std::cosh(u) * std::cosh(u));
    if (1.0 - x * x <= 0.0 || w < 1e-320) break;
    sum += w * (f(x) + f(-x));
  }
  double prev = sum * h;
  double result = prev;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    // new abscissas at odd multiples of h
    double add = 0.0;
    for (double t = h; t <= tmax; t += 2.0 * h) {
      double u = (pi / 2.0) * std::sinh(t);
      double x = std::tanh(u);
      double w = (pi / 2.0) * std::cosh(t) / (std::cosh(u) * std::cosh(u));
      if (1.0 - x * x <= 0.0 || w < 1e-320) break;
      add += w * (f(x) + f(-x));
    }
    sum += add;
    result = sum * h;
    if (level >= 4 && std::abs(result - prev) <= rel_tol * std::max(1.0, std::abs(result))) break;
    prev = result;
  }
  return result;
}

}  // namespace bandlim
