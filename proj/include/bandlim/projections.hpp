#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"
#include "concentration.hpp"
#include "orthopoly.hpp"
#include "quadrature.hpp"

namespace bandlim {

enum class basis_kind { hermite, scaled_hermite, legendre, chebyshev };

struct basis_spec {
  basis_kind kind = basis_kind::hermite;
  double alpha = 1.0;  // dilation; only meaningful for scaled_hermite

  static basis_spec hermite() { return {basis_kind::hermite, 1.0}; }
  static basis_spec scaled_hermite(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("basis_spec: alpha must be positive");
    return {basis_kind::scaled_hermite, a};
  }
  static basis_spec legendre() { return {basis_kind::legendre, 1.0}; }
  static basis_spec chebyshev() { return {basis_kind::chebyshev, 1.0}; }

  double dilation() const { return kind == basis_kind::scaled_hermite ? alpha : 1.0; }
};

// Orthonormal-basis expansion up to the given order (inclusive).
// Hermite coefficients are against alpha^{-1/2} h_k(x/alpha) on the line;
// Legendre against sqrt(k+1/2) P_k on (-1,1); Chebyshev against the
// dmu-orthonormal cos(k acos x) family.
struct expansion {
  basis_spec basis;
  int order = 0;
  std::vector<double> coeffs;
};

namespace detail {

// Composite panels of [a,b] split at the given interior breakpoints, each
// panel narrow enough for >= 8 quadrature nodes per oscillation at `freq`.
inline void for_each_gl_node(double a, double b, const std::vector<double>& breakpoints,
                             double freq, int m, const std::function<void(double, double)>& visit) {
  std::vector<double> cuts{a};
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  const auto& rule = gauss_legendre(m);
  double width = 2.0;
  if (freq > 0.0) width = std::min(width, pi * m / (4.0 * freq));
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    double lo = cuts[p], hi = cuts[p + 1];
    if (!(hi > lo)) continue;
    int panels = static_cast<int>(std::ceil((hi - lo) / width));
    panels = std::max(panels, 1);
    double h = (hi - lo) / panels;
    for (int q = 0; q < panels; ++q) {
      double u = lo + q * h, v = u + h;
      double mid = 0.5 * (u + v), half = 0.5 * (v - u);
      for (int j = 0; j < m; ++j)
        visit(mid + half * rule.nodes[static_cast<size_t>(j)],
              half * rule.weights[static_cast<size_t>(j)]);
    }
  }
}

}  // namespace detail

// Compute expansion coefficients of the signal by quadrature. For the
// Hermite families the integration interval defaults to the signal support,
// or to [-R, R] with R past both the basis turning point and the signal's
// effective decay range; pass `interval` to override.
inline expansion expand(const signal& f, basis_spec b, int order,
                        std::optional<std::pair<double, double>> interval = std::nullopt) {
  if (order < 0) throw std::invalid_argument("expand: negative order");
  expansion e{b, order, std::vector<double>(static_cast<size_t>(order) + 1, 0.0)};
  double lam = std::sqrt(2.0 * order + 1.0);

  if (b.kind == basis_kind::hermite || b.kind == basis_kind::scaled_hermite) {
    double alpha = b.dilation();
    double a0, b0;
    if (interval) {
      a0 = interval->first;
      b0 = interval->second;
    } else if (f.support_radius) {
      a0 = -*f.support_radius;
      b0 = *f.support_radius;
    } else {
      double R = alpha * lam + 10.0 * alpha + 14.0;
      a0 = -R;
      b0 = R;
    }
    if (!(b0 > a0)) throw std::invalid_argument("expand: empty interval");
    double freq = std::max(f.osc_freq, lam / alpha);
    double scale = 1.0 / std::sqrt(alpha);
    detail::for_each_gl_node(a0, b0, f.breakpoints, freq, 64, [&](double x, double w) {
      double fx = f.f(x);
      if (fx == 0.0) return;
      auto batch = hermite_functions(order, x / alpha);
      double s = w * fx * scale;
      for (int k = 0; k <= order; ++k)
        e.coeffs[static_cast<size_t>(k)] += s * batch.values[static_cast<size_t>(k)];
    });
    return e;
  }

  if (b.kind == basis_kind::legendre) {
    double freq = std::max(f.osc_freq, 1.5 * (order + 1));
    std::vector<double> vals(static_cast<size_t>(order) + 1), ders(static_cast<size_t>(order) + 1);
    detail::for_each_gl_node(-1.0, 1.0, f.breakpoints, freq, 64, [&](double x, double w) {
      double fx = f.f(x);
      if (fx == 0.0) return;
      legendre_all(order, x, vals, ders);
      for (int k = 0; k <= order; ++k)
        e.coeffs[static_cast<size_t>(k)] +=
            w * fx * std::sqrt(k + 0.5) * vals[static_cast<size_t>(k)];
    });
    return e;
  }

  // Chebyshev, in theta space: coeff_k = Int_0^pi f(cos t) nu_k cos(k t) dt
  // with nu_0 = pi^{-1/2}, nu_k = (2/pi)^{1/2}
  std::vector<double> theta_breaks;
  for (double bp : f.breakpoints)
    if (bp > -1.0 && bp < 1.0) theta_breaks.push_back(std::acos(bp));
  double freq = std::max(static_cast<double>(order + 1), f.osc_freq);
  detail::for_each_gl_node(0.0, pi, theta_breaks, freq, 64, [&](double t, double w) {
    double fx = f.f(std::cos(t));
    if (fx == 0.0) return;
    double ct = std::cos(t);
    double ck2 = std::cos(2.0 * t);  // cos(k t) by recurrence
    e.coeffs[0] += w * fx / std::sqrt(pi);
    if (e.order >= 1) {
      double nu = std::sqrt(2.0 / pi);
      e.coeffs[1] += w * fx * nu * ct;
      double prev = ct, cur = ck2;
      for (int k = 2; k <= e.order; ++k) {
        e.coeffs[static_cast<size_t>(k)] += w * fx * nu * cur;
        double next = 2.0 * ct * cur - prev;
        prev = cur;
        cur = next;
      }
    }
  });
  return e;
}

// Evaluate an expansion by backward (Clenshaw-style) recurrence.
inline double eval_expansion(const expansion& e, double x) {
  const auto& a = e.coeffs;
  int n = e.order;
  if (a.size() != static_cast<size_t>(n) + 1)
    throw std::invalid_argument("eval_expansion: coefficient count does not match order");

  if (e.basis.kind == basis_kind::hermite || e.basis.kind == basis_kind::scaled_hermite) {
    double alpha = e.basis.dilation();
    double u = x / alpha;
    if (u * u > 1200.0) {
      // Clenshaw would pair a huge b_0 with an underflowing h_0; use the
      // scaled batch directly
      auto batch = hermite_functions(n, u);
      double s = 0.0;
      for (int k = 0; k <= n; ++k) s += a[static_cast<size_t>(k)] * batch.values[static_cast<size_t>(k)];
      return s / std::sqrt(alpha);
    }
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 0; --k) {
      double bk = a[static_cast<size_t>(k)] + u * std::sqrt(2.0 / (k + 1.0)) * b1 -
                  std::sqrt((k + 1.0) / (k + 2.0)) * b2;
      b2 = b1;
      b1 = bk;
    }
    double h0 = std::pow(pi, -0.25) * std::exp(-0.5 * u * u);
    return b1 * h0 / std::sqrt(alpha);
  }

  if (std::abs(x) > 1.0 + 1e-12)
    throw std::domain_error("eval_expansion: |x| > 1 for an interval basis");
  x = std::clamp(x, -1.0, 1.0);

  if (e.basis.kind == basis_kind::legendre) {
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 0; --k) {
      double bk = a[static_cast<size_t>(k)] * std::sqrt(k + 0.5) +
                  (2.0 * k + 1.0) * x / (k + 1.0) * b1 - (k + 1.0) / (k + 2.0) * b2;
      b2 = b1;
      b1 = bk;
    }
    return b1;
  }

  // Chebyshev: fold the orthonormal scaling into the T-coefficients
  double nu = std::sqrt(2.0 / pi);
  double b1 = 0.0, b2 = 0.0;
  for (int k = n; k >= 1; --k) {
    double bk = a[static_cast<size_t>(k)] * nu + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = bk;
  }
  double a0 = a[0] / std::sqrt(pi);
  return a0 + x * b1 - b2;
}

enum class norm_kind { l2, linf };

// ||f - S||: L2 by piecewise quadrature, Linf on a dense inclusive grid of
// grid_m points.
inline double error_norm(const signal& f, const expansion& e, norm_kind p, double a, double b,
                         int grid_m = 2001) {
  if (!(b > a)) throw std::invalid_argument("error_norm: empty interval");
  double lam = std::sqrt(2.0 * e.order + 1.0);
  double basis_freq = (e.basis.kind == basis_kind::legendre || e.basis.kind == basis_kind::chebyshev)
                          ? 1.5 * (e.order + 1)
                          : lam / e.basis.dilation();
  if (p == norm_kind::linf) {
    if (grid_m < 2) throw std::invalid_argument("error_norm: grid_m must be at least 2");
    double mx = 0.0;
    for (int i = 0; i < grid_m; ++i) {
      double x = a + (b - a) * i / (grid_m - 1);
      mx = std::max(mx, std::abs(f.f(x) - eval_expansion(e, x)));
    }
    return mx;
  }
  double total = 0.0;
  detail::for_each_gl_node(a, b, f.breakpoints, std::max(f.osc_freq, basis_freq), 64,
                           [&](double x, double w) {
                             double r = f.f(x) - eval_expansion(e, x);
                             total += w * r * r;
                           });
  return std::sqrt(std::max(total, 0.0));
}

// Chebyshev-weighted L2 error over (-1,1), computed in theta space where the
// weight is flat.
inline double error_norm_weighted(const signal& f, const expansion& e) {
  std::vector<double> theta_breaks;
  for (double bp : f.breakpoints)
    if (bp > -1.0 && bp < 1.0) theta_breaks.push_back(std::acos(bp));
  double freq = std::max(static_cast<double>(e.order + 1), f.osc_freq);
  double total = 0.0;
  detail::for_each_gl_node(0.0, pi, theta_breaks, freq, 64, [&](double t, double w) {
    double x = std::cos(t);
    double r = f.f(x) - eval_expansion(e, x);
    total += w * r * r;
  });
  return std::sqrt(std::max(total, 0.0));
}

// An a-priori error bound next to its measured counterpart, with the named
// pieces it was assembled from and whether the regime hypotheses held.
struct error_budget {
  double empirical = std::numeric_limits<double>::quiet_NaN();
  double theoretical = 0.0;
  bool regime_ok = false;
  std::vector<std::pair<std::string, double>> components;
};

// Hermite projection bound on [-T,T] (relative to ||f||):
//   2 eps_T + eps_W + 34 T^3 / sqrt(2n+1),
// certified when T >= 2 and n >= max(2T^2, 2W^2).
inline error_budget bound_hermite(double eps_time, double eps_band, double T, int n,
                                  double Omega) {
  if (n < 0) throw std::invalid_argument("bound_hermite: negative order");
  if (!(T > 0.0)) throw std::invalid_argument("bound_hermite: T must be positive");
  double resid = 34.0 * T * T * T / std::sqrt(2.0 * n + 1.0);
  error_budget b;
  b.components = {{"2*eps_time", 2.0 * eps_time},
                  {"eps_band", eps_band},
                  {"kernel_residual", resid}};
  b.theoretical = 2.0 * eps_time + eps_band + resid;
  b.regime_ok = (T >= 2.0) && std::isfinite(Omega) &&
                (n >= std::max(2.0 * T * T, 2.0 * Omega * Omega));
  return b;
}

// Practical variant with a measured kernel-residual L2 norm in place of the
// printed envelope: eps_W + hs_norm + 2 eps_T.
inline double bound_hermite_practical(double eps_time, double eps_band, double hs_norm) {
  return eps_band + hs_norm + 2.0 * eps_time;
}

// Dilated-basis bound. eps_band_scaled and c_scaled describe the dilated
// signal f(alpha .): its band radius is alpha times the original one. The
// budget carries both the stated single-eps_T reading and the conservative
// doubled one; `theoretical` is the conservative total.
inline error_budget bound_scaled(double eps_time, double eps_band_scaled, double T, double alpha,
                                 int n, double c_scaled) {
  if (n < 0) throw std::invalid_argument("bound_scaled: negative order");
  if (!(T > 0.0 && alpha > 0.0))
    throw std::invalid_argument("bound_scaled: T and alpha must be positive");
  double Ta = T / alpha;
  double resid = 34.0 * Ta * Ta * Ta / std::sqrt(2.0 * n + 1.0);
  error_budget b;
  b.components = {{"eps_time", eps_time},
                  {"2*eps_time", 2.0 * eps_time},
                  {"eps_band_scaled", eps_band_scaled},
                  {"kernel_residual", resid},
                  {"stated_total", eps_time + eps_band_scaled + resid}};
  b.theoretical = 2.0 * eps_time + eps_band_scaled + resid;
  b.regime_ok = (Ta >= 2.0) && std::isfinite(c_scaled) &&
                (n >= std::max(2.0 * Ta * Ta, 2.0 * c_scaled * c_scaled));
  return b;
}

// A bound evaluated in the log domain; `underflowed` marks totals below the
// smallest positive normal double, reported as an exact 0.
struct bound_value {
  double value = 0.0;
  bool underflowed = false;
};

namespace detail {
inline bound_value from_log(double ln_value) {
  if (ln_value < -744.0) return {0.0, true};
  return {std::exp(ln_value), false};
}
}  // namespace detail

// |<f_c, sqrt(k+1/2) P_k>| <= (2/sqrt(2k+1)) sqrt(e/(pi c)) (e c/(2k+3))^{k+1}
// Valid for c >= pi: the measured-to-bound ratio climbs to sqrt(pi/c) as
// k grows (from below), so the inequality genuinely fails for smaller c
// (e.g. c=2 exceeds the bound by ~1.23x at k=80).
inline bound_value bound_legendre_coeff(double c, int k) {
  if (!(c > 0.0)) throw std::invalid_argument("bound_legendre_coeff: c must be positive");
  if (!(c >= pi)) throw regime_error("bound_legendre_coeff: needs c >= pi");
  if (k < 0) throw std::invalid_argument("bound_legendre_coeff: negative degree");
  double ln = std::log(2.0) - 0.5 * std::log(2.0 * k + 1.0) + 0.5 * (1.0 - std::log(pi * c)) +
              (k + 1.0) * (1.0 + std::log(c) - std::log(2.0 * k + 3.0));
  return detail::from_log(ln);
}

// |<f_c, T_k>_dmu| <= (2/sqrt((2k+1) c)) (e c/(2(k+1)))^{k+1}.
// The leading factor must be 2, not 1: the half-size variant understates the
// true coefficient asymptotics by exactly the weighted-identity constant and
// is crossed once k is large (already 2.5x too small at c=2). Like the
// Legendre bound this holds for c >= pi; the ratio limit is sqrt(pi/c).
inline bound_value bound_chebyshev_coeff(double c, int k) {
  if (!(c > 0.0)) throw std::invalid_argument("bound_chebyshev_coeff: c must be positive");
  if (!(c >= pi)) throw regime_error("bound_chebyshev_coeff: needs c >= pi");
  if (k < 0) throw std::invalid_argument("bound_chebyshev_coeff: negative degree");
  double ln = std::log(2.0) - 0.5 * std::log((2.0 * k + 1.0) * c) +
              (k + 1.0) * (1.0 + std::log(c) - std::log(2.0 * (k + 1.0)));
  return detail::from_log(ln);
}

// Legendre tail of f_c past degree N, valid for N >= e c / 2:
//   Linf: sqrt(c/(2N+5)) (e c/(2N+5))^N      L2: sqrt(c) (e c/(2N+5))^{N+1}
inline bound_value bound_legendre_tail(double c, int N, norm_kind p) {
  if (!(c > 0.0)) throw std::invalid_argument("bound_legendre_tail: c must be positive");
  if (!(N >= std::exp(1.0) * c / 2.0))
    throw regime_error("bound_legendre_tail: needs N >= e*c/2");
  double body = 1.0 + std::log(c) - std::log(2.0 * N + 5.0);
  double ln = (p == norm_kind::linf)
                  ? 0.5 * (std::log(c) - std::log(2.0 * N + 5.0)) + N * body
                  : 0.5 * std::log(c) + (N + 1.0) * body;
  return detail::from_log(ln);
}

enum class tail_scope { on_interval, global };

// Legendre budget for an almost time- and band-limited signal (band radius
// c): on (-1,1) the defect costs 2 eps_W; globally an extra eps_T enters.
inline error_budget bound_legendre_almost(double c, int N, double eps_time, double eps_band,
                                          tail_scope scope) {
  error_budget b;
  bound_value tail = bound_legendre_tail(c, N, norm_kind::l2);
  b.components = {{"eps_band", eps_band}, {"legendre_tail", tail.value}};
  if (scope == tail_scope::global) {
    b.components.insert(b.components.begin(), {"eps_time", eps_time});
    b.theoretical = eps_time + 2.0 * eps_band + tail.value;
  } else {
    b.theoretical = 2.0 * eps_band + tail.value;
  }
  b.regime_ok = true;  // the tail regime N >= e c/2 was checked above
  return b;
}

// Weighted Chebyshev tail of f_c past degree N, same regime:
//   (e sqrt(c) / (2(2N+3))) (c e/(2N+4))^{N+1}
inline bound_value bound_chebyshev_tail(double c, int N) {
  if (!(c > 0.0)) throw std::invalid_argument("bound_chebyshev_tail: c must be positive");
  if (!(N >= std::exp(1.0) * c / 2.0))
    throw regime_error("bound_chebyshev_tail: needs N >= e*c/2");
  double ln = 1.0 + 0.5 * std::log(c) - std::log(2.0 * (2.0 * N + 3.0)) +
              (N + 1.0) * (1.0 + std::log(c) - std::log(2.0 * N + 4.0));
  return detail::from_log(ln);
}

// Exact-identity routes to the expansion coefficients of f_c(t)=sin(ct)/(ct):
// the Fourier representation turns the Legendre coefficient into a spherical
// Bessel average and the weighted Chebyshev one into a cylindrical Bessel
// average. Odd degrees vanish by parity.

// <f_c, sqrt(k+1/2) P_k> on (-1,1)
inline double bandlimited_legendre_coeff(double c, int k) {
  if (!(c > 0.0)) throw std::invalid_argument("bandlimited_legendre_coeff: c must be positive");
  if (k < 0) throw std::invalid_argument("bandlimited_legendre_coeff: negative degree");
  if (k % 2 == 1) return 0.0;
  double I = 2.0 * integrate_oscillatory([c, k](double u) { return sph_bessel_j(k, c * u); }, 0.0,
                                         1.0, c, 64);
  double sign = (k % 4 == 0) ? 1.0 : -1.0;
  return sign * std::sqrt(k + 0.5) * I;
}

// <f_c, T_k>_dmu (classical T_k)
inline double bandlimited_chebyshev_coeff(double c, int k) {
  if (!(c > 0.0)) throw std::invalid_argument("bandlimited_chebyshev_coeff: c must be positive");
  if (k < 0) throw std::invalid_argument("bandlimited_chebyshev_coeff: negative degree");
  if (k % 2 == 1) return 0.0;
  double I = 2.0 * integrate_oscillatory([c, k](double u) { return cyl_bessel_j_int(k, c * u); },
                                         0.0, 1.0, c, 64);
  double sign = (k % 4 == 0) ? 1.0 : -1.0;
  return sign * 0.5 * kappa_chebyshev * I;
}

// Measured tails of f_c summed over the coefficient route (Pythagoras), which
// stays accurate far below the cancellation floor of direct quadrature.
inline double bandlimited_legendre_tail_l2(double c, int N, int k_max = 250) {
  if (N < 0) throw std::invalid_argument("bandlimited_legendre_tail_l2: negative degree");
  double s = 0.0;
  for (int k = N + 1; k <= k_max; ++k) {
    double v = bandlimited_legendre_coeff(c, k);
    s += v * v;
  }
  return std::sqrt(s);
}

inline double bandlimited_chebyshev_tail_weighted(double c, int N, int k_max = 250) {
  if (N < 0) throw std::invalid_argument("bandlimited_chebyshev_tail_weighted: negative degree");
  double nu2 = 2.0 / pi;  // ||T_k||_dmu^{-2} for k >= 1
  double s = 0.0;
  for (int k = N + 1; k <= k_max; ++k) {
    double v = bandlimited_chebyshev_coeff(c, k);
    s += nu2 * v * v;
  }
  return std::sqrt(s);
}

}  // namespace bandlim
