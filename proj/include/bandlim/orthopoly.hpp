#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "common.hpp"

namespace bandlim {

enum class poly_norm { classical, orthonormal };

// Constant kappa in the weighted finite Fourier identity
//   integral over (-1,1) of e^{ixy} T_k(y) (1-y^2)^{-1/2} dy = i^k kappa J_k(x).
// Fixed by k = 0, x = 0 (the integral is then the full Chebyshev measure, pi)
// and confirmed numerically to 36 digits; data/orthopoly_constants.txt records
// the measurement next to the alternate printed value pi/2 that circulates.
inline constexpr double kappa_chebyshev = pi;

// ---------------------------------------------------------------------------
// Legendre and Chebyshev polynomials
// ---------------------------------------------------------------------------

// P_k(x) by the three-term recurrence; the orthonormal flavor multiplies by
// sqrt(k + 1/2) so the L^2(-1,1) norm is 1.
inline double legendre(int k, double x, poly_norm norm = poly_norm::classical) {
  if (k < 0) throw std::invalid_argument("legendre: negative degree");
  double p = 1.0;
  if (k >= 1) {
    double pm1 = 1.0;
    p = x;
    for (int j = 1; j < k; ++j) {
      double pn = ((2.0 * j + 1.0) * x * p - j * pm1) / (j + 1.0);
      pm1 = p;
      p = pn;
    }
  }
  if (norm == poly_norm::orthonormal) p *= std::sqrt(k + 0.5);
  return p;
}

// All of P_0..P_K and their derivatives at one interior point (classical
// normalization); used for Rayleigh quotients of differential operators.
inline void legendre_all(int K, double x, std::vector<double>& values,
                         std::vector<double>& derivs) {
  if (K < 0) throw std::invalid_argument("legendre_all: negative degree");
  values.assign(K + 1, 0.0);
  derivs.assign(K + 1, 0.0);
  values[0] = 1.0;
  if (K == 0) return;
  values[1] = x;
  derivs[1] = 1.0;
  for (int j = 1; j < K; ++j)
    values[j + 1] = ((2.0 * j + 1.0) * x * values[j] - j * values[j - 1]) / (j + 1.0);
  double om = 1.0 - x * x;
  if (om <= 0.0) throw std::invalid_argument("legendre_all: derivative recurrence needs |x| < 1");
  // (1 - x^2) P_k' = k (P_{k-1} - x P_k)
  for (int j = 2; j <= K; ++j) derivs[j] = j * (values[j - 1] - x * values[j]) / om;
}

// T_k(x) = cos(k arccos x) for |x| <= 1 (+1e-12 slack, clamped).
// The orthonormal flavor scales to unit norm in the Chebyshev measure:
// sqrt(1/pi) for k = 0 and sqrt(2/pi) otherwise.
inline double chebyshev(int k, double x, poly_norm norm = poly_norm::classical) {
  if (k < 0) throw std::invalid_argument("chebyshev: negative degree");
  if (std::abs(x) > 1.0 + 1e-12) throw std::invalid_argument("chebyshev: |x| > 1");
  x = std::clamp(x, -1.0, 1.0);
  double t = std::cos(k * std::acos(x));
  if (norm == poly_norm::orthonormal) t *= std::sqrt((k == 0 ? 1.0 : 2.0) / pi);
  return t;
}

// ---------------------------------------------------------------------------
// Hermite functions
// ---------------------------------------------------------------------------

// Orthonormal Hermite functions h_0..h_{n_max} at one point x:
//   h_{k+1}(x) = x sqrt(2/(k+1)) h_k(x) - sqrt(k/(k+1)) h_{k-1}(x),
//   h_0(x) = pi^{-1/4} exp(-x^2/2).
// The recurrence runs on mantissas with a shared base-2 exponent: the seed
// underflows double precision long before mid-range orders do (already at
// |x| ~ 39), so each value is materialized via ldexp and flushes to exact 0
// only when the true magnitude is below the denormal range.
struct hermite_values {
  int n_max = 0;
  double x = 0.0;
  std::vector<double> values;  // h_0(x) .. h_{n_max}(x)
};

inline hermite_values hermite_functions(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("hermite_functions: negative order");
  if (!std::isfinite(x)) throw std::invalid_argument("hermite_functions: non-finite x");
  hermite_values out;
  out.n_max = n_max;
  out.x = x;
  out.values.assign(n_max + 1, 0.0);

  const double ln2 = 0.69314718055994530942;
  double l0 = -0.25 * std::log(pi) - 0.5 * x * x;
  long expo = static_cast<long>(std::floor(l0 / ln2));
  double a = std::exp(l0 - expo * ln2);  // h_0 mantissa, in [1, 2)
  auto put = [&](int k, double mant) {
    int e = static_cast<int>(std::clamp<long>(expo, -100000, 100000));
    out.values[k] = std::ldexp(mant, e);
  };
  put(0, a);
  if (n_max == 0) return out;

  double b = x * std::sqrt(2.0) * a;
  put(1, b);
  for (int k = 1; k < n_max; ++k) {
    double c = x * std::sqrt(2.0 / (k + 1.0)) * b - std::sqrt(k / (k + 1.0)) * a;
    a = b;
    b = c;
    double mag = std::max(std::abs(a), std::abs(b));
    if (mag > 1e200) {
      a = std::ldexp(a, -512);
      b = std::ldexp(b, -512);
      expo += 512;
    } else if (mag > 0.0 && mag < 1e-200) {
      a = std::ldexp(a, 512);
      b = std::ldexp(b, 512);
      expo -= 512;
    }
    put(k + 1, b);
  }
  return out;
}

// h_{2p}(0) and h'_{2p+1}(0): the only data the oscillatory main-term
// approximation needs. Log-domain double-factorial ratio keeps p up to 1e5.
struct hermite_center_values {
  double even_at_zero = 0.0;       // h_{2p}(0)
  double odd_deriv_at_zero = 0.0;  // h'_{2p+1}(0)
};

inline hermite_center_values hermite_center(int p) {
  if (p < 0 || p > 100000) throw std::invalid_argument("hermite_center: p out of range");
  // r_p = (2p-1)!!/(2p)!! = C(2p,p)/4^p
  double log_r = std::lgamma(2.0 * p + 1.0) - p * std::log(4.0) - 2.0 * std::lgamma(p + 1.0);
  double sign = (p % 2 == 0) ? 1.0 : -1.0;
  double root = std::exp(0.5 * log_r) * std::pow(pi, -0.25);
  hermite_center_values v;
  v.even_at_zero = sign * root;
  v.odd_deriv_at_zero = sign * std::sqrt(4.0 * p + 2.0) * root;
  return v;
}

// ---------------------------------------------------------------------------
// Bessel functions at integer orders
// ---------------------------------------------------------------------------

namespace detail {

// leading series of j_k for x < 1, log-domain prefactor x^k/(2k+1)!!
inline double sph_bessel_series(int k, double x) {
  double log_pref =
      k * std::log(x) - (std::lgamma(2.0 * k + 2.0) - k * std::log(2.0) - std::lgamma(k + 1.0));
  double series = 1.0, term = 1.0;
  for (int m = 1; m <= 40; ++m) {
    term *= -(x * x / 2.0) / (m * (2.0 * k + 1.0 + 2.0 * m));
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
  }
  if (log_pref < -745.0) return 0.0;
  return std::exp(log_pref) * series;
}

// leading series of J_k for x < 1, prefactor (x/2)^k/k!
inline double cyl_bessel_series(int k, double x) {
  double log_pref = (k == 0 ? 0.0 : k * std::log(x / 2.0)) - std::lgamma(k + 1.0);
  double series = 1.0, term = 1.0;
  for (int m = 1; m <= 40; ++m) {
    term *= -(x * x / 4.0) / (m * (k + static_cast<double>(m)));
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
  }
  if (log_pref < -745.0) return 0.0;
  return std::exp(log_pref) * series;
}

}  // namespace detail

// Spherical Bessel j_k(x). Upward recurrence where stable (x >= k), power
// series for x < 1, otherwise Miller's downward recurrence normalized
// against j_0 (or j_1 near a zero of j_0).
inline double sph_bessel_j(int k, double x) {
  if (k < 0) throw std::invalid_argument("sph_bessel_j: negative order");
  double sign = 1.0;
  if (x < 0.0) {  // j_k(-x) = (-1)^k j_k(x)
    x = -x;
    if (k % 2 == 1) sign = -1.0;
  }
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  double j0 = std::sin(x) / x;
  if (k == 0) return sign * j0;
  double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (k == 1) return sign * j1;
  if (x < 1.0) return sign * detail::sph_bessel_series(k, x);

  if (x >= k) {
    double jm1 = j0, j = j1;
    for (int l = 1; l < k; ++l) {
      double jn = (2.0 * l + 1.0) / x * j - jm1;
      jm1 = j;
      j = jn;
    }
    return sign * j;
  }

  int L = k + 80;
  double jp1 = 0.0, j = 1e-290, target = 0.0, j1_rec = 0.0;
  bool have_target = false, have_j1 = false;
  for (int l = L; l >= 1; --l) {
    double jm1 = (2.0 * l + 1.0) / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (l - 1 == k) {
      target = j;
      have_target = true;
    }
    if (l - 1 == 1) {
      j1_rec = j;
      have_j1 = true;
    }
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      if (have_target) target *= 1e-250;
      if (have_j1) j1_rec *= 1e-250;
    }
  }
  double j0_rec = j;
  double scale = (std::abs(j0) > 1e-3) ? j0 / j0_rec : j1 / j1_rec;
  return sign * target * scale;
}

// Cylindrical J_k(x) by Miller's downward recurrence, normalized with
// J_0(x) + 2 J_2(x) + 2 J_4(x) + ... = 1. Power series for x < 1.
inline double cyl_bessel_j_int(int k, double x) {
  if (k < 0) throw std::invalid_argument("cyl_bessel_j_int: negative order");
  double sign = 1.0;
  if (x < 0.0) {  // J_k(-x) = (-1)^k J_k(x)
    x = -x;
    if (k % 2 == 1) sign = -1.0;
  }
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  if (x < 1.0) return sign * detail::cyl_bessel_series(k, x);

  int L = std::max(k, static_cast<int>(std::ceil(x))) + 60;
  if (L % 2 == 1) ++L;
  double jp1 = 0.0, j = 1e-290, target = 0.0, norm = 0.0;
  bool have_target = false;
  for (int l = L; l >= 1; --l) {
    double jm1 = 2.0 * l / x * j - jp1;
    jp1 = j;  // now holds J_l
    j = jm1;  // now holds J_{l-1}
    if (l % 2 == 0) norm += 2.0 * jp1;
    if (l - 1 == k) {
      target = j;
      have_target = true;
    }
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
      if (have_target) target *= 1e-250;
    }
  }
  norm += j;  // + J_0
  return sign * target / norm;
}

// ---------------------------------------------------------------------------
// Finite Fourier transforms of the two polynomial families
// ---------------------------------------------------------------------------

namespace detail {
inline std::complex<double> i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}
}  // namespace detail

// integral over (-1,1) of e^{ixy} P_k(y) dy = 2 i^k j_k(x)
inline std::complex<double> finite_fourier_legendre(int k, double x) {
  return 2.0 * detail::i_pow(k) * sph_bessel_j(k, x);
}

// integral over (-1,1) of e^{ixy} T_k(y) (1-y^2)^{-1/2} dy = i^k kappa J_k(x)
inline std::complex<double> weighted_finite_fourier_chebyshev(int k, double x) {
  return detail::i_pow(k) * (kappa_chebyshev * cyl_bessel_j_int(k, x));
}

}  // namespace bandlim
