#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "common.hpp"
#include "orthopoly.hpp"

namespace bandlim {

// Oscillation phase of the Hermite function h_n inside the classically
// allowed region |x| <= lambda = sqrt(2n+1):
//   phi_n(x) = ((2n+1)/2) asin(x/lambda) + (x/2) sqrt(lambda^2 - x^2),
// the antiderivative of sqrt(lambda^2 - t^2) from 0.
inline double phase(int n, double x) {
  if (n < 0) throw std::invalid_argument("phase: negative order");
  double lam = std::sqrt(2.0 * n + 1.0);
  if (std::abs(x) > lam * (1.0 + 1e-12)) throw std::domain_error("phase: |x| > sqrt(2n+1)");
  x = std::clamp(x, -lam, lam);
  return 0.5 * (2.0 * n + 1.0) * std::asin(x / lam) +
         0.5 * x * std::sqrt(std::max((lam - x) * (lam + x), 0.0));
}

// e_n(x) = sqrt(2n+1) x - phi_n(x), the deviation of the phase from its
// center linearization; closed form, no separate approximation.
inline double phase_linearization_error(int n, double x) {
  return std::sqrt(2.0 * n + 1.0) * x - phase(n, x);
}

// Main oscillatory term of h_n: one of the two center terms vanishes by
// parity, so only the relevant one is evaluated.
//   sqrt(lam) h_n(0) cos(phi_n)/(lam^2-x^2)^{1/4}
//   + (h_n'(0)/sqrt(lam)) sin(phi_n)/(lam^2-x^2)^{1/4}
inline double wkb_main(int n, double x) {
  if (n < 0) throw std::invalid_argument("wkb_main: negative order");
  double lam = std::sqrt(2.0 * n + 1.0);
  // the error envelope blows up at the turning point; never extrapolate
  if (std::abs(x) >= lam * (1.0 - 1e-9))
    throw regime_error("wkb_main: |x| within 1e-9 of the turning point sqrt(2n+1)");
  double ph = phase(n, x);
  double quart = std::pow((lam - x) * (lam + x), 0.25);
  if (n % 2 == 0) {
    double h0 = hermite_center(n / 2).even_at_zero;
    return std::sqrt(lam) * h0 * std::cos(ph) / quart;
  }
  double d0 = hermite_center((n - 1) / 2).odd_deriv_at_zero;
  return d0 / std::sqrt(lam) * std::sin(ph) / quart;
}

// Simplified main term with the center amplitudes replaced by their Stirling
// limits: (-1)^p (pi^{1/2} p^{1/4})^{-1} cos(phi_2p) for even n = 2p, the
// sine analogue for n = 2p + 1. Caller keeps |x| inside the envelope regime.
inline double wkb_simplified(int n, double x) {
  if (n < 2) throw std::invalid_argument("wkb_simplified: needs n >= 2");
  int p = n / 2;
  double amp = ((p % 2 == 0) ? 1.0 : -1.0) / (std::sqrt(pi) * std::pow(p, 0.25));
  double ph = phase(n, x);
  return (n % 2 == 0) ? amp * std::cos(ph) : amp * std::sin(ph);
}

enum class envelope_form { full, half_disk, simplified };

struct wkb_envelope {
  int n = 0;
  double T = 0.0;
  double sup_bound = 0.0;
  std::optional<double> lipschitz_bound;  // absent for the full form
};

// Error envelopes of the main-term approximations over |x| <= T.
inline wkb_envelope error_envelopes(int n, double T, envelope_form form) {
  if (n < 0) throw std::invalid_argument("error_envelopes: negative order");
  if (!(T >= 0.0)) throw std::invalid_argument("error_envelopes: negative T");
  double lam = std::sqrt(2.0 * n + 1.0);
  double l2 = 2.0 * n + 1.0;
  wkb_envelope e;
  e.n = n;
  e.T = T;
  switch (form) {
    case envelope_form::full:
      if (!(T < lam)) throw regime_error("error_envelopes: full form needs T < sqrt(2n+1)");
      e.sup_bound = 1.25 * std::pow(lam / (l2 - T * T), 2.5);
      break;
    case envelope_form::half_disk:
      if (!(T <= lam / 2.0))
        throw regime_error("error_envelopes: half-disk form needs T <= sqrt(2n+1)/2");
      e.sup_bound = 2.0 / (lam * lam * lam);
      e.lipschitz_bound = 7.0 / std::pow(lam, 2.5);
      break;
    case envelope_form::simplified:
      if (!(T <= lam / 2.0))
        throw regime_error("error_envelopes: simplified form needs T <= sqrt(2n+1)/2");
      e.sup_bound = 3.0 * T * T / std::pow(l2, 1.25);
      e.lipschitz_bound = 8.0 * T * T / std::pow(l2, 0.75);
      break;
  }
  return e;
}

// The five phase-increment inequalities, each as (measured LHS, bound RHS):
// valid for |x|, |y| <= T <= sqrt(2n+1)/2.
struct bound_pair {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct phase_increments {
  bound_pair level_diff;       // |phi_{n+1}(x) - phi_n(x)|            <= 3T/sqrt(2n+1)
  bound_pair mixed_increment;  // |difference of the above at x and y|  <= 3|x-y|/sqrt(2n+1)
  bound_pair level_sum;        // |sum of the level differences|        <= 5T/sqrt(2n+1)
  bound_pair linear_residual;  // |eps_n(x,y)|             <= (8-4*sqrt(3)) T^2 |x-y|/sqrt(2n+1)
  bound_pair lipschitz;        // |phi_n(x) - phi_n(y)|                 <= (5/4) sqrt(2n+1)|x-y|
};

// eps_n(x,y) = -Int_y^x [g(t,s) + g(t,s3)] dt with g(t,q) = q - sqrt(q^2-t^2),
// s = sqrt(2n+1), s3 = sqrt(2n+3). Since g(t,q) = t^2/(q(1+sqrt(1-(t/q)^2)))
// <= 2(2-sqrt3) t^2/q for |t| <= q/2, the two levels together give the
// 8-4*sqrt(3) ~ 1.072 factor. The rounder-looking constant 1 (t^2/(2q) per
// level) is NOT a bound: g(T,q)/(T^2/(2q)) -> 2/(1+sqrt(1-(T/q)^2)) > 1, so
// once x and y cluster near +-T the residual crosses T^2|x-y|/s -- e.g.
// n=130, T=7.6433, x=-7.6290, y=-7.5400 gives |eps| ~ 1.044 T^2|x-y|/s.

inline phase_increments phase_increment_report(int n, double T, double x, double y) {
  if (n < 0) throw std::invalid_argument("phase_increment_report: negative order");
  double s = std::sqrt(2.0 * n + 1.0);
  if (!(std::abs(x) <= T && std::abs(y) <= T && T <= s / 2.0))
    throw regime_error("phase_increment_report: needs |x|,|y| <= T <= sqrt(2n+1)/2");
  double s3 = std::sqrt(2.0 * n + 3.0);
  double fx = phase(n, x), fy = phase(n, y);
  double gx = phase(n + 1, x), gy = phase(n + 1, y);
  double axy = std::abs(x - y);
  phase_increments r;
  r.level_diff = {std::abs(gx - fx), 3.0 * T / s};
  r.mixed_increment = {std::abs(gx - gy - fx + fy), 3.0 * axy / s};
  r.level_sum = {std::abs(gx - fx + gy - fy), 5.0 * T / s};
  r.linear_residual = {std::abs(gx + fx - gy - fy - (s + s3) * (x - y)),
                       (8.0 - 4.0 * std::sqrt(3.0)) * T * T * axy / s};
  r.lipschitz = {std::abs(fx - fy), 1.25 * s * axy};
  return r;
}

}  // namespace bandlim
