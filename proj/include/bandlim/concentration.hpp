#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "quadrature.hpp"

namespace bandlim {

// A test signal with its unitary Fourier transform
// F(w) = (2pi)^{-1/2} Integral f(t) e^{-itw} dt and closed-form (or
// quadrature-based) L2 tail masses outside [-T,T] in time and [-W,W] in
// frequency.
struct signal {
  std::string name;
  std::function<double(double)> f;
  std::function<std::complex<double>(double)> fourier;
  std::function<double(double)> spectrum_density;  // |F(w)|^2
  double l2_norm2 = 0.0;
  std::optional<double> support_radius;  // compact support [-r, r], if any
  std::optional<double> band_radius;     // compact spectrum [-r, r], if any
  std::function<double(double)> time_tail;  // Integral_{|t|>T} f^2
  std::function<double(double)> band_tail;  // Integral_{|w|>W} |F|^2
  std::vector<double> breakpoints;          // kinks/jumps of f
  double osc_freq = 0.0;                    // oscillation scale of f (rad per unit t)
  // H^s seminorm proxy: Integral (1+|w|)^{2s} |F|^2, or throws regime_error
  // when the integral diverges for this signal at the requested s
  std::function<double(double)> hs_norm2;

  double l2_norm() const { return std::sqrt(l2_norm2); }
};

inline signal make_indicator() {
  signal s;
  s.name = "indicator";
  s.f = [](double t) { return std::abs(t) <= 0.5 ? 1.0 : 0.0; };
  s.fourier = [](double w) -> std::complex<double> {
    double v = std::abs(w) < 1e-8 ? 0.5 * (1.0 - w * w / 24.0) : std::sin(0.5 * w) / w;
    return {std::sqrt(2.0 / pi) * v, 0.0};
  };
  s.spectrum_density = [fr = s.fourier](double w) { return std::norm(fr(w)); };
  s.l2_norm2 = 1.0;
  s.support_radius = 0.5;
  s.time_tail = [](double T) { return T >= 0.5 ? 0.0 : 1.0 - 2.0 * T; };
  s.band_tail = [dens = s.spectrum_density](double W) {
    if (!(W >= 0.0)) throw std::invalid_argument("band_tail: negative radius");
    // quadrature out to X, then the two-term asymptotic tail
    //   2 Int_X^inf dens = (2/pi)(1/X + sin X / X^2) + O(1/X^3)
    // obtained by writing sin^2(w/2) = (1 - cos w)/2 and integrating the
    // oscillatory part by parts
    double X = std::max(W, 1e4);
    double partial = W < X ? 2.0 * integrate_oscillatory(dens, W, X, 1.0, 16) : 0.0;
    double tail_beyond_X = (2.0 / pi) * (1.0 / X + std::sin(X) / (X * X));
    return partial + tail_beyond_X;
  };
  s.breakpoints = {-0.5, 0.5};
  s.hs_norm2 = [dens = s.spectrum_density](double sv) {
    if (!(sv < 0.5)) throw regime_error("hs_norm2: the indicator lies in H^s only for s < 1/2");
    if (!(sv >= 0.0)) throw std::invalid_argument("hs_norm2: negative smoothness");
    double X = 1e5;
    auto g = [&](double w) { return std::pow(1.0 + w, 2.0 * sv) * dens(w); };
    double partial = 2.0 * integrate_oscillatory(g, 0.0, X, 1.0, 16);
    // beyond X, sin^2 averages to 1/2, so 2 Int_X^inf (1+w)^{2s} dens(w) dw
    // equals (2/pi) X^{2s-1}/(1-2s) up to a relative (1+1/X)^{2s}-1 spread
    // and an O(X^{2s-2}) oscillatory correction -- both negligible at X=1e5
    double rem = (2.0 / pi) * std::pow(X, 2.0 * sv - 1.0) / (1.0 - 2.0 * sv);
    return partial + rem;
  };
  return s;
}

inline signal make_hat() {
  signal s;
  s.name = "hat";
  s.f = [](double t) { return std::max(1.0 - std::abs(t), 0.0); };
  s.fourier = [](double w) -> std::complex<double> {
    double u = std::sin(0.5 * w);
    double v = std::abs(w) < 1e-8 ? 0.5 * (1.0 - w * w / 12.0) : 2.0 * u * u / (w * w);
    return {std::sqrt(2.0 / pi) * v, 0.0};
  };
  s.spectrum_density = [fr = s.fourier](double w) { return std::norm(fr(w)); };
  s.l2_norm2 = 2.0 / 3.0;
  s.support_radius = 1.0;
  s.time_tail = [](double T) {
    if (T >= 1.0) return 0.0;
    double u = 1.0 - T;
    return (2.0 / 3.0) * u * u * u;
  };
  s.band_tail = [dens = s.spectrum_density](double W) {
    if (!(W >= 0.0)) throw std::invalid_argument("band_tail: negative radius");
    double X = std::max(W, 1e3);
    double partial = W < X ? 2.0 * integrate_oscillatory(dens, W, X, 1.0, 16) : 0.0;
    // |F|^2 = (8/pi) sin^4(w/2)/w^4 with sin^4 averaging to 3/8 beyond X
    double tail_beyond_X = (2.0 / pi) / (X * X * X);
    return partial + tail_beyond_X;
  };
  s.breakpoints = {-1.0, 0.0, 1.0};
  s.hs_norm2 = [dens = s.spectrum_density](double sv) {
    if (!(sv < 1.5)) throw regime_error("hs_norm2: the hat lies in H^s only for s < 3/2");
    if (!(sv >= 0.0)) throw std::invalid_argument("hs_norm2: negative smoothness");
    double X = 1e4;
    auto g = [&](double w) { return std::pow(1.0 + w, 2.0 * sv) * dens(w); };
    double partial = 2.0 * integrate_oscillatory(g, 0.0, X, 1.0, 16);
    // sin^4 averages to 3/8 beyond X; corrections are O(X^{2s-4})
    double rem = (6.0 / pi) * std::pow(X, 2.0 * sv - 3.0) / (3.0 - 2.0 * sv);
    return partial + rem;
  };
  return s;
}

inline signal make_sinc(double c) {
  if (!(c > 0.0)) throw config_error("sinc signal: c must be positive");
  signal s;
  s.name = "sinc:c=" + std::to_string(c);
  s.f = [c](double t) {
    double u = c * t;
    return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
  };
  s.fourier = [c](double w) -> std::complex<double> {
    return {std::abs(w) <= c ? std::sqrt(0.5 * pi) / c : 0.0, 0.0};
  };
  s.spectrum_density = [c](double w) { return std::abs(w) <= c ? 0.5 * pi / (c * c) : 0.0; };
  s.l2_norm2 = pi / c;
  s.band_radius = c;
  s.time_tail = [c, f = s.f](double T) {
    if (!(T >= 0.0)) throw std::invalid_argument("time_tail: negative radius");
    double R = std::max(T, 64.0);
    auto g = [&](double t) {
      double v = f(t);
      return v * v;
    };
    double partial = T < R ? 2.0 * integrate_oscillatory(g, T, R, 2.0 * c, 16) : 0.0;
    // Integral_R^inf sin^2(ct)/(ct)^2 dt = 1/(2c^2 R) + sin(2cR)/(4c^3R^2) + O(R^-3)
    double tail_beyond_R =
        2.0 * (0.5 / (c * c * R) + std::sin(2.0 * c * R) / (4.0 * c * c * c * R * R));
    return partial + tail_beyond_R;
  };
  s.band_tail = [c](double W) {
    if (!(W >= 0.0)) throw std::invalid_argument("band_tail: negative radius");
    return W >= c ? 0.0 : pi * (c - W) / (c * c);
  };
  s.osc_freq = c;
  s.hs_norm2 = [c](double sv) {
    if (!(sv >= 0.0)) throw std::invalid_argument("hs_norm2: negative smoothness");
    // flat compactly supported spectrum: closed form
    return (0.5 * pi / (c * c)) * 2.0 * (std::pow(1.0 + c, 2.0 * sv + 1.0) - 1.0) / (2.0 * sv + 1.0);
  };
  return s;
}

inline signal make_gaussian() {
  signal s;
  s.name = "gaussian";
  s.f = [](double t) { return std::exp(-0.5 * t * t); };
  s.fourier = [](double w) -> std::complex<double> { return {std::exp(-0.5 * w * w), 0.0}; };
  s.spectrum_density = [](double w) { return std::exp(-w * w); };
  s.l2_norm2 = std::sqrt(pi);
  s.time_tail = [](double T) {
    if (!(T >= 0.0)) throw std::invalid_argument("time_tail: negative radius");
    return std::sqrt(pi) * std::erfc(T);
  };
  s.band_tail = s.time_tail;
  s.hs_norm2 = [](double sv) {
    if (!(sv >= 0.0)) throw std::invalid_argument("hs_norm2: negative smoothness");
    auto g = [sv](double w) { return std::pow(1.0 + w, 2.0 * sv) * std::exp(-w * w); };
    return 2.0 * integrate(g, 0.0, 40.0, 64);
  };
  return s;
}

// Catalog lookup: "indicator", "hat", "gaussian", or "sinc:c=<value>".
inline signal signal_by_name(const std::string& spec) {
  if (spec == "indicator") return make_indicator();
  if (spec == "hat") return make_hat();
  if (spec == "gaussian") return make_gaussian();
  const std::string prefix = "sinc:c=";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string arg = spec.substr(prefix.size());
    try {
      size_t pos = 0;
      double c = std::stod(arg, &pos);
      if (pos != arg.size()) throw std::invalid_argument(arg);
      return make_sinc(c);
    } catch (const config_error&) {
      throw;
    } catch (const std::exception&) {
      throw config_error("signal_by_name: bad sinc parameter '" + arg + "'");
    }
  }
  throw config_error("signal_by_name: unknown signal '" + spec + "'");
}

// Relative L2 time concentration defect: eps_T = (tail mass / total)^{1/2},
// clamped to [0,1]; exactly 0 once T covers the support.
inline double epsilon_time(const signal& s, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("epsilon_time: T must be positive");
  if (s.support_radius && T >= *s.support_radius) return 0.0;
  return std::sqrt(std::clamp(s.time_tail(T) / s.l2_norm2, 0.0, 1.0));
}

// Frequency analogue over [-W, W].
inline double epsilon_band(const signal& s, double W) {
  if (!(W > 0.0)) throw std::invalid_argument("epsilon_band: W must be positive");
  if (s.band_radius && W >= *s.band_radius) return 0.0;
  return std::sqrt(std::clamp(s.band_tail(W) / s.l2_norm2, 0.0, 1.0));
}

struct concentration_report {
  double T = 0.0;
  double Omega = 0.0;
  double eps_time = 0.0;
  double eps_band = 0.0;
};

inline concentration_report measure_concentration(const signal& s, double T, double Omega) {
  return {T, Omega, epsilon_time(s, T), epsilon_band(s, Omega)};
}

// Smoothness route to band concentration:
//   eps_W <= (1+W)^{-s} * hs_norm / l2_norm.
inline double sobolev_band_bound(double hs_norm, double l2_norm, double s, double Omega) {
  if (!(hs_norm > 0.0 && l2_norm > 0.0))
    throw std::invalid_argument("sobolev_band_bound: norms must be positive");
  if (!(s > 0.0)) throw std::invalid_argument("sobolev_band_bound: s must be positive");
  if (!(Omega >= 0.0)) throw std::invalid_argument("sobolev_band_bound: Omega must be nonnegative");
  return std::pow(1.0 + Omega, -s) * hs_norm / l2_norm;
}

}  // namespace bandlim
