#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandlim/common.hpp"
#include "bandlim/linalg.hpp"
#include "bandlim/orthopoly.hpp"
#include "bandlim/parallel.hpp"
#include "bandlim/projections.hpp"
#include "bandlim/quadrature.hpp"

namespace bandlim {

// Spectrum of the time-band concentration operator on (-1,1) at bandwidth c:
//   (Q_c f)(x) = integral_{-1}^{1} sin(c(x-y)) / (pi (x-y)) f(y) dy.
// Eigenvalues lambda_0 > lambda_1 > ... in (0,1); eigenfunctions psi_n are the
// prolate spheroidal wave functions, stored through their coefficients
// beta[n][k] against the orthonormal Legendre family sqrt(k+1/2) P_k, with the
// sign convention psi_n(1) > 0 and normalization ||psi_n||_{L2(-1,1)} = 1.
//
// Below `discretization_floor` the Galerkin eigenvalues are dominated by
// roundoff of the leading block and are reported as computed but carry no
// relative accuracy; consumers should treat them as "numerically zero".
struct pswf_spectrum {
  double c = 0.0;
  int order = 0;                          // Galerkin truncation (matrix size)
  std::vector<double> lambdas;            // descending, size == order
  std::vector<std::vector<double>> beta;  // beta[n][k], 0 <= n, k < order

  static constexpr double discretization_floor = 1e-14;
};

inline int default_pswf_order(double c) {
  return static_cast<int>(std::ceil(2.0 * c / pi)) + 40;
}

// Galerkin matrix of Q_c in the orthonormal Legendre basis, row-major K x K:
//   M[j][k] = (2c/pi) (-1)^{(j-k)/2} sqrt((j+1/2)(k+1/2))
//             * integral_{-1}^{1} j_j(cx) j_k(cx) dx        (j = k mod 2)
// and exactly zero for mixed parity. The alternating factor comes from the
// i^j phases of the transformed basis functions: dropping it would conjugate
// the matrix by a signature matrix, leaving the eigenvalues intact but
// scrambling the eigenvector signs (the reconstructed psi_n would be wrong
// while every eigenvalue check still passed).
inline std::vector<double> galerkin_matrix(double c, int K) {
  if (!(c > 0.0)) throw std::invalid_argument("galerkin_matrix: c must be positive");
  if (K < 2) throw std::invalid_argument("galerkin_matrix: order must be at least 2");

  int m = std::max(128, 2 * K + static_cast<int>(std::ceil(2.0 * c)) + 32);
  const quad_rule& rule = gauss_legendre(m);

  // j_k(c x) at every node, batched once: jb[k][i]
  std::vector<std::vector<double>> jb(static_cast<size_t>(K),
                                      std::vector<double>(rule.nodes.size()));
  parallel_for(K, [&](int k) {
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      jb[static_cast<size_t>(k)][i] = sph_bessel_j(k, c * rule.nodes[i]);
  });

  std::vector<double> M(static_cast<size_t>(K) * static_cast<size_t>(K), 0.0);
  parallel_for(K, [&](int j) {
    for (int k = j; k < K; k += 2) {
      double integral = 0.0;
      for (size_t i = 0; i < rule.nodes.size(); ++i)
        integral += rule.weights[i] * jb[static_cast<size_t>(j)][i] * jb[static_cast<size_t>(k)][i];
      double sign = (((k - j) / 2) % 2 == 0) ? 1.0 : -1.0;
      double val = (2.0 * c / pi) * sign * std::sqrt((j + 0.5) * (k + 0.5)) * integral;
      M[static_cast<size_t>(j) * K + k] = val;
      M[static_cast<size_t>(k) * K + j] = val;
    }
  });
  return M;
}

namespace detail {

// Eigen-decomposition of the Galerkin matrix split by parity: mixed-parity
// entries vanish identically, so solving the even and odd blocks separately
// halves the work and keeps the exact parity of each eigenvector (entries of
// the other parity are exact zeros rather than rotation residue).
inline sym_eig pswf_solve(double c, int K) {
  std::vector<double> M = galerkin_matrix(c, K);

  sym_eig merged;
  merged.values.reserve(static_cast<size_t>(K));
  merged.vectors.reserve(static_cast<size_t>(K));
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int k = parity; k < K; k += 2) idx.push_back(k);
    int nb = static_cast<int>(idx.size());
    std::vector<double> block(static_cast<size_t>(nb) * nb);
    for (int r = 0; r < nb; ++r)
      for (int s = 0; s < nb; ++s)
        block[static_cast<size_t>(r) * nb + s] =
            M[static_cast<size_t>(idx[static_cast<size_t>(r)]) * K + idx[static_cast<size_t>(s)]];
    sym_eig eb = jacobi_eigh(std::move(block), nb);
    for (int i = 0; i < nb; ++i) {
      std::vector<double> full(static_cast<size_t>(K), 0.0);
      for (int r = 0; r < nb; ++r)
        full[static_cast<size_t>(idx[static_cast<size_t>(r)])] = eb.vectors[static_cast<size_t>(i)][static_cast<size_t>(r)];
      merged.values.push_back(eb.values[static_cast<size_t>(i)]);
      merged.vectors.push_back(std::move(full));
    }
  }

  std::vector<int> ord(static_cast<size_t>(K));
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](int i, int j) { return merged.values[static_cast<size_t>(i)] > merged.values[static_cast<size_t>(j)]; });
  sym_eig out;
  out.values.reserve(static_cast<size_t>(K));
  out.vectors.reserve(static_cast<size_t>(K));
  for (int i : ord) {
    out.values.push_back(merged.values[static_cast<size_t>(i)]);
    out.vectors.push_back(std::move(merged.vectors[static_cast<size_t>(i)]));
  }
  return out;
}

}  // namespace detail

// Solve for the spectrum at truncation K (default: ceil(2c/pi) + 40, enough
// for every eigenvalue above the discretization floor at moderate c). The
// result is certified by re-solving at K + 20 and requiring every eigenvalue
// above the floor to move by less than 1e-10; a truncation too small to
// resolve the spectrum throws convergence_error instead of returning
// unconverged numbers.
inline pswf_spectrum spectrum(double c, int K = 0) {
  if (!(c > 0.0)) throw std::invalid_argument("spectrum: c must be positive");
  if (K == 0) K = default_pswf_order(c);
  if (K < 2) throw std::invalid_argument("spectrum: order must be at least 2");

  sym_eig base = detail::pswf_solve(c, K);
  sym_eig check = detail::pswf_solve(c, K + 20);
  for (int n = 0; n < K; ++n) {
    if (base.values[static_cast<size_t>(n)] <= pswf_spectrum::discretization_floor) continue;
    double drift = std::abs(base.values[static_cast<size_t>(n)] - check.values[static_cast<size_t>(n)]);
    if (!(drift <= 1e-10))
      throw convergence_error("spectrum: eigenvalue " + std::to_string(n) +
                              " moved " + std::to_string(drift) +
                              " when the truncation grew; increase the order");
  }

  pswf_spectrum s;
  s.c = c;
  s.order = K;
  s.lambdas = std::move(base.values);
  s.beta.resize(static_cast<size_t>(K));
  for (int n = 0; n < K; ++n) {
    std::vector<double>& b = base.vectors[static_cast<size_t>(n)];
    // psi_n(1) = sum_k beta_k sqrt(k+1/2) P_k(1) = sum_k sqrt(k+1/2) b_k > 0
    double at_one = 0.0;
    for (int k = 0; k < K; ++k) at_one += std::sqrt(k + 0.5) * b[static_cast<size_t>(k)];
    double flip = (at_one < 0.0) ? -1.0 : 1.0;
    std::vector<double> row(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k)
      row[static_cast<size_t>(k)] = flip * std::sqrt(k + 0.5) * b[static_cast<size_t>(k)];
    s.beta[static_cast<size_t>(n)] = std::move(row);
  }
  return s;
}

// Evaluate psi_n at x in [-1,1] from the stored Legendre coefficients.
inline double pswf_value(const pswf_spectrum& s, int n, double x) {
  if (n < 0 || n >= s.order) throw std::invalid_argument("pswf_value: index out of range");
  expansion e;
  e.basis = basis_spec::legendre();
  e.order = s.order - 1;
  e.coeffs.resize(static_cast<size_t>(s.order));
  for (int k = 0; k < s.order; ++k)
    e.coeffs[static_cast<size_t>(k)] =
        s.beta[static_cast<size_t>(n)][static_cast<size_t>(k)] / std::sqrt(k + 0.5);
  return eval_expansion(e, x);
}

// Total lower bound on lambda_n(c), every n >= 0, c > 0. Both regimes come
// from the min-max principle: an m-dimensional trial space controls the m-th
// largest eigenvalue, so the bound for lambda_n (0-based) uses m = n + 1
// piecewise-constant intervals.
//   m <= 2c/pi  (plunge and below):  lambda_n >= 4/(pi(m+1)) >= 4/(pi+2c)
//   m >  2c/pi  (past the plunge):   lambda_n >= 7 (1-2c/(m pi))^2 (c/(7 pi m))^{2m-1}
// The second constant decays super-exponentially, mirroring how fast the true
// spectrum falls once n passes 2c/pi.
inline double lower_bound_naz(int n, double c) {
  if (n < 0) throw std::invalid_argument("lower_bound_naz: negative index");
  if (!(c > 0.0)) throw std::invalid_argument("lower_bound_naz: c must be positive");
  double m = n + 1.0;
  if (m <= 2.0 * c / pi) return 4.0 / (pi + 2.0 * c);
  double lg = std::log(7.0) + 2.0 * std::log1p(-2.0 * c / (m * pi)) +
              (2.0 * m - 1.0) * (std::log(c) - std::log(7.0 * pi * m));
  if (lg < -744.0) return 0.0;
  return std::exp(lg);
}

// Sharper super-exponential floor, valid once n >= max(3, 2c/pi):
//   lambda_n >= 0.4 (2c/(pi(n+1)))^{5(n+1)}  (log-domain evaluation).
inline double lower_bound_bk(int n, double c) {
  if (n < 0) throw std::invalid_argument("lower_bound_bk: negative index");
  if (!(c > 0.0)) throw std::invalid_argument("lower_bound_bk: c must be positive");
  if (n < 3 || static_cast<double>(n) < 2.0 * c / pi)
    throw regime_error("lower_bound_bk: requires n >= max(3, 2c/pi)");
  double lg = std::log(0.4) +
              5.0 * (n + 1.0) * (std::log(2.0 * c) - std::log(pi * (n + 1.0)));
  if (lg < -744.0) return 0.0;
  return std::exp(lg);
}

// Certified lower bound from an m-interval piecewise-constant trial space,
// computed (not estimated): the Rayleigh quotients of Q_c on that space reduce
// to the m x m Toeplitz form
//   G[j][k] = (1/(pi m)) integral_{-2c/m}^{2c/m} cos((j-k) eta) sinc^2(eta/2) d eta
// and min-max certifies   lambda_{m-1}(c) >= (m/2) lambda_min(G).
// `certified_index` records which eigenvalue the bound controls: an
// m-dimensional trial space pushes up the m-th largest eigenvalue, i.e.
// 0-based index m-1 — not index m, and not floor(2c/pi) unless m lands there.
struct piecewise_bound {
  double value = 0.0;
  int certified_index = 0;
};

inline piecewise_bound certified_lower_bound_piecewise(int m, double c) {
  if (m < 1) throw std::invalid_argument("certified_lower_bound_piecewise: need m >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("certified_lower_bound_piecewise: c must be positive");

  double W = 2.0 * c / m;
  auto envelope = [](double eta) {
    if (eta == 0.0) return 1.0;
    double s = std::sin(0.5 * eta) / (0.5 * eta);
    return s * s;
  };
  std::vector<double> g(static_cast<size_t>(m));
  for (int l = 0; l < m; ++l) {
    double freq = l + 1.0;  // cos(l eta) plus the unit-scale envelope
    g[static_cast<size_t>(l)] =
        (2.0 / (pi * m)) *
        integrate_oscillatory([&](double eta) { return std::cos(l * eta) * envelope(eta); },
                              0.0, W, freq, 64);
  }
  std::vector<double> G(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      G[static_cast<size_t>(j) * m + k] = g[static_cast<size_t>(std::abs(j - k))];
  sym_eig e = jacobi_eigh(std::move(G), m);
  return {0.5 * m * e.values.back(), m - 1};
}

// Bracket for the differential-operator eigenvalue chi_n of
//   (L_c psi)(x) = -((1-x^2) psi')' + c^2 x^2 psi,
// which shares eigenfunctions with Q_c:  n(n+1) <= chi_n <= n(n+1) + c^2.
// The spectrum overload also evaluates the Rayleigh quotient <L_c psi_n, psi_n>
// exactly from the Legendre coefficients (no quadrature): the derivative part
// is sum_k k(k+1) b_k^2 and the potential part is c^2 ||x psi_n||^2 via the
// multiplication-by-x tridiagonal. Requires n at least 5 below the truncation
// and lambda_n above the discretization floor; otherwise the eigenvector is
// rotation noise and the quotient meaningless, so `rayleigh` stays empty.
struct chi_bracket_result {
  int n = 0;
  double c = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<double> rayleigh;
};

inline chi_bracket_result chi_bracket(int n, double c) {
  if (n < 0) throw std::invalid_argument("chi_bracket: negative index");
  if (!(c > 0.0)) throw std::invalid_argument("chi_bracket: c must be positive");
  chi_bracket_result r;
  r.n = n;
  r.c = c;
  r.lower = static_cast<double>(n) * (n + 1.0);
  r.upper = r.lower + c * c;
  return r;
}

inline chi_bracket_result chi_bracket(int n, double c, const pswf_spectrum& s) {
  chi_bracket_result r = chi_bracket(n, c);
  if (s.c != c) throw std::invalid_argument("chi_bracket: spectrum was computed at a different c");
  if (n >= s.order - 5)
    throw std::invalid_argument("chi_bracket: index too close to the truncation order");
  if (s.lambdas[static_cast<size_t>(n)] <= pswf_spectrum::discretization_floor) return r;

  int K = s.order;
  std::vector<double> b(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k)
    b[static_cast<size_t>(k)] =
        s.beta[static_cast<size_t>(n)][static_cast<size_t>(k)] / std::sqrt(k + 0.5);

  double deriv = 0.0;
  for (int k = 0; k < K; ++k)
    deriv += k * (k + 1.0) * b[static_cast<size_t>(k)] * b[static_cast<size_t>(k)];

  // x * Ptilde_k = a_k Ptilde_{k+1} + a_{k-1} Ptilde_{k-1},
  // a_k = (k+1)/sqrt((2k+1)(2k+3)); the image sum runs one index past K.
  std::vector<double> u(static_cast<size_t>(K) + 1, 0.0);
  for (int k = 0; k < K; ++k) {
    double ak = (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
    u[static_cast<size_t>(k) + 1] += ak * b[static_cast<size_t>(k)];
    if (k >= 1) {
      double akm = static_cast<double>(k) / std::sqrt((2.0 * k - 1.0) * (2.0 * k + 1.0));
      u[static_cast<size_t>(k) - 1] += akm * b[static_cast<size_t>(k)];
    }
  }
  double xnorm2 = 0.0;
  for (double v : u) xnorm2 += v * v;

  r.rayleigh = deriv + c * c * xnorm2;
  return r;
}

// Ritz values of the differential operator L_c itself, ascending; entry n is
// chi_n. In the orthonormal Legendre basis L_c is exact and parity-split
// tridiagonal (diagonal k(k+1) + c^2(a_{k-1}^2 + a_k^2), off-diagonal
// c^2 a_k a_{k+1} within a parity class), so no quadrature enters. Unlike the
// Q_c eigenproblem — where eigenvalues below the discretization floor leave
// their eigenvectors as rotation noise — the chi_n stay separated like n^2,
// and this route gives solid values at every depth the truncation covers.
inline std::vector<double> chi_spectrum(double c, int K = 0) {
  if (!(c > 0.0)) throw std::invalid_argument("chi_spectrum: c must be positive");
  if (K == 0) K = default_pswf_order(c);
  if (K < 2) throw std::invalid_argument("chi_spectrum: order must be at least 2");

  auto xcoef = [](int k) {  // a_k in x Ptilde_k = a_k Ptilde_{k+1} + a_{k-1} Ptilde_{k-1}
    return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
  };

  std::vector<double> chi(static_cast<size_t>(K));
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<int> idx;
    for (int k = parity; k < K; k += 2) idx.push_back(k);
    int nb = static_cast<int>(idx.size());
    std::vector<double> block(static_cast<size_t>(nb) * nb, 0.0);
    for (int t = 0; t < nb; ++t) {
      int k = idx[static_cast<size_t>(t)];
      double am = (k >= 1) ? xcoef(k - 1) : 0.0;
      double ak = xcoef(k);
      block[static_cast<size_t>(t) * nb + t] = k * (k + 1.0) + c * c * (am * am + ak * ak);
      if (t + 1 < nb)
        block[static_cast<size_t>(t) * nb + (t + 1)] =
            block[(static_cast<size_t>(t) + 1) * nb + t] = c * c * ak * xcoef(k + 1);
    }
    sym_eig e = jacobi_eigh(std::move(block), nb);  // descending
    for (int t = 0; t < nb; ++t) {
      int n = parity + 2 * t;  // n-th eigenfunction has parity n%2, rank n/2 in its class
      chi[static_cast<size_t>(n)] = e.values[static_cast<size_t>(nb - 1 - t)];
    }
  }
  return chi;
}

// Upper bound on |beta_k^n|, the orthonormal-Legendre coefficient of psi_n.
// Writing X_k = (e c/(2k+3))^{k+1}, the coefficient inequality
//   |beta_k^n| <= sqrt(e/(pi c)) sqrt(2k+1) X_k / sqrt(lambda_n)
// is closed with a lower bound on lambda_n, giving two regimes:
//   n <= floor(2c/pi) - 1 :  lambda_n > 1/2        =>  2 sqrt(e/(pi c)) sqrt(2k+1) X_k
//   n >= floor(2c/pi)     :  super-exponential floor (m = n+1 intervals)  =>
//       sqrt(2e/(7 pi c)) (1 - 2c/(m pi))^{-1} (7 pi m / c)^{m-1/2} sqrt(k+1/2) ... X_k
// Evaluated in the log domain; +infinity when the bound overflows (it is
// vacuous there anyway).
inline double beta_bound(int n, int k, double c) {
  if (n < 0 || k < 0) throw std::invalid_argument("beta_bound: negative index");
  if (!(c > 0.0)) throw std::invalid_argument("beta_bound: c must be positive");

  double xlog = (k + 1.0) * (1.0 + std::log(c) - std::log(2.0 * k + 3.0));
  int plunge = static_cast<int>(std::floor(2.0 * c / pi));
  double lg;
  if (n <= plunge - 1) {
    lg = std::log(2.0) + 0.5 * (1.0 - std::log(pi * c)) +
         0.5 * std::log(2.0 * k + 1.0) + xlog;
  } else {
    double m = n + 1.0;
    lg = 0.5 * (std::log(2.0) + 1.0 - std::log(7.0 * pi)) - 0.5 * std::log(c) -
         std::log1p(-2.0 * c / (m * pi)) + (m - 0.5) * std::log(7.0 * pi * m / c) +
         0.5 * std::log(k + 0.5) + xlog;
  }
  if (lg > 700.0) return std::numeric_limits<double>::infinity();
  if (lg < -744.0) return 0.0;
  return std::exp(lg);
}

}  // namespace bandlim
