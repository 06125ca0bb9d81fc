#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bandlim/common.hpp"

namespace bandlim {

// Eigen-decomposition of a dense real symmetric matrix; eigenvalues descending
// with matching unit eigenvectors.
struct sym_eig {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i]
};

// Cyclic Jacobi. The stopping rule compares each off-diagonal entry against
// sqrt(|a_pp a_qq|), which keeps the tiny eigenvalues of graded positive
// semi-definite matrices relatively accurate — the spectral tails computed
// here decay over many orders of magnitude, and an absolute criterion would
// drown them in the norm of the leading block.
inline sym_eig jacobi_eigh(std::vector<double> a, int n) {
  if (n <= 0) throw std::invalid_argument("jacobi_eigh: matrix order must be positive");
  if (a.size() != static_cast<size_t>(n) * static_cast<size_t>(n))
    throw std::invalid_argument("jacobi_eigh: buffer does not match the stated order");

  auto at = [&a, n](int r, int s) -> double& { return a[static_cast<size_t>(r) * n + s]; };
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  constexpr double rel_tol = 1e-15;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        double scale = std::sqrt(std::abs(at(p, p)) * std::abs(at(q, q)));
        if (std::abs(apq) <= rel_tol * scale + 1e-300) continue;
        converged = false;

        double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double co = 1.0 / std::sqrt(t * t + 1.0);
        double si = t * co;
        double tau = si / (1.0 + co);

        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            double g = at(r, p), h = at(r, q);
            at(r, p) = g - si * (h + g * tau);
            at(r, q) = h + si * (g - h * tau);
            at(p, r) = at(r, p);
            at(q, r) = at(r, q);
          }
          double gv = v[static_cast<size_t>(r) * n + p];
          double hv = v[static_cast<size_t>(r) * n + q];
          v[static_cast<size_t>(r) * n + p] = gv - si * (hv + gv * tau);
          v[static_cast<size_t>(r) * n + q] = hv + si * (gv - hv * tau);
        }
      }
    }
  }
  if (!converged) throw convergence_error("jacobi_eigh: rotation sweeps did not converge");

  std::vector<int> idx(static_cast<size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return at(i, i) > at(j, j); });

  sym_eig out;
  out.values.reserve(static_cast<size_t>(n));
  out.vectors.reserve(static_cast<size_t>(n));
  for (int i : idx) {
    out.values.push_back(at(i, i));
    std::vector<double> col(static_cast<size_t>(n));
    for (int r = 0; r < n; ++r) col[static_cast<size_t>(r)] = v[static_cast<size_t>(r) * n + i];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

}  // namespace bandlim
