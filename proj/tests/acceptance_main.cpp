// Acceptance gate: eight pinned criteria, one PASS/FAIL line each.
// Plain main (no test framework) so the output reads as a checklist; exits
// nonzero if any criterion fails, including its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bandlim/concentration.hpp"
#include "bandlim/kernels.hpp"
#include "bandlim/orthopoly.hpp"
#include "bandlim/projections.hpp"
#include "bandlim/pswf.hpp"
#include "bandlim/wkb.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

int g_failures = 0;

struct criterion {
  std::string id;
  clock_type::time_point start = clock_type::now();
  bool ok = true;
  double time_budget_s = 0.0;  // 0 = no budget
  std::string detail;

  explicit criterion(std::string name, double budget = 0.0)
      : id(std::move(name)), time_budget_s(budget) {}

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }

  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }

  void finish() {
    double secs = std::chrono::duration<double>(clock_type::now() - start).count();
    if (time_budget_s > 0.0 && secs >= time_budget_s)
      fail("runtime " + std::to_string(secs) + " s exceeds budget " +
           std::to_string(time_budget_s) + " s");
    std::printf("%s %s (%.2f s)%s%s\n", id.c_str(), ok ? "PASS" : "FAIL", secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// AC1: the five pinned sup-residuals of the degree-n kernel against the sinc
// kernel at T=1 on an 80x80 grid, each within +-0.005.
void ac1() {
  criterion c("AC1", 60.0);
  const int orders[5] = {10, 25, 50, 75, 100};
  const double expected[5] = {0.067, 0.039, 0.025, 0.023, 0.022};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    bandlim::kernel_scan s = bandlim::residual_scan(orders[i], 1.0, 80);
    double dev = std::abs(s.E_tilde - expected[i]);
    worst = std::max(worst, dev);
    if (!(dev <= 0.005))
      c.fail("n=" + std::to_string(orders[i]) + ": E_tilde=" + fmt(s.E_tilde) + " vs " +
             fmt(expected[i]));
  }
  if (c.ok) c.note("five-point scan reproduced, max deviation " + fmt(worst) + " (tol 0.005)");
  c.finish();
}

// AC2: oscillatory main-term envelopes. 201-point grids; main term on
// [-lam/2, lam/2] against 2/lam^3, simplified on [-2,2] against
// 3 T^2/(2n+1)^{5/4} with T=2.
void ac2() {
  criterion c("AC2", 30.0);
  int violations = 0;
  double worst_main = 0.0, worst_simpl = 0.0;  // measured/bound ratios
  for (int n = 10; n <= 400; n += 10) {
    double lam = std::sqrt(2.0 * n + 1.0);
    double sup_main = 0.0, sup_simpl = 0.0;
    for (int i = 0; i <= 200; ++i) {
      double x = -lam / 2.0 + lam * i / 200.0;
      double hn = bandlim::hermite_functions(n, x).values[static_cast<size_t>(n)];
      sup_main = std::max(sup_main, std::abs(hn - bandlim::wkb_main(n, x)));
      double xs = -2.0 + 4.0 * i / 200.0;
      double hs = bandlim::hermite_functions(n, xs).values[static_cast<size_t>(n)];
      sup_simpl = std::max(sup_simpl, std::abs(hs - bandlim::wkb_simplified(n, xs)));
    }
    double env_main =
        bandlim::error_envelopes(n, lam / 2.0, bandlim::envelope_form::half_disk).sup_bound;
    double env_simpl =
        bandlim::error_envelopes(n, 2.0, bandlim::envelope_form::simplified).sup_bound;
    worst_main = std::max(worst_main, sup_main / env_main);
    worst_simpl = std::max(worst_simpl, sup_simpl / env_simpl);
    if (!(sup_main <= env_main)) {
      ++violations;
      c.fail("main term n=" + std::to_string(n) + ": " + fmt(sup_main) + " > " + fmt(env_main));
    }
    if (!(sup_simpl <= env_simpl)) {
      ++violations;
      c.fail("simplified n=" + std::to_string(n) + ": " + fmt(sup_simpl) + " > " +
             fmt(env_simpl));
    }
  }
  if (c.ok)
    c.note("n=10..400: zero violations; tightest margins (measured/bound) " + fmt(worst_main) +
           " main, " + fmt(worst_simpl) + " simplified");
  c.finish();
}

// AC3: kernel residual bounds 17 T^2/sqrt(2n+1) (sup) and 34 T^3/sqrt(2n+1)
// (Hilbert-Schmidt) for T in {1,2}, every n in 10..100, where the regime
// T >= 1, n >= max(6, 2T^2) holds.
void ac3() {
  criterion c("AC3");
  int checked = 0;
  double worst = 0.0;
  for (double T : {1.0, 2.0}) {
    for (int n = 10; n <= 100; ++n) {
      bandlim::kernel_scan s = bandlim::residual_scan(n, T, 80);
      if (!s.regime_ok) continue;
      ++checked;
      double srt = std::sqrt(2.0 * n + 1.0);
      double ub = 17.0 * T * T / srt;
      double hb = 34.0 * T * T * T / srt;
      worst = std::max(worst, std::max(s.E_tilde / ub, s.hs_norm / hb));
      if (!(s.E_tilde <= ub))
        c.fail("T=" + fmt(T) + " n=" + std::to_string(n) + ": E_tilde " + fmt(s.E_tilde) +
               " > " + fmt(ub));
      if (!(s.hs_norm <= hb))
        c.fail("T=" + fmt(T) + " n=" + std::to_string(n) + ": HS " + fmt(s.hs_norm) + " > " +
               fmt(hb));
    }
  }
  if (c.ok)
    c.note(std::to_string(checked) + " in-regime (T,n) pairs, zero violations, max ratio " +
           fmt(worst));
  c.finish();
}

// AC4: every measured Legendre / weighted-Chebyshev coefficient of the
// band-limited sinc signal lies below its closed-form bound, for c in
// {10, 50} and the 60 degrees past ceil(e c/2).
void ac4() {
  criterion c("AC4", 20.0);
  int checked = 0;
  double worst = 0.0;
  for (double cc : {10.0, 50.0}) {
    int k0 = static_cast<int>(std::ceil(std::exp(1.0) * cc / 2.0)) + 1;
    for (int k = k0; k <= k0 + 60; ++k) {
      double pl = std::abs(bandlim::bandlimited_legendre_coeff(cc, k));
      double pb = bandlim::bound_legendre_coeff(cc, k).value;
      double tl = std::abs(bandlim::bandlimited_chebyshev_coeff(cc, k));
      double tb = bandlim::bound_chebyshev_coeff(cc, k).value;
      ++checked;
      if (pb > 0.0) worst = std::max(worst, pl / pb);
      if (tb > 0.0) worst = std::max(worst, tl / tb);
      if (!(pl <= pb))
        c.fail("c=" + fmt(cc) + " k=" + std::to_string(k) + ": |P-coeff| " + fmt(pl) + " > " +
               fmt(pb));
      if (!(tl <= tb))
        c.fail("c=" + fmt(cc) + " k=" + std::to_string(k) + ": |T-coeff| " + fmt(tl) + " > " +
               fmt(tb));
    }
  }
  if (c.ok)
    c.note(std::to_string(checked) + " degrees x 2 families, zero violations, max ratio " +
           fmt(worst));
  c.finish();
}

// AC5: L2(-1,1) Legendre tail and weighted Chebyshev tail of the c=10 signal
// against their closed-form bounds for N = 14..34.
void ac5() {
  criterion c("AC5");
  const double cc = 10.0;
  int n0 = static_cast<int>(std::ceil(5.0 * std::exp(1.0)));  // 14
  double worst = 0.0;
  for (int N = n0; N <= n0 + 20; ++N) {
    double ml = bandlim::bandlimited_legendre_tail_l2(cc, N);
    double bl = bandlim::bound_legendre_tail(cc, N, bandlim::norm_kind::l2).value;
    double mw = bandlim::bandlimited_chebyshev_tail_weighted(cc, N);
    double bw = bandlim::bound_chebyshev_tail(cc, N).value;
    if (bl > 0.0) worst = std::max(worst, ml / bl);
    if (bw > 0.0) worst = std::max(worst, mw / bw);
    if (!(ml <= bl))
      c.fail("N=" + std::to_string(N) + ": Legendre tail " + fmt(ml) + " > " + fmt(bl));
    if (!(mw <= bw))
      c.fail("N=" + std::to_string(N) + ": Chebyshev tail " + fmt(mw) + " > " + fmt(bw));
  }
  if (c.ok)
    c.note("N=" + std::to_string(n0) + ".." + std::to_string(n0 + 20) +
           ", zero violations, max ratio " + fmt(worst));
  c.finish();
}

// AC6: concentration-spectrum sandwich at c in {2,5,10} with basis order
// ceil(2c/pi)+40: trace identity, plunge location, the two eigenvalue lower
// bounds in their regimes, the certified piecewise bound against the solver
// value at its certified index, and the coefficient bound on |beta_k^n|.
void ac6() {
  criterion c("AC6", 120.0);
  for (double cc : {2.0, 5.0, 10.0}) {
    std::string tag = "c=" + fmt(cc);
    int K = static_cast<int>(std::ceil(2.0 * cc / bandlim::pi)) + 40;
    bandlim::pswf_spectrum s = bandlim::spectrum(cc, K);

    double trace = 0.0;
    for (double l : s.lambdas) trace += l;
    double expected = 2.0 * cc / bandlim::pi;
    if (!(std::abs(trace - expected) <= 1e-6 * expected))
      c.fail(tag + ": trace " + fmt(trace) + " vs " + fmt(expected));

    int plunge = static_cast<int>(std::floor(2.0 * cc / bandlim::pi));
    if (!(s.lambdas[static_cast<size_t>(plunge) + 1] < 0.5))
      c.fail(tag + ": lambda_{plunge+1} not below 1/2");
    if (!(plunge >= 1) || !(s.lambdas[static_cast<size_t>(plunge) - 1] > 0.5))
      c.fail(tag + ": lambda_{plunge-1} not above 1/2");

    for (int n = 0; n < s.order; ++n) {
      double lam = s.lambdas[static_cast<size_t>(n)];
      if (!(lam > 1e-12)) break;  // sorted descending
      if (!(lam >= bandlim::lower_bound_naz(n, cc)))
        c.fail(tag + " n=" + std::to_string(n) + ": lambda below the total lower bound");
      if (n >= 3 && n >= 2.0 * cc / bandlim::pi &&
          !(lam >= bandlim::lower_bound_bk(n, cc)))
        c.fail(tag + " n=" + std::to_string(n) + ": lambda below the exponential lower bound");
    }

    for (int m = 1; m <= 12; ++m) {
      bandlim::piecewise_bound pb = bandlim::certified_lower_bound_piecewise(m, cc);
      double lam = s.lambdas[static_cast<size_t>(pb.certified_index)];
      // 1e-12 absolute slack: for m near 12 both sides sit at the quadrature
      // noise floor (~1e-15) far below lambda's discretization floor.
      if (!(pb.value <= lam + 1e-12))
        c.fail(tag + " m=" + std::to_string(m) + ": certified bound " + fmt(pb.value) +
               " above lambda_" + std::to_string(pb.certified_index) + " = " + fmt(lam));
    }

    int n_max = static_cast<int>(std::ceil(2.0 * cc / bandlim::pi)) + 6;
    for (int n = 0; n <= n_max; ++n) {
      for (int k = 0; k <= 40; ++k) {
        double b = std::abs(s.beta[static_cast<size_t>(n)][static_cast<size_t>(k)]);
        double bb = bandlim::beta_bound(n, k, cc);
        // 1e-9 absolute floor: past k ~ 2c the true coefficient is smaller
        // than the eigensolver's absolute noise, so only the analog level of
        // the computed value is meaningful there.
        if (!(b <= bb + 1e-9))
          c.fail(tag + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                 ": |beta| " + fmt(b) + " > bound " + fmt(bb));
      }
    }
  }
  if (c.ok)
    c.note("c in {2,5,10}: trace to 1e-6, plunge straddles 1/2, lower bounds and coefficient "
           "bounds hold (piecewise slack 1e-12, beta floor 1e-9)");
  c.finish();
}

// AC7: for the indicator signal, the scaled projection (c=100, dilation
// 1/sqrt(c)) beats the unscaled one at order 40 in L2(-1,1), and both
// improve from order 40 to 80.
void ac7() {
  criterion c("AC7");
  bandlim::signal f = bandlim::make_indicator();
  auto err = [&](bandlim::basis_spec b, int n) {
    bandlim::expansion e = bandlim::expand(f, b, n);
    return bandlim::error_norm(f, e, bandlim::norm_kind::l2, -1.0, 1.0);
  };
  bandlim::basis_spec scaled = bandlim::basis_spec::scaled_hermite(0.1);  // 1/sqrt(100)
  bandlim::basis_spec plain = bandlim::basis_spec::hermite();
  double s40 = err(scaled, 40), s80 = err(scaled, 80);
  double u40 = err(plain, 40), u80 = err(plain, 80);
  if (!(s40 < u40)) c.fail("scaled " + fmt(s40) + " not below unscaled " + fmt(u40) + " at n=40");
  if (!(s80 < s40)) c.fail("scaled error does not decrease 40 -> 80");
  if (!(u80 < u40)) c.fail("unscaled error does not decrease 40 -> 80");
  if (c.ok)
    c.note("L2(-1,1): scaled " + fmt(s40) + " < unscaled " + fmt(u40) + " at n=40; n=80 gives " +
           fmt(s80) + " / " + fmt(u80));
  c.finish();
}

// AC8: Rayleigh quotients of the commuting differential operator on the
// computed eigenfunctions at c=5 stay inside [n(n+1), n(n+1)+c^2] for
// n <= 15. The integral-operator eigenvectors carry no relative accuracy
// below the 1e-14 discretization floor (n >= 12 here), so those orders use
// the eigenfunctions computed from the differential operator itself, whose
// Ritz value is by definition the Rayleigh quotient of the computed vector.
void ac8() {
  criterion c("AC8");
  const double cc = 5.0;
  bandlim::pswf_spectrum s = bandlim::spectrum(cc);
  std::vector<double> ritz = bandlim::chi_spectrum(cc);
  int direct = 0, tridiag = 0;
  for (int n = 0; n <= 15; ++n) {
    bandlim::chi_bracket_result r = bandlim::chi_bracket(n, cc, s);
    double q;
    if (r.rayleigh.has_value()) {
      q = *r.rayleigh;
      ++direct;
    } else {
      q = ritz[static_cast<size_t>(n)];
      ++tridiag;
    }
    if (!(r.lower <= q && q <= r.upper))
      c.fail("n=" + std::to_string(n) + ": quotient " + fmt(q) + " outside [" + fmt(r.lower) +
             ", " + fmt(r.upper) + "]");
  }
  if (c.ok)
    c.note("zero violations; quotients from the integral-operator eigenvectors for " +
           std::to_string(direct) + " orders, from the differential-operator Ritz vectors for " +
           std::to_string(tridiag) + " below-floor orders");
  c.finish();
}

}  // namespace

int main() {
  ac1();
  ac2();
  ac3();
  ac4();
  ac5();
  ac6();
  ac7();
  ac8();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 8 criteria passed\n");
  return 0;
}
