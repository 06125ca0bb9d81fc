// How tight are the oscillator-asymptotic error envelopes in practice?
// Scans |h_n - main term| against 2/lambda^3 on [-lambda/2, lambda/2] and the
// simplified form against 3T^2/(2n+1)^{5/4} on [-2, 2].

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bandlim/orthopoly.hpp"
#include "bandlim/wkb.hpp"

int main() {
  using namespace bandlim;
  std::printf("%6s %14s %14s %8s %14s %14s %8s\n", "n", "sup|h-main|", "envelope",
              "ratio", "sup|h-simpl|", "envelope", "ratio");
  for (int n = 10; n <= 400; n *= 2) {
    double lam = std::sqrt(2.0 * n + 1.0);
    double sup_main = 0.0, sup_simpl = 0.0;
    for (int i = 0; i <= 200; ++i) {
      double x = -lam / 2.0 + lam * i / 200.0;
      double hn = hermite_functions(n, x).values[static_cast<size_t>(n)];
      sup_main = std::max(sup_main, std::abs(hn - wkb_main(n, x)));
      double xs = -2.0 + 4.0 * i / 200.0;
      double hs = hermite_functions(n, xs).values[static_cast<size_t>(n)];
      sup_simpl = std::max(sup_simpl, std::abs(hs - wkb_simplified(n, xs)));
    }
    double env_main = error_envelopes(n, lam / 2.0, envelope_form::half_disk).sup_bound;
    double env_simpl = error_envelopes(n, 2.0, envelope_form::simplified).sup_bound;
    std::printf("%6d %14.6e %14.6e %8.4f %14.6e %14.6e %8.4f\n", n, sup_main, env_main,
                sup_main / env_main, sup_simpl, env_simpl, sup_simpl / env_simpl);
  }
  return 0;
}
