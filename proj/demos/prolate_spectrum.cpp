// Spectrum of the time-band concentration operator at bandwidth c = 5:
// eigenvalues with their certified lower bounds, and the Ritz values of the
// commuting differential operator against the n(n+1) .. n(n+1)+c^2 bracket.

#include <cmath>
#include <cstdio>

#include "bandlim/pswf.hpp"

int main() {
  using namespace bandlim;
  const double c = 5.0;
  pswf_spectrum s = spectrum(c);
  std::vector<double> chi = chi_spectrum(c);

  std::printf("bandwidth c = %g, basis order K = %d\n\n", c, s.order);
  std::printf("%3s %23s %13s %13s %13s %23s\n", "n", "lambda_n", "lower(total)",
              "lower(cert.)", "chi_n", "bracket");
  for (int n = 0; n < 16; ++n) {
    double lam = s.lambdas[static_cast<size_t>(n)];
    double naz = lower_bound_naz(n, c);
    double cert = (n + 1 <= 8) ? certified_lower_bound_piecewise(n + 1, c).value
                               : std::nan("");
    double lo = n * (n + 1.0), hi = lo + c * c;
    std::printf("%3d %23.16e %13.4e %13.4e %13.6f [%g, %g]\n", n, lam, naz, cert,
                chi[static_cast<size_t>(n)], lo, hi);
  }

  double trace = 0.0;
  for (double l : s.lambdas) trace += l;
  std::printf("\nsum of eigenvalues = %.15f   (2c/pi = %.15f)\n", trace, 2.0 * c / pi);
  std::printf("psi_0(0.5) = %.15f\n", pswf_value(s, 0, 0.5));
  return 0;
}
