#pragma once

#include <stdexcept>
#include <string>

namespace bandlim {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// malformed configuration or unknown catalog name; the CLI maps this to exit code 2
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// arguments outside the stated validity regime of a bound or asymptotic
struct regime_error : std::domain_error {
  using std::domain_error::domain_error;
};

// a spectrum failed its truncation self-check; the CLI maps this to exit code 3
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bandlim
