#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bandlim/quadrature.hpp"

using namespace bandlim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("gauss-legendre nodes and weights") {
  SECTION("order 1 is the midpoint rule") {
    const auto& r = gauss_legendre(1);
    REQUIRE(r.nodes.size() == 1);
    REQUIRE_THAT(r.nodes[0], WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(r.weights[0], WithinAbs(2.0, 1e-15));
  }
  SECTION("order 2 nodes are +-1/sqrt(3)") {
    const auto& r = gauss_legendre(2);
    REQUIRE_THAT(r.nodes[0], WithinAbs(-1.0 / std::sqrt(3.0), 1e-15));
    REQUIRE_THAT(r.nodes[1], WithinAbs(1.0 / std::sqrt(3.0), 1e-15));
  }
  SECTION("weights sum to 2, nodes ascending and symmetric") {
    for (int m : {3, 16, 64, 257, 512}) {
      const auto& r = gauss_legendre(m);
      double s = 0.0;
      for (double w : r.weights) s += w;
      REQUIRE_THAT(s, WithinAbs(2.0, 1e-13));
      for (std::size_t i = 1; i < r.nodes.size(); ++i) REQUIRE(r.nodes[i] > r.nodes[i - 1]);
      for (int i = 0; i < m; ++i) REQUIRE_THAT(r.nodes[i] + r.nodes[m - 1 - i], WithinAbs(0.0, 1e-15));
    }
  }
  SECTION("degree 2m-1 exactness") {
    // int_{-1}^{1} x^8 = 2/9, x^9 = 0 with m = 5
    const auto& r = gauss_legendre(5);
    double s8 = 0.0, s9 = 0.0;
    for (int i = 0; i < 5; ++i) {
      s8 += r.weights[i] * std::pow(r.nodes[i], 8);
      s9 += r.weights[i] * std::pow(r.nodes[i], 9);
    }
    REQUIRE_THAT(s8, WithinAbs(2.0 / 9.0, 1e-14));
    REQUIRE_THAT(s9, WithinAbs(0.0, 1e-14));
  }
  SECTION("invalid order throws") {
    REQUIRE_THROWS_AS(gauss_legendre(0), std::invalid_argument);
    REQUIRE_THROWS_AS(gauss_legendre(4097), std::invalid_argument);
  }
}

TEST_CASE("interval integration") {
  SECTION("int_0^pi sin = 2") {
    REQUIRE_THAT(integrate([](double t) { return std::sin(t); }, 0.0, pi), WithinAbs(2.0, 1e-13));
  }
  SECTION("long interval splits into panels, moderate oscillation survives") {
    double v = integrate([](double t) { return std::exp(-t * t / 2) * std::cos(3 * t); }, -20.0, 20.0);
    REQUIRE_THAT(v, WithinAbs(0.027846124825533989, 1e-12));
  }
  SECTION("reversed endpoints throw") {
    REQUIRE_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
  }
  SECTION("empty interval is 0") {
    REQUIRE(integrate([](double) { return 1.0; }, 2.5, 2.5) == 0.0);
  }
}

TEST_CASE("oscillatory integration keeps nodes per period") {
  SECTION("sin(t)/t over [0,10]") {
    double v = integrate_oscillatory([](double t) { return std::sin(t) / t; }, 0.0, 10.0, 1.0);
    REQUIRE_THAT(v, WithinAbs(1.658347594218874, 1e-12));
  }
  SECTION("frequency 200") {
    double v = integrate_oscillatory([](double t) { return std::cos(200.0 * t); }, 0.0, 1.0, 200.0);
    REQUIRE_THAT(v, WithinAbs(std::sin(200.0) / 200.0, 1e-10));
  }
}

TEST_CASE("piecewise integration splits at breakpoints") {
  double v = integrate_piecewise([](double t) { return std::abs(t); }, -1.0, 1.0, {0.0});
  REQUIRE_THAT(v, WithinAbs(1.0, 1e-14));
  // jump integrand: indicator of [-1/2, 1/2]
  auto f = [](double t) { return std::abs(t) <= 0.5 ? 1.0 : 0.0; };
  double v2 = integrate_piecewise(f, -1.0, 1.0, {-0.5, 0.5});
  REQUIRE_THAT(v2, WithinAbs(1.0, 1e-14));
  // breakpoints outside the interval are ignored
  double v3 = integrate_piecewise(f, -0.25, 0.25, {-0.5, 0.5});
  REQUIRE_THAT(v3, WithinAbs(0.5, 1e-14));
}

TEST_CASE("chebyshev-weighted rule") {
  SECTION("weight measure has mass pi") {
    REQUIRE_THAT(integrate_chebyshev_weighted([](double) { return 1.0; }, 64),
                 WithinAbs(pi, 1e-13));
  }
  SECTION("T_3 T_3 and T_2 T_5 moments") {
    auto t3 = [](double x) { return 4 * x * x * x - 3 * x; };
    auto t2 = [](double x) { return 2 * x * x - 1; };
    auto t5 = [](double x) { return 16 * std::pow(x, 5) - 20 * x * x * x + 5 * x; };
    REQUIRE_THAT(integrate_chebyshev_weighted([&](double x) { return t3(x) * t3(x); }, 64),
                 WithinAbs(pi / 2, 1e-13));
    REQUIRE_THAT(integrate_chebyshev_weighted([&](double x) { return t2(x) * t5(x); }, 64),
                 WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
  // inverse-square-root singularity: limited to ~1e-8 by abscissa rounding
  double v = integrate_tanh_sinh([](double x) { return 1.0 / std::sqrt(1.0 - x * x); });
  REQUIRE_THAT(v, WithinRel(pi, 5e-8));
  double v2 = integrate_tanh_sinh([](double x) { return x * x * x * x; });
  REQUIRE_THAT(v2, WithinAbs(0.4, 1e-12));
  // log singularity integrates to full precision
  double v3 = integrate_tanh_sinh([](double x) { return std::log(1.0 - x * x); });
  REQUIRE_THAT(v3, WithinAbs(4.0 * std::log(2.0) - 4.0, 1e-11));
}
