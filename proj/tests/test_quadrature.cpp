#include <cmath>

#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/quadrature.hpp"

using namespace rlab;

namespace {

QuadratureSpec spec(double rate, double rel = 1e-12, double abs = 1e-14) {
  QuadratureSpec q;
  q.decay_rate = {rate};
  q.rel_tol = rel;
  q.abs_tol = abs;
  q.margin = 3.0;
  return q;
}

}  // namespace

TEST_CASE("closed-form integrals over the line") {
  auto sech = [](double x) { return 1.0 / std::cosh(x); };
  IntegralResult r = integrate_1d([&](double x) { return cplx(sech(x)); }, spec(1.0));
  CHECK(r.converged);
  CHECK(std::abs(r.value - pi) < 1e-11);
  CHECK(std::abs(r.value - pi) <= 3 * r.error_estimate);

  // ∫ e^{iωx} sech x = π sech(πω/2)
  r = integrate_1d([&](double x) { return std::exp(cplx(0, 1.3 * x)) * sech(x); }, spec(1.0));
  CHECK(std::abs(r.value - pi / std::cosh(pi * 1.3 / 2)) < 1e-11);

  // ∫ e^{ax}/(1+e^x) = π / sin(πa)
  r = integrate_1d([](double x) { return cplx(std::exp(0.25 * x) / (1 + std::exp(x))); }, spec(0.25));
  CHECK(std::abs(r.value - pi / std::sin(pi / 4)) < 1e-10);
}

TEST_CASE("tensor rule in two and three dimensions") {
  QuadratureSpec q = spec(4.0, 1e-11, 1e-13);
  IntegralResult r2 = integrate_nd(
      [](std::span<const double> y) { return cplx(std::exp(-y[0] * y[0] - 2 * y[1] * y[1])); }, 2, q);
  CHECK(std::abs(r2.value - pi / std::sqrt(2.0)) < 1e-10);
  q.center = {0.3, -0.2, 0.1};
  IntegralResult r3 = integrate_nd(
      [](std::span<const double> y) {
        return cplx(std::exp(-(y[0] - 0.3) * (y[0] - 0.3) - (y[1] + 0.2) * (y[1] + 0.2) -
                             (y[2] - 0.1) * (y[2] - 0.1)));
      },
      3, q);
  CHECK(r3.converged);
  CHECK(std::abs(r3.value - std::pow(pi, 1.5)) < 1e-9);
  CHECK(r3.truncation_radius.size() == 3);
}

TEST_CASE("zero-dimensional integral is the integrand") {
  IntegralResult r = integrate_nd([](std::span<const double>) { return cplx(2.5, 1); }, 0, spec(1.0));
  CHECK(r.value == cplx(2.5, 1));
  CHECK(r.converged);
}

TEST_CASE("tanh-sinh handles interior kinks with breakpoints") {
  QuadratureSpec q = spec(1.0, 1e-10, 1e-13);
  q.scheme = NodeScheme::double_exponential;
  q.breakpoints = {0.0};
  IntegralResult r = integrate_1d([](double x) { return cplx(std::exp(-std::abs(x))); }, q);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-10);
}

TEST_CASE("errors and non-convergence are reported") {
  QuadratureSpec q = spec(1.0);
  CHECK_THROWS_AS(integrate_nd([](std::span<const double>) { return cplx(1); }, 5, q),
                  UnsupportedDimensionError);
  q.decay_rate = {0.0};
  CHECK_THROWS_AS(integrate_1d([](double) { return cplx(1); }, q), PreconditionError);

  // a node budget too small to converge
  QuadratureSpec tight = spec(1.0, 1e-15, 1e-16);
  tight.max_nodes = 50;
  IntegralResult r = integrate_1d([](double x) { return cplx(1.0 / std::cosh(x)); }, tight);
  CHECK_FALSE(r.converged);
  CHECK(r.nodes_used <= 50);
  CHECK_THROWS_AS(require_converged(r, "sech"), DivergenceError);
}

TEST_CASE("radius follows the decay rate and plateau") {
  QuadratureSpec q = spec(2.0, 1e-10, 1e-10);
  q.plateau = {1.5};
  CHECK(q.radius(0) == doctest::Approx(1.5 + (3.0 + std::log(1e10)) / 2.0));
  q.decay_rate = {2.0, 4.0};
  CHECK(q.radius(1) < q.radius(0));
  CHECK(q.rate(5) == 4.0);
}
