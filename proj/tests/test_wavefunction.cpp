#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/wavefunction.hpp"

using namespace rlab;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

WaveSpec spec(std::initializer_list<cplx> lambdas) {
  WaveSpec s;
  s.params = reference_params();
  s.lambdas = make_tuple(lambdas);
  s.level_tol = {1e-10, 1e-8, 1e-6};
  return s;
}

}  // namespace

TEST_CASE("theta") {
  SystemParams p = reference_params();
  CHECK(theta(0.5, 2, p) == doctest::Approx(p.nu_g() * 0.5 / (2 * std::exp(1.0))));
  CHECK(theta(0.5, 3, p) == doctest::Approx(theta(0.5, 2, p) / 2));
}

TEST_CASE("one particle is exact") {
  WaveFunction w(spec({0.3}));
  IntegralResult r = w.psi(make_tuple({0.7}));
  CHECK(r.value == std::exp(2 * pi * I * 0.3 * 0.7));
  CHECK(r.error_estimate == 0);
}

TEST_CASE("two particles: symmetric in x and in lambda") {
  Tuple x = make_tuple({0.2, -0.35});
  Tuple xs = make_tuple({-0.35, 0.2});
  WaveFunction a(spec({0.25, -0.15}));
  WaveFunction b(spec({-0.15, 0.25}));
  IntegralResult r = a.psi(x);
  CHECK(r.converged);
  CHECK(close(r.value, a.psi(xs).value, 1e-8));
  CHECK(close(r.value, b.psi(x).value, 1e-8));
  CHECK(a.cached_values() > 0);
}

TEST_CASE("E approaches the plane-wave sum at large separation") {
  WaveSpec s = spec({0.2, -0.1});
  WaveFunction w(s);
  double prev = 1e300;
  for (double d : {2.0, 4.0}) {
    Tuple x = make_tuple({d / 2, -d / 2});
    double diff = std::abs(w.e_function(x) - w.e_asymptotic(x));
    CHECK(diff < prev);
    prev = diff;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("out of range inputs") {
  CHECK_THROWS_AS(WaveFunction(spec({0.1, 0.2, 0.3, 0.4, 0.5})), UnsupportedDimensionError);
  WaveFunction w(spec({0.1, 0.2}));
  CHECK_THROWS_AS(w.psi(make_tuple({0.1})), PreconditionError);
}
