#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/kernels.hpp"
#include "rlab/operators.hpp"

using namespace rlab;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

TestFunction sample2() {
  TestFunction f = TestFunction::plane_wave(make_tuple({0.13, -0.21}));
  f.add(0.5, make_tuple({cplx(0.4, -0.2), cplx(-0.3, 0.1)}));
  return f;
}

}  // namespace

TEST_CASE("index sets") {
  CHECK(subsets(4, 2).size() == 6);
  CHECK(subsets(3, 0).size() == 1);
  CHECK(subsets(3, 1)[2] == std::vector<int>{2});
  CHECK(multi_indices(2, 3).size() == 4);
  CHECK(multi_indices(3, 2).size() == 6);
  for (const auto& m : multi_indices(3, 4)) CHECK(m[0] + m[1] + m[2] == 4);
}

TEST_CASE("test functions shift exactly") {
  TestFunction f = sample2();
  Tuple x = make_tuple({0.3, cplx(-0.2, 0.1)});
  TestFunction g = shift(f, 1, cplx(0, -1.3));
  Tuple xs = x;
  xs(1) += cplx(0, -1.3);
  CHECK(close(g(x), f(xs), 1e-14));
  CHECK(TestFunction::constant(2, 3.0)(x) == cplx(3.0));
}

TEST_CASE("one particle: M_1 and N_r act on plane waves by multiplication") {
  SystemParams p = reference_params();
  Tuple x = make_tuple({0.37});
  TestFunction f = TestFunction::plane_wave(make_tuple({0.2}));
  cplx base = f(x);
  CHECK(close(apply_macdonald(1, f.fn(), x, p), std::exp(2 * pi * 0.2 * p.omega1) * base, 1e-14));
  CHECK(close(apply_macdonald(0, f.fn(), x, p), base, 1e-15));
  // N_1^{(1)} f = -[g|ω₁]_1/[-ω₁|ω₁]_1 f(x - iω₁)
  cplx c = -std::sin(pi * p.g / p.omega2) / std::sin(-pi * p.omega1 / p.omega2);
  CHECK(close(apply_noumi_sano(1, 1, f.fn(), x, p), c * std::exp(2 * pi * 0.2 * p.omega1) * base, 1e-13));
}

TEST_CASE("commutativity at n = 2 (property)") {
  SystemParams p = reference_params();
  Fn f = sample2().fn();
  Tuple x = make_tuple({cplx(0.3, 0.1), cplx(-0.2, 0.05)});
  for (int r = 0; r <= 2; ++r)
    for (int s = 0; s <= 2; ++s) {
      CAPTURE(r);
      CAPTURE(s);
      CHECK(close(macdonald(r, macdonald(s, f, p), p)(x), macdonald(s, macdonald(r, f, p), p)(x), 1e-12));
      for (int kind = 1; kind <= 2; ++kind) {
        CHECK(close(macdonald(r, noumi_sano(kind, s, f, p), p)(x),
                    noumi_sano(kind, s, macdonald(r, f, p), p)(x), 1e-12));
        CHECK(close(noumi_sano(kind, r, noumi_sano(kind, s, f, p), p)(x),
                    noumi_sano(kind, s, noumi_sano(kind, r, f, p), p)(x), 1e-12));
      }
      CHECK(close(noumi_sano(1, r, noumi_sano(2, s, f, p), p)(x),
                  noumi_sano(2, s, noumi_sano(1, r, f, p), p)(x), 1e-12));
    }
}

TEST_CASE("H_r: gauge form equals the direct form and is invariant under g -> g*") {
  SystemParams p = reference_params();
  Fn f = sample2().fn();
  Tuple x = make_tuple({0.3, -0.25});
  for (int r = 1; r <= 2; ++r) {
    RuijsenaarsResult h = apply_ruijsenaars(r, f, x, p);
    CHECK(h.branch_clean);
    CHECK(close(h.value, apply_ruijsenaars_direct(r, f, x, p), 1e-12));
    CHECK(close(h.value, apply_ruijsenaars(r, f, x, p.dual()).value, 1e-12));
  }
}

TEST_CASE("M_r(g) = eta^-1 M_r(g*) eta") {
  SystemParams p = reference_params();
  KernelFamily kf(p);
  TestFunction tf = sample2();
  Tuple x = make_tuple({0.3, -0.25});
  Fn eta_f = [&](const Tuple& y) { return kf.eta(y) * tf(y); };
  for (int r = 1; r <= 2; ++r)
    CHECK(close(apply_macdonald(r, tf.fn(), x, p), apply_macdonald(r, eta_f, x, p.dual()) / kf.eta(x), 1e-12));
}

TEST_CASE("singular coefficients and divergent series raise") {
  SystemParams p = reference_params();
  Fn one = TestFunction::constant(2).fn();
  // coinciding coordinates make the Macdonald denominator vanish
  CHECK_THROWS_AS(apply_macdonald(1, one, make_tuple({0.2, 0.2}), p), SingularValueError);
  CHECK_THROWS_AS(apply_noumi_sano(3, 1, one, make_tuple({0.2, 0.1}), p), PreconditionError);
  Fn one1 = TestFunction::constant(1).fn();
  CHECK_THROWS_AS(noumi_sano_series(2, -0.1, 10, one1, make_tuple({0.2}), p), DivergenceError);
}

TEST_CASE("Noumi-Sano generating series converges geometrically") {
  SystemParams p = reference_params();
  Fn one = TestFunction::constant(1).fn();
  Tuple x = make_tuple({0.2});
  SeriesResult a = noumi_sano_series(2, 0.3, 20, one, x, p);
  SeriesResult b = noumi_sano_series(2, 0.3, 40, one, x, p);
  CHECK(a.terms == 21);
  CHECK(std::abs(a.value - b.value) <= 3 * a.tail_estimate + 1e-15);
  CHECK(b.tail_estimate < a.tail_estimate);
}
