#include "doctest.h"
#include "rlab/baxter.hpp"
#include "rlab/double_sine.hpp"
#include "rlab/errors.hpp"
#include "rlab/operators.hpp"

using namespace rlab;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

BaxterKernelSpec make(BaxterVariant v, int n, cplx lambda) {
  BaxterKernelSpec s;
  s.variant = v;
  s.n = n;
  s.lambda = lambda;
  s.params = reference_params();
  return s;
}

}  // namespace

TEST_CASE("variant names") {
  CHECK(parse_variant("Q") == BaxterVariant::Q);
  CHECK(parse_variant("Q*") == BaxterVariant::Qstar);
  CHECK(parse_variant("Lambdastar") == BaxterVariant::Lambdastar);
  CHECK(parse_variant("L") == BaxterVariant::Lambda);
  CHECK(parse_variant(to_string(BaxterVariant::Lambdastar)) == BaxterVariant::Lambdastar);
  CHECK_THROWS_AS(parse_variant("R"), PreconditionError);
  CHECK(make(BaxterVariant::Lambda, 3, 0).y_arity() == 2);
  CHECK(make(BaxterVariant::Qstar, 3, 0).y_arity() == 3);
}

TEST_CASE("normalization constant") {
  SystemParams p = reference_params();
  cplx d1 = 1.0 / (std::sqrt(p.omega1 * p.omega2) * s2(p.g, p).value);
  CHECK(close(d_const(1, p.g, p), d1, 1e-14));
  CHECK(close(d_const(3, p.g, p), d1 * d1 * d1 / 6.0, 1e-14));
  CHECK(close(BaxterOperator(make(BaxterVariant::Lambdastar, 3, 0)).normalization(),
              d_const(2, p.g_star(), p), 1e-14));
}

TEST_CASE("cached real-argument kernel agrees with the generic path") {
  for (BaxterVariant v : {BaxterVariant::Q, BaxterVariant::Qstar, BaxterVariant::Lambda,
                          BaxterVariant::Lambdastar}) {
    CAPTURE(to_string(v));
    BaxterOperator op(make(v, 2, cplx(0.2, 0.05)));
    Tuple x = make_tuple({0.3, -0.2});
    Tuple y = v == BaxterVariant::Q || v == BaxterVariant::Qstar ? make_tuple({0.1, 0.45}) : make_tuple({0.1});
    cplx fast = op.kernel(x, y);
    // nudging y off the real axis forces the generic path
    Tuple yc = y;
    yc(0) += cplx(0, 1e-9);
    CHECK(close(fast, op.kernel(x, yc), 1e-7));
    CHECK(close(fast, baxter_kernel(op.spec(), x, y), 1e-14));
  }
}

TEST_CASE("one particle: Q and Q* act on plane waves through the Fourier transform") {
  cplx lambda(0.15, 0.02);
  double l1 = -0.1;
  Tuple x = make_tuple({0.3});
  Fn f = TestFunction::plane_wave(make_tuple({l1})).fn();
  for (BaxterVariant v : {BaxterVariant::Q, BaxterVariant::Qstar}) {
    BaxterOperator op(make(v, 1, lambda));
    IntegralResult r = op.apply(f, x, op.default_quad(x, 1e-11));
    CHECK(r.converged);
    cplx eig = v == BaxterVariant::Q ? op.kernels().kk_hat(lambda - l1) : op.kernels().kk_hat_star(lambda - l1);
    CHECK(close(r.value, eig * std::exp(2 * pi * I * l1 * 0.3), 1e-9));
  }
}

TEST_CASE("Lambda_1 raising from arity 0 is a plane wave") {
  BaxterOperator op(make(BaxterVariant::Lambda, 1, 0.37));
  Fn one = TestFunction::constant(0).fn();
  Tuple x = make_tuple({0.25});
  IntegralResult r = op.apply(one, x, op.default_quad(x, 1e-12));
  CHECK(close(r.value, std::exp(2 * pi * I * 0.37 * 0.25), 1e-12));
}

TEST_CASE("kernel decay rate and truncation hints") {
  SystemParams p = reference_params();
  CHECK(BaxterOperator(make(BaxterVariant::Q, 1, 0.1)).kernel_rate() == doctest::Approx(pi * p.nu_g()));
  // along one axis the growth of mu cancels the decay of the K factors
  BaxterOperator op(make(BaxterVariant::Q, 2, 0.1));
  CHECK(op.kernel_rate() == doctest::Approx(0.0));
  QuadratureSpec q = op.default_quad(make_tuple({0.3, -0.5}), 1e-8, 2.0);
  CHECK(q.decay_rate[0] == doctest::Approx(2.0));
  CHECK(q.center[0] == doctest::Approx(-0.1));
  CHECK(q.plateau[0] == doctest::Approx(0.4));
}
