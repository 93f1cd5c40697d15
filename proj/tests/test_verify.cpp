#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/verify.hpp"

using namespace rlab;

TEST_CASE("finish_report switches to the absolute residual near zero") {
  VerificationReport r;
  r.lhs = 1.0 + 1e-9;
  r.rhs = 1.0;
  r.tolerance = 1e-8;
  finish_report(r);
  CHECK(r.pass);
  CHECK(r.rel_residual == doctest::Approx(1e-9).epsilon(1e-3));
  r.lhs = 1e-13;
  r.rhs = 0;
  finish_report(r);
  CHECK(r.pass);
  CHECK(r.abs_residual == doctest::Approx(1e-13));
}

TEST_CASE("Fourier transform outside its strip is a precondition error") {
  SystemParams p = reference_params();
  CHECK_THROWS_AS(check_fourier(p, cplx(0, p.nu_g()), 1e-8), PreconditionError);
  VerificationReport r = check_fourier(p, 0.3, 1e-8);
  CHECK(r.pass);
}

TEST_CASE("id2 midpoint is balanced and the check passes off the midpoint") {
  SystemParams p = reference_params();
  auto [g, f] = id2_midpoint(1, 1, p);
  CHECK(std::abs(g.sum() + f.sum() - 2.0 * (p.omega1 + p.omega2)) < 1e-14);
  // a balanced perturbation
  g(0) += 0.05;
  g(1) -= 0.05;
  f(1) += cplx(0, 0.02);
  f(2) -= cplx(0, 0.02);
  CHECK(check_rains_id2(1, 1, p, g, f, 1e-6).pass);
  // m = 0 is the hyperbolic beta integral
  auto [g0, f0] = id2_midpoint(1, 0, p);
  CHECK(check_rains_id2(1, 0, p, g0, f0, 1e-8).pass);
  g0(0) += 0.1;
  CHECK_THROWS_AS(check_rains_id2(1, 0, p, g0, f0, 1e-8), PreconditionError);
}

TEST_CASE("S2 residues and the Noumi-Sano residue formula") {
  SystemParams p = reference_params();
  CHECK(check_s2_residues(p, 1e-8).pass);
  TestFunction f = TestFunction::plane_wave(make_tuple({0.13}));
  for (int m = 0; m <= 1; ++m)
    for (int k = 0; k <= 1; ++k) CHECK(check_ns_residue(m, k, p, 0.1, 0.3, f, 1e-8).pass);
}

TEST_CASE("Appendix C inequalities are deterministic in the seed") {
  VerificationReport a = check_appendix_c(2000, 4, 7);
  VerificationReport b = check_appendix_c(2000, 4, 7);
  CHECK(a.pass);
  CHECK(a.rel_residual == b.rel_residual);
  CHECK(a.diagnostics == b.diagnostics);
}

TEST_CASE("suites and identity names") {
  auto fast = suite_identities("fast");
  auto full = suite_identities("full");
  CHECK(fast.size() < full.size());
  for (const auto& id : fast) CHECK(std::find(full.begin(), full.end(), id) != full.end());
  CHECK_THROWS_AS(suite_identities("nope"), PreconditionError);
  CHECK_THROWS_AS(run_identity("no-such-identity", reference_params(), 0, 1), PreconditionError);
  VerificationReport r = run_identity("rains-im", reference_params(), 1, 1);
  CHECK(r.identity.rfind("rains-im", 0) == 0);
  CHECK(r.pass);
  CHECK(r.rel_residual <= r.tolerance);
}
