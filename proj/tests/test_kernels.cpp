#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/kernels.hpp"

using namespace rlab;

namespace {

bool close(cplx a, cplx b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

// frozen from tests/oracle/s2_oracle.py
TEST_CASE("kernel values against the oracle") {
  KernelFamily kf(reference_params());
  CHECK(close(kf.kk(0.0), 0.71502737265774370085, 1e-13));
  CHECK(close(kf.kk_star(0.0), 1.3367215810095224739, 1e-13));
  CHECK(close(kf.mu(0.3), cplx(0.43177520028098827606, 0.91965844483050405715), 1e-12));
  CHECK(close(kf.kk_hat(0.2), 0.38851345648088021775, 1e-13));
}

TEST_CASE("K is even and real on the real line; mu has a double zero at 0") {
  KernelFamily kf(reference_params());
  for (double x : {0.1, 0.7, 2.3, 6.0}) {
    CHECK(close(kf.kk(x), kf.kk(-x), 1e-13));
    CHECK(std::abs(kf.kk(x).imag()) < 1e-14 * std::abs(kf.kk(x)));
    CHECK(std::abs(kf.kk_star(x).imag()) < 1e-14 * std::abs(kf.kk_star(x)));
  }
  CHECK(kf.mu(0.0) == 0.0);
}

TEST_CASE("spectral-side kernels are the kernels of the spectral parameters") {
  SystemParams p = reference_params();
  KernelFamily kf(p);
  KernelFamily sp(p.spectral());
  for (cplx l : {cplx(0.1), cplx(-0.4, 0.05), cplx(1.3)}) {
    CHECK(close(kf.kk_hat(l), sp.kk(l), 1e-13));
    CHECK(close(kf.kk_hat_star(l), sp.kk_star(l), 1e-13));
    CHECK(close(kf.mu_hat(l), sp.mu(l), 1e-13));
  }
}

TEST_CASE("mu factorizes into eta and the Vandermonde") {
  KernelFamily kf(reference_params());
  Tuple x = make_tuple({0.3, -0.45, 1.1});
  CHECK(close(kf.mu_n(x), kf.eta(x) * kf.delta(x), 1e-12));
  // Π_{i≠j} μ(x_i - x_j) = μ'(x) μ'(-x)
  CHECK(close(kf.mu_n(x), kf.mu_prime(x) * kf.mu_prime(-x), 1e-12));
}

TEST_CASE("g <-> g* swaps K and K*") {
  SystemParams p = reference_params();
  KernelFamily a(p), b(p.dual());
  for (double x : {0.0, 0.4, 2.0}) {
    CHECK(close(a.kk(x), b.kk_star(x), 1e-13));
    CHECK(close(a.kk_star(x), b.kk(x), 1e-13));
  }
}

TEST_CASE("envelopes and large-|x| asymptotics") {
  KernelFamily kf(reference_params());
  KernelBounds b = kernel_bounds(kf, 20.0, 401);
  CHECK(b.k_envelope_monotone);
  CHECK(b.mu_rel_dev_plus < 1e-6);
  CHECK(b.mu_rel_dev_minus < 1e-6);
  CHECK(b.k_rel_dev < 1e-6);
  CHECK(std::isfinite(b.c_k));
  CHECK(b.c_k >= std::abs(kf.kk(0.0)) - 1e-15);
}

TEST_CASE("cross products and poles") {
  SystemParams p = reference_params();
  KernelFamily kf(p);
  Tuple x = make_tuple({0.2, -0.1});
  Tuple y = make_tuple({0.5});
  CHECK(close(kf.cross_k(x, y, false), kf.kk(-0.3) * kf.kk(-0.6), 1e-13));
  CHECK(close(kf.cross_k(x, y, true), kf.kk_star(-0.3) * kf.kk_star(-0.6), 1e-13));
  // K has a pole where ix + g*/2 hits the zero of S2 at 0
  cplx pole = I * 0.5 * p.g_star();
  CHECK_THROWS_AS(kf.kk(pole), SingularValueError);
}
