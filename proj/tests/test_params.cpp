#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/params.hpp"

using namespace rlab;

TEST_CASE("reference point and derived couplings") {
  SystemParams p = reference_params();
  CHECK(p.omega1 == 1.0);
  CHECK(p.omega2 == std::sqrt(2.0));
  CHECK(p.g == 0.4);
  CHECK(std::abs(p.g_star() - (1.0 + std::sqrt(2.0) - 0.4)) < 1e-15);
  CHECK(p.nu_g() == doctest::Approx(0.4 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(p.nu_g_star() == doctest::Approx((1.0 + std::sqrt(2.0) - 0.4) / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(p.q() - 0.5 * (1.0 + std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("g -> g* is an involution and the spectral side reflects to g-hat") {
  SystemParams p{cplx(1.0, 0.1), cplx(1.3, -0.2), cplx(0.5, 0.05)};
  SystemParams back = p.dual().dual();
  CHECK(std::abs(back.g - p.g) < 1e-15);
  SystemParams s = p.spectral();
  // the reflected coupling of the spectral side is ĝ
  CHECK(std::abs(s.g_star() - p.g_hat()) < 1e-14);
  // the map is an involution
  SystemParams ss = s.spectral();
  CHECK(std::abs(ss.omega1 - p.omega1) < 1e-14);
  CHECK(std::abs(ss.omega2 - p.omega2) < 1e-14);
  CHECK(std::abs(ss.g - p.g) < 1e-14);
}

TEST_CASE("validation") {
  CHECK(validate(reference_params()).core_ok());
  CHECK_NOTHROW(require_valid(reference_params()));

  ValidityResult bad = validate({1.0, std::sqrt(2.0), 3.0});
  CHECK_FALSE(bad.core_ok());
  CHECK_FALSE(bad.re_g_in_range);
  CHECK_THROWS_AS(require_valid({1.0, std::sqrt(2.0), 3.0}), PreconditionError);
  CHECK_THROWS_AS(require_valid({-1.0, 1.0, 0.1}), PreconditionError);

  // rational period ratio only warns
  ValidityResult rat = validate({1.0, 1.5, 0.4});
  CHECK(rat.core_ok());
  CHECK_FALSE(rat.warnings.empty());
  CHECK(validate(reference_params()).warnings.empty());
}

TEST_CASE("tuple helpers") {
  Tuple t = make_tuple({1.0, cplx(0, 2)});
  CHECK(t.size() == 2);
  CHECK(t(1) == cplx(0, 2));
  Tuple r = real_tuple({0.5, -0.25, 3});
  CHECK(r.size() == 3);
  CHECK(tuple_sum(r) == cplx(3.25, 0));
}
