#include "doctest.h"
#include "rlab/errors.hpp"
#include "rlab/io.hpp"

using namespace rlab;

TEST_CASE("complex number parsing") {
  CHECK(parse_cplx("1.5") == cplx(1.5));
  CHECK(parse_cplx("-0.2i") == cplx(0, -0.2));
  CHECK(parse_cplx("0.7+0.3i") == cplx(0.7, 0.3));
  CHECK(parse_cplx("1e-3-2i") == cplx(1e-3, -2));
  CHECK(parse_cplx("2.5e+1 - i") == cplx(25, -1));
  CHECK(parse_cplx("i") == cplx(0, 1));
  CHECK_THROWS_AS(parse_cplx("abc"), PreconditionError);
  CHECK_THROWS_AS(parse_cplx(""), PreconditionError);
  Tuple t = parse_tuple("0.1,-0.2+0.5i");
  REQUIRE(t.size() == 2);
  CHECK(t(1) == cplx(-0.2, 0.5));
}

TEST_CASE("json round trips") {
  cplx z(0.25, -1.5);
  CHECK(cplx_from_json(cplx_to_json(z)) == z);
  CHECK(cplx_from_json(json(2.0)) == cplx(2.0));
  CHECK(cplx_from_json(json("1+2i")) == cplx(1, 2));
  CHECK_THROWS_AS(cplx_from_json(json::array({1})), PreconditionError);

  SystemParams p{0.9, cplx(1.3, 0.1), cplx(0.5, 0.05)};
  SystemParams q = params_from_json(params_to_json(p));
  CHECK(q.omega1 == p.omega1);
  CHECK(q.omega2 == p.omega2);
  CHECK(q.g == p.g);
  CHECK(params_from_json(json::object()).g == reference_params().g);
  CHECK_THROWS_AS(params_from_json(json{{"gamma", 1}}), PreconditionError);

  QuadratureSpec s;
  s.rel_tol = 1e-7;
  s.decay_rate = {1.5, 2.0};
  s.scheme = NodeScheme::double_exponential;
  s.breakpoints = {0.0};
  QuadratureSpec s2 = quad_from_json(quad_to_json(s));
  CHECK(s2.rel_tol == s.rel_tol);
  CHECK(s2.decay_rate == s.decay_rate);
  CHECK(s2.scheme == s.scheme);
  CHECK(s2.breakpoints == s.breakpoints);
  CHECK_THROWS_AS(quad_from_json(json{{"rel_tol", -1.0}}), PreconditionError);
  CHECK_THROWS_AS(quad_from_json(json{{"scheme", "simpson"}}), PreconditionError);

  RunConfig c;
  c.suite = "fast";
  c.identities = {"fourier"};
  c.seed = 99;
  RunConfig c2 = config_from_json(config_to_json(c));
  CHECK(config_to_json(c2) == config_to_json(c));
}

TEST_CASE("report schema") {
  VerificationReport r;
  r.identity = "x";
  r.params = reference_params();
  r.add_probe("lambda", {cplx(0.1, 0.2)});
  json j = report_to_json(r);
  for (const char* key : {"identity", "params", "probes", "lhs", "rhs", "abs_residual", "rel_residual",
                          "tolerance", "pass", "nodes", "seconds", "diagnostics", "warnings"})
    CHECK(j.contains(key));
  CHECK(j["probes"][0]["values"][0][1] == 0.2);
}
