#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "rlab/double_sine.hpp"
#include "rlab/params.hpp"
#include "rlab/quadrature.hpp"
#include "rlab/verify.hpp"

namespace rlab {

using json = nlohmann::json;

// complex numbers are [re, im]; plain numbers are accepted on input
json cplx_to_json(cplx z);
cplx cplx_from_json(const json& j);
json tuple_to_json(const Tuple& t);
Tuple tuple_from_json(const json& j);

// "1.5", "-0.2i", "0.7+0.3i", "1e-3-2i"
cplx parse_cplx(const std::string& s);
// comma-separated list of parse_cplx items
Tuple parse_tuple(const std::string& s);

json params_to_json(const SystemParams& p);
// missing keys fall back to the reference point
SystemParams params_from_json(const json& j);

json quad_to_json(const QuadratureSpec& q);
QuadratureSpec quad_from_json(const json& j, QuadratureSpec base = {});
VerifyOptions verify_options_from_json(const json& j, VerifyOptions base = {});

json result_to_json(const IntegralResult& r);
json s2value_to_json(const S2Value& v);
// "seconds" is the only field that varies between identical runs
json report_to_json(const VerificationReport& r);

// Everything a CLI run depends on.
struct RunConfig {
  SystemParams params = reference_params();
  QuadratureSpec quad;
  VerifyOptions verify;
  std::string suite;
  std::vector<std::string> identities;
  int n = 0;
  std::uint64_t seed = 20240917;
  std::string out;
  int jobs = 1;
};

json config_to_json(const RunConfig& c);
RunConfig config_from_json(const json& j);

json read_json_file(const std::string& path);
// writes to stdout when path is empty or "-"
void write_text(const std::string& path, const std::string& text);

}  // namespace rlab
