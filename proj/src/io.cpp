#include "rlab/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_cplx(j.get<std::string>());
  throw PreconditionError("expected a complex number as [re, im], got " + j.dump());
}

json tuple_to_json(const Tuple& t) {
  json a = json::array();
  for (Eigen::Index i = 0; i < t.size(); ++i) a.push_back(cplx_to_json(t(i)));
  return a;
}

Tuple tuple_from_json(const json& j) {
  if (!j.is_array()) throw PreconditionError("expected an array of complex numbers");
  Tuple t(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) t(static_cast<Eigen::Index>(i)) = cplx_from_json(j[i]);
  return t;
}

cplx parse_cplx(const std::string& in) {
  std::string s;
  for (char c : in)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw PreconditionError("empty complex number");
  auto num = [&](const std::string& t) -> double {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw PreconditionError("cannot parse number '" + in + "'");
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return num(s);
  s.pop_back();
  // split at the last sign that does not belong to an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return {0.0, num(s)};
  return {num(s.substr(0, cut)), num(s.substr(cut))};
}

Tuple parse_tuple(const std::string& s) {
  std::vector<cplx> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(parse_cplx(item));
  Tuple t(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) t(static_cast<Eigen::Index>(i)) = v[i];
  return t;
}

json params_to_json(const SystemParams& p) {
  return {{"omega1", cplx_to_json(p.omega1)},
          {"omega2", cplx_to_json(p.omega2)},
          {"g", cplx_to_json(p.g)}};
}

SystemParams params_from_json(const json& j) {
  if (!j.is_object()) throw PreconditionError("params must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "omega1" && k != "omega2" && k != "g")
      throw PreconditionError("unknown params key '" + k + "'");
  SystemParams p = reference_params();
  if (j.contains("omega1")) p.omega1 = cplx_from_json(j["omega1"]);
  if (j.contains("omega2")) p.omega2 = cplx_from_json(j["omega2"]);
  if (j.contains("g")) p.g = cplx_from_json(j["g"]);
  return p;
}

json quad_to_json(const QuadratureSpec& q) {
  return {{"rel_tol", q.rel_tol},
          {"abs_tol", q.abs_tol},
          {"decay_rate", q.decay_rate},
          {"oscillation", q.oscillation},
          {"center", q.center},
          {"plateau", q.plateau},
          {"margin", q.margin},
          {"max_nodes", q.max_nodes},
          {"initial_step", q.initial_step},
          {"min_levels", q.min_levels},
          {"max_levels", q.max_levels},
          {"scheme", q.scheme == NodeScheme::trapezoid ? "trapezoid" : "double_exponential"},
          {"breakpoints", q.breakpoints}};
}

QuadratureSpec quad_from_json(const json& j, QuadratureSpec q) {
  if (!j.is_object()) throw PreconditionError("quad must be a JSON object");
  auto vec = [](const json& v) {
    if (v.is_number()) return std::vector<double>{v.get<double>()};
    return v.get<std::vector<double>>();
  };
  for (const auto& [k, v] : j.items()) {
    if (k == "rel_tol") q.rel_tol = v.get<double>();
    else if (k == "abs_tol") q.abs_tol = v.get<double>();
    else if (k == "decay_rate") q.decay_rate = vec(v);
    else if (k == "oscillation") q.oscillation = vec(v);
    else if (k == "center") q.center = vec(v);
    else if (k == "plateau") q.plateau = vec(v);
    else if (k == "margin") q.margin = v.get<double>();
    else if (k == "max_nodes") q.max_nodes = v.get<long>();
    else if (k == "initial_step") q.initial_step = v.get<double>();
    else if (k == "min_levels") q.min_levels = v.get<int>();
    else if (k == "max_levels") q.max_levels = v.get<int>();
    else if (k == "breakpoints") q.breakpoints = vec(v);
    else if (k == "scheme") {
      std::string s = v.get<std::string>();
      if (s == "trapezoid") q.scheme = NodeScheme::trapezoid;
      else if (s == "double_exponential" || s == "tanh-sinh") q.scheme = NodeScheme::double_exponential;
      else throw PreconditionError("unknown quadrature scheme '" + s + "'");
    } else {
      throw PreconditionError("unknown quad key '" + k + "'");
    }
  }
  if (!(q.rel_tol > 0) || !(q.abs_tol > 0)) throw PreconditionError("quad tolerances must be positive");
  return q;
}

VerifyOptions verify_options_from_json(const json& j, VerifyOptions o) {
  if (j.contains("margin")) o.margin = j["margin"].get<double>();
  if (j.contains("initial_step")) o.initial_step = j["initial_step"].get<double>();
  if (j.contains("max_nodes")) o.max_nodes = j["max_nodes"].get<long>();
  if (j.contains("max_levels")) o.max_levels = j["max_levels"].get<int>();
  return o;
}

json result_to_json(const IntegralResult& r) {
  return {{"value", cplx_to_json(r.value)},
          {"error_estimate", r.error_estimate},
          {"nodes_used", r.nodes_used},
          {"truncation_radius", r.truncation_radius},
          {"converged", r.converged},
          {"levels", r.levels}};
}

json s2value_to_json(const S2Value& v) {
  json j = {{"class", to_string(v.classification)},
            {"condition_estimate", v.condition_estimate}};
  if (v.regular()) {
    j["value"] = cplx_to_json(v.value);
    j["log"] = cplx_to_json(v.log_value);
  } else {
    j["value"] = v.classification == S2Class::zero ? cplx_to_json(0.0) : json(nullptr);
    j["m"] = v.m;
    j["k"] = v.k;
  }
  return j;
}

json report_to_json(const VerificationReport& r) {
  json probes = json::array();
  for (const auto& [name, values] : r.probes) {
    json vals = json::array();
    for (cplx v : values) vals.push_back(cplx_to_json(v));
    probes.push_back({{"name", name}, {"values", vals}});
  }
  return {{"identity", r.identity},
          {"params", params_to_json(r.params)},
          {"probes", probes},
          {"lhs", cplx_to_json(r.lhs)},
          {"rhs", cplx_to_json(r.rhs)},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"nodes", r.nodes},
          {"seconds", r.seconds},
          {"diagnostics", r.diagnostics},
          {"warnings", r.warnings}};
}

json config_to_json(const RunConfig& c) {
  return {{"params", params_to_json(c.params)},
          {"quad", quad_to_json(c.quad)},
          {"verify",
           {{"margin", c.verify.margin},
            {"initial_step", c.verify.initial_step},
            {"max_nodes", c.verify.max_nodes},
            {"max_levels", c.verify.max_levels}}},
          {"suite", c.suite},
          {"identities", c.identities},
          {"n", c.n},
          {"seed", c.seed},
          {"out", c.out},
          {"jobs", c.jobs}};
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  if (j.contains("params")) c.params = params_from_json(j["params"]);
  if (j.contains("quad")) c.quad = quad_from_json(j["quad"]);
  if (j.contains("verify")) c.verify = verify_options_from_json(j["verify"]);
  if (j.contains("suite")) c.suite = j["suite"].get<std::string>();
  if (j.contains("identities")) c.identities = j["identities"].get<std::vector<std::string>>();
  if (j.contains("n")) c.n = j["n"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out")) c.out = j["out"].get<std::string>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw PreconditionError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << text;
}

}  // namespace rlab
