#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rlab/params.hpp"

namespace rlab {

enum class NodeScheme { trapezoid, double_exponential };

// Integration over ℝⁿ of integrands decaying at least like e^{-rate·|y_i - c_i|}.
// Each axis is truncated at radius U = plateau + (margin + ln(1/abs_tol)) / rate.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  // per axis; a single entry applies to every axis
  std::vector<double> decay_rate{1.0};
  // |Im slope| of oscillating exponentials per axis (node density hint)
  std::vector<double> oscillation{0.0};
  std::vector<double> center{0.0};
  // half-width of a region around the centre where the integrand need not
  // decay; added to the truncation radius
  std::vector<double> plateau{0.0};
  double margin = 40.0;
  // total integrand evaluations
  long max_nodes = 4'000'000;
  // initial step before oscillation scaling
  double initial_step = 0.5;
  int min_levels = 2;
  int max_levels = 12;
  NodeScheme scheme = NodeScheme::trapezoid;
  // interior kinks (1-D, double-exponential scheme only)
  std::vector<double> breakpoints;

  double rate(std::size_t axis) const;
  double osc(std::size_t axis) const;
  double centre(std::size_t axis) const;
  double flat(std::size_t axis) const;
  double radius(std::size_t axis) const;
};

struct IntegralResult {
  cplx value{};
  double error_estimate = 0;
  long nodes_used = 0;
  std::vector<double> truncation_radius;
  bool converged = false;
  int levels = 0;
};

using Integrand1D = std::function<cplx(double)>;
using IntegrandND = std::function<cplx(std::span<const double>)>;

IntegralResult integrate_1d(const Integrand1D& f, const QuadratureSpec& spec);
// Tensor-product rule, n <= 4.
IntegralResult integrate_nd(const IntegrandND& f, std::size_t n, const QuadratureSpec& spec);

// Throws DivergenceError when the result did not converge.
const IntegralResult& require_converged(const IntegralResult& r, const std::string& what);

}  // namespace rlab
