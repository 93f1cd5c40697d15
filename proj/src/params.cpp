#include "rlab/params.hpp"

#include <cmath>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

Tuple make_tuple(std::initializer_list<cplx> xs) {
  Tuple t(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) t(i++) = x;
  return t;
}

Tuple real_tuple(const std::vector<double>& xs) {
  Tuple t(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) t(static_cast<Eigen::Index>(i)) = xs[i];
  return t;
}

SystemParams reference_params() { return {1.0, std::sqrt(2.0), 0.4}; }

namespace {

// Smallest denominator b <= max_den with |ratio - a/b| < tol * |ratio|, or 0.
long rational_denominator(double ratio, long max_den, double tol) {
  double x = ratio;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(x);
    long h2 = static_cast<long>(a) * h1 + h0;
    long k2 = static_cast<long>(a) * k1 + k0;
    if (k2 > max_den) break;
    if (std::abs(ratio - static_cast<double>(h2) / k2) < tol * std::abs(ratio)) return k2;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    double frac = x - a;
    if (frac < 1e-300) break;
    x = 1.0 / frac;
  }
  return 0;
}

}  // namespace

ValidityResult validate(const SystemParams& p) {
  ValidityResult r;
  r.re_omega_positive = p.omega1.real() > 0 && p.omega2.real() > 0;
  r.re_g_in_range = p.g.real() > 0 && p.g.real() < p.omega1.real() + p.omega2.real();
  r.nu_g_positive = p.nu_g() > 0;
  r.nu_g_star_positive = p.nu_g_star() > 0;
  r.re_g_below_re_omega2 = p.g.real() < p.omega2.real();
  r.re_g_star_below_re_omega2 = p.g_star().real() < p.omega2.real();

  if (!r.re_omega_positive) r.violations.emplace_back("Re omega1 > 0 and Re omega2 > 0");
  if (!r.re_g_in_range) r.violations.emplace_back("0 < Re g < Re omega1 + Re omega2");
  if (!r.nu_g_positive) r.violations.emplace_back("nu_g = Re(g/(omega1 omega2)) > 0");
  if (!r.nu_g_star_positive) r.violations.emplace_back("nu_g* = Re(g*/(omega1 omega2)) > 0");

  cplx ratio = p.omega1 / p.omega2;
  if (std::abs(ratio.imag()) < 1e-12 * std::abs(ratio) && ratio.real() > 0) {
    long den = rational_denominator(ratio.real(), 50, 1e-9);
    if (den != 0) {
      std::ostringstream os;
      os << "omega1/omega2 is within 1e-9 of a rational with denominator " << den
         << "; poles of S2 are not simple and accuracy near them degrades";
      r.warnings.push_back(os.str());
    }
  }
  return r;
}

void require_valid(const SystemParams& p) {
  ValidityResult r = validate(p);
  if (r.core_ok()) return;
  std::string msg = "parameter conditions violated:";
  for (const auto& v : r.violations) msg += " [" + v + "]";
  throw PreconditionError(msg);
}

}  // namespace rlab
