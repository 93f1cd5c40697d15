#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace rlab {

using cplx = std::complex<double>;
using Tuple = Eigen::VectorXcd;

inline constexpr double pi = 3.14159265358979323846;
inline const cplx I{0.0, 1.0};

// functions of n variables, the common currency of operators and integrals
using Fn = std::function<cplx(const Tuple&)>;

inline cplx tuple_sum(const Tuple& t) { return t.sum(); }

Tuple make_tuple(std::initializer_list<cplx> xs);
Tuple real_tuple(const std::vector<double>& xs);

struct SystemParams {
  cplx omega1;
  cplx omega2;
  cplx g;

  SystemParams() = default;
  SystemParams(cplx w1, cplx w2, cplx g_) : omega1(w1), omega2(w2), g(g_) {}

  cplx g_star() const { return omega1 + omega2 - g; }
  cplx q() const { return 0.5 * (omega1 + omega2); }
  cplx g_hat() const { return g / (omega1 * omega2); }
  cplx g_hat_star() const { return g_star() / (omega1 * omega2); }
  cplx omega_hat1() const { return 1.0 / omega2; }
  cplx omega_hat2() const { return 1.0 / omega1; }
  double nu_g() const { return g_hat().real(); }
  double nu_g_star() const { return g_hat_star().real(); }

  // g -> g*
  SystemParams dual() const { return {omega1, omega2, g_star()}; }
  // Parameters of the spectral side: periods (1/ω₂, 1/ω₁), coupling ĝ*.
  // Its reflected coupling is ĝ, so kernels built from it give K̂.
  SystemParams spectral() const { return {omega_hat1(), omega_hat2(), g_hat_star()}; }
  SystemParams swapped() const { return {omega2, omega1, g}; }

  bool operator==(const SystemParams& o) const {
    return omega1 == o.omega1 && omega2 == o.omega2 && g == o.g;
  }
};

// ω = (1, √2), g = 0.4
SystemParams reference_params();

struct ValidityResult {
  bool re_omega_positive = false;
  bool re_g_in_range = false;
  bool nu_g_positive = false;
  bool nu_g_star_positive = false;
  // optional conditions needed by specific identities
  bool re_g_below_re_omega2 = false;
  bool re_g_star_below_re_omega2 = false;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool core_ok() const {
    return re_omega_positive && re_g_in_range && nu_g_positive && nu_g_star_positive;
  }
};

ValidityResult validate(const SystemParams& p);

// Throws PreconditionError listing violations when the core conditions fail.
void require_valid(const SystemParams& p);

}  // namespace rlab
