#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "rlab/params.hpp"

namespace rlab {

enum class S2Class { regular, zero, pole };

const char* to_string(S2Class c);

struct S2Value {
  cplx value;
  // log S₂ on an unspecified branch; ±inf real part for zeros/poles
  cplx log_value;
  S2Class classification = S2Class::regular;
  // lattice indices: zero at -mω₁-kω₂, pole at mω₁+kω₂
  int m = 0;
  int k = 0;
  // amplification of relative error by the functional-equation ladder
  double condition_estimate = 1.0;

  bool regular() const { return classification == S2Class::regular; }
};

struct S2Options {
  // relative to |q|
  double snap_tol = 1e-12;
  // the q-series is used when 2π Im(z/ω_j) exceeds this for both periods
  double series_threshold = 2.0;
  bool allow_series = true;
};

// Double sine function for a fixed pair of periods. Construction precomputes
// the t-integral nodes; evaluation is const and re-entrant.
class DoubleSine {
 public:
  DoubleSine(cplx omega1, cplx omega2, S2Options opts = {});
  explicit DoubleSine(const SystemParams& p, S2Options opts = {})
      : DoubleSine(p.omega1, p.omega2, opts) {}

  cplx omega1() const { return w1_; }
  cplx omega2() const { return w2_; }
  cplx q() const { return 0.5 * (w1_ + w2_); }
  const S2Options& options() const { return opts_; }

  // ln S₂ by the t-integral; requires 0 < Re z < Re(ω₁+ω₂).
  cplx log_strip(cplx z) const;
  // ln S₂ by the q-series when its convergence test passes (large |Im z|).
  std::optional<cplx> log_series(cplx z) const;

  S2Value eval(cplx z) const;
  // ln S₂(z); throws SingularValueError at zeros and poles
  cplx log(cplx z) const;
  // S₂(z); 0 at zeros, throws at poles
  cplx operator()(cplx z) const;
  // S₂⁻¹(z); 0 at poles, throws at zeros
  cplx inv(cplx z) const;

  // Res_{z=-mω₁-kω₂} S₂⁻¹(z)
  cplx inv_residue(int m, int k) const;
  // Res_{z=mω₁+kω₂} S₂(z), m,k >= 1
  cplx residue(int m, int k) const;

  // [x|ω_axis]_m
  cplx pochhammer(cplx x, int axis, int m) const;
  // [x]_{m,k} = S₂(x)/S₂(x+mω₁+kω₂), any integers m, k
  cplx pochhammer_double(cplx x, int m, int k) const;

  cplx bernoulli22(cplx z) const;
  // exp(±iπ/2 B₂,₂(z)) for ±Im z > 0; approximates S₂(z)
  cplx asymptotic(cplx z) const;

  // (m,k) of a zero -mω₁-kω₂ (m,k>=0) within the snapping tolerance
  std::optional<std::pair<int, int>> near_zero(cplx z) const;
  // (m,k) of a pole mω₁+kω₂ (m,k>=1) within the snapping tolerance
  std::optional<std::pair<int, int>> near_pole(cplx z) const;

 private:
  std::optional<std::pair<int, int>> near_lattice(cplx zeta, int min_index) const;
  cplx strip_sum(cplx w, double decay) const;

  cplx w1_, w2_;
  S2Options opts_;
  double t0_;
  double panel_width_;
  double max_freq_;
  // cached composite Gauss-Legendre nodes on [t0, t_max]
  std::vector<double> t_;
  std::vector<cplx> a_;  // weight / (4 t sh(ω₁t) sh(ω₂t))
  std::vector<cplx> b_;  // weight / (2 t² ω₁ω₂)
  std::vector<std::size_t> panel_end_;
  std::vector<double> panel_right_;
};

// Shared instance for the given periods (small thread-local cache).
std::shared_ptr<const DoubleSine> double_sine(cplx omega1, cplx omega2);
inline std::shared_ptr<const DoubleSine> double_sine(const SystemParams& p) {
  return double_sine(p.omega1, p.omega2);
}

cplx log_s2_strip(cplx z, const SystemParams& p);
S2Value s2(cplx z, const SystemParams& p);
cplx s2_inv_residue(int m, int k, const SystemParams& p);
cplx pochhammer_omega(cplx x, int axis, int m, const SystemParams& p);
cplx pochhammer_double(cplx x, int m, int k, const SystemParams& p);
cplx s2_asymptotic(cplx z, const SystemParams& p);

// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

}  // namespace rlab
