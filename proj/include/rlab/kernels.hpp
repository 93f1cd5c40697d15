#pragma once

#include <memory>

#include "rlab/double_sine.hpp"
#include "rlab/params.hpp"

namespace rlab {

// Product of S₂^{±1} and elementary factors accumulated in log space, with the
// net order of zeros tracked exactly.
class LogProduct {
 public:
  void mul(const S2Value& v, int power);
  void mul(cplx factor);
  void mul_log(cplx log_factor) { log_ += log_factor; }
  void mul(const LogProduct& o);

  // 0 for a net zero; throws SingularValueError for a net pole or a
  // zero/pole collision.
  cplx value() const;
  cplx log() const { return log_; }
  int order() const { return zeros_ - poles_; }

 private:
  cplx log_{0.0, 0.0};
  int zeros_ = 0;
  int poles_ = 0;
  int pole_m_ = -1, pole_k_ = -1;
};

// μ, K, K*, K̂, K̂*, η, η̂, Δ and their products for one parameter set.
class KernelFamily {
 public:
  explicit KernelFamily(const SystemParams& p);

  const SystemParams& params() const { return p_; }
  const DoubleSine& s2() const { return *s2_; }
  // S₂(·|ω̂) with ω̂ = (1/ω₂, 1/ω₁)
  const DoubleSine& s2_hat() const { return *s2_hat_; }
  cplx s2_g() const { return s2_g_; }
  cplx s2_g_star() const { return s2_g_star_; }
  cplx sqrt_w1w2() const { return sqrt_w1w2_; }

  // μ(x) = S₂(ix) S₂⁻¹(ix+g)
  LogProduct log_mu(cplx x) const;
  cplx mu(cplx x) const { return log_mu(x).value(); }
  // K(x) = S₂⁻¹(ix+g*/2) S₂⁻¹(-ix+g*/2)
  LogProduct log_kk(cplx x) const;
  cplx kk(cplx x) const { return log_kk(x).value(); }
  // K*(x): K with g and g* exchanged
  LogProduct log_kk_star(cplx x) const;
  cplx kk_star(cplx x) const { return log_kk_star(x).value(); }
  // K̂(λ) = S₂⁻¹(iλ+ĝ/2|ω̂) S₂⁻¹(-iλ+ĝ/2|ω̂)
  LogProduct log_kk_hat(cplx l) const;
  cplx kk_hat(cplx l) const { return log_kk_hat(l).value(); }
  // K̂*(λ) = S₂⁻¹(iλ+ĝ*/2|ω̂) S₂⁻¹(-iλ+ĝ*/2|ω̂)
  LogProduct log_kk_hat_star(cplx l) const;
  cplx kk_hat_star(cplx l) const { return log_kk_hat_star(l).value(); }
  // μ̂(λ) = S₂(iλ|ω̂) S₂⁻¹(iλ+ĝ*|ω̂)
  LogProduct log_mu_hat(cplx l) const;
  cplx mu_hat(cplx l) const { return log_mu_hat(l).value(); }
  // S₂⁻¹(iλ+ĝ*|ω̂) S₂⁻¹(-iλ+ĝ*|ω̂), the coefficient of the Λ*Λ exchange
  cplx k2ghat(cplx l) const;

  // Π_{i≠j} μ(x_i - x_j)
  LogProduct log_mu_n(const Tuple& x) const;
  cplx mu_n(const Tuple& x) const { return log_mu_n(x).value(); }
  // Π_{i≠j} S₂⁻¹(ix_i - ix_j + g)
  LogProduct log_eta(const Tuple& x) const;
  cplx eta(const Tuple& x) const { return log_eta(x).value(); }
  // Π_{i≠j} S₂⁻¹(iλ_i - iλ_j + ĝ*|ω̂)
  LogProduct log_eta_hat(const Tuple& l) const;
  cplx eta_hat(const Tuple& l) const { return log_eta_hat(l).value(); }
  // Π_{i<j} 4 sh(πx_ij/ω₁) sh(πx_ij/ω₂)
  cplx delta(const Tuple& x) const;
  // Π_{i,j} K(x_i - y_j), or K* when star
  LogProduct log_cross_k(const Tuple& x, const Tuple& y, bool star) const;
  cplx cross_k(const Tuple& x, const Tuple& y, bool star) const {
    return log_cross_k(x, y, star).value();
  }
  // Π_{i<j} μ(x_i - x_j)
  LogProduct log_mu_prime(const Tuple& x) const;
  cplx mu_prime(const Tuple& x) const { return log_mu_prime(x).value(); }
  // Π_{i<j} μ̂(λ_i - λ_j)
  LogProduct log_mu_hat_prime(const Tuple& l) const;
  cplx mu_hat_prime(const Tuple& l) const { return log_mu_hat_prime(l).value(); }

 private:
  LogProduct k_generic(const DoubleSine& S, cplx shift, cplx x) const;

  SystemParams p_;
  std::shared_ptr<const DoubleSine> s2_;
  std::shared_ptr<const DoubleSine> s2_hat_;
  cplx s2_g_, s2_g_star_, sqrt_w1w2_;
};

struct KernelBounds {
  double c_k = 0;   // sup |K(x)| e^{πν_g|x|}
  double c_mu = 0;  // sup |μ(x)| e^{-πν_g|x|}
  // asymptotic check at the ends of the range
  double mu_rel_dev_plus = 0;
  double mu_rel_dev_minus = 0;
  double k_rel_dev = 0;
  bool k_envelope_monotone = true;
};

// Samples x in [-radius, radius] and fits the envelope constants of
// |K| <= C e^{-πν_g|x|}, |μ| <= C e^{πν_g|x|}; compares μ and K with
// e^{πĝ|x| ± iπĝg*/2} and e^{-πĝ|x|} at ±radius.
KernelBounds kernel_bounds(const KernelFamily& kf, double radius, int samples);

}  // namespace rlab
