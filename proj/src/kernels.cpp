#include "rlab/kernels.hpp"

#include <cmath>
#include <sstream>

#include "rlab/complex_math.hpp"
#include "rlab/errors.hpp"

namespace rlab {

void LogProduct::mul(const S2Value& v, int power) {
  switch (v.classification) {
    case S2Class::regular:
      log_ += static_cast<double>(power) * v.log_value;
      return;
    case S2Class::zero:
      (power > 0 ? zeros_ : poles_) += std::abs(power);
      break;
    case S2Class::pole:
      (power > 0 ? poles_ : zeros_) += std::abs(power);
      break;
  }
  if ((v.classification == S2Class::zero) == (power < 0)) {
    pole_m_ = v.m;
    pole_k_ = v.k;
  }
}

void LogProduct::mul(cplx factor) {
  if (factor == 0.0)
    ++zeros_;
  else
    log_ += std::log(factor);
}

void LogProduct::mul(const LogProduct& o) {
  log_ += o.log_;
  zeros_ += o.zeros_;
  poles_ += o.poles_;
  if (o.poles_ > 0) {
    pole_m_ = o.pole_m_;
    pole_k_ = o.pole_k_;
  }
}

cplx LogProduct::value() const {
  if (poles_ > 0) {
    std::ostringstream os;
    if (zeros_ > 0)
      os << "zero/pole collision in kernel product";
    else
      os << "kernel product has a pole";
    os << " (S2 lattice point m=" << pole_m_ << ", k=" << pole_k_ << ")";
    throw SingularValueError(os.str(), pole_m_, pole_k_);
  }
  if (zeros_ > 0) return 0;
  return std::exp(log_);
}

KernelFamily::KernelFamily(const SystemParams& p)
    : p_(p),
      s2_(double_sine(p.omega1, p.omega2)),
      s2_hat_(double_sine(p.omega_hat1(), p.omega_hat2())) {
  s2_g_ = (*s2_)(p.g);
  s2_g_star_ = (*s2_)(p.g_star());
  sqrt_w1w2_ = std::sqrt(p.omega1 * p.omega2);
}

LogProduct KernelFamily::k_generic(const DoubleSine& S, cplx shift, cplx x) const {
  LogProduct lp;
  lp.mul(S.eval(I * x + shift), -1);
  lp.mul(S.eval(-I * x + shift), -1);
  return lp;
}

LogProduct KernelFamily::log_mu(cplx x) const {
  LogProduct lp;
  lp.mul(s2_->eval(I * x), 1);
  lp.mul(s2_->eval(I * x + p_.g), -1);
  return lp;
}

LogProduct KernelFamily::log_kk(cplx x) const { return k_generic(*s2_, 0.5 * p_.g_star(), x); }

LogProduct KernelFamily::log_kk_star(cplx x) const { return k_generic(*s2_, 0.5 * p_.g, x); }

LogProduct KernelFamily::log_kk_hat(cplx l) const {
  return k_generic(*s2_hat_, 0.5 * p_.g_hat(), l);
}

LogProduct KernelFamily::log_kk_hat_star(cplx l) const {
  return k_generic(*s2_hat_, 0.5 * p_.g_hat_star(), l);
}

LogProduct KernelFamily::log_mu_hat(cplx l) const {
  LogProduct lp;
  lp.mul(s2_hat_->eval(I * l), 1);
  lp.mul(s2_hat_->eval(I * l + p_.g_hat_star()), -1);
  return lp;
}

cplx KernelFamily::k2ghat(cplx l) const {
  return k_generic(*s2_hat_, p_.g_hat_star(), l).value();
}

LogProduct KernelFamily::log_mu_n(const Tuple& x) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (i != j) lp.mul(log_mu(x(i) - x(j)));
  return lp;
}

LogProduct KernelFamily::log_eta(const Tuple& x) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (i != j) lp.mul(s2_->eval(I * (x(i) - x(j)) + p_.g), -1);
  return lp;
}

LogProduct KernelFamily::log_eta_hat(const Tuple& l) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < l.size(); ++i)
    for (Eigen::Index j = 0; j < l.size(); ++j)
      if (i != j) lp.mul(s2_hat_->eval(I * (l(i) - l(j)) + p_.g_hat_star()), -1);
  return lp;
}

cplx KernelFamily::delta(const Tuple& x) const {
  cplx prod = 1;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) {
      cplx d = x(i) - x(j);
      prod *= two_sinh(pi * d / p_.omega1) * two_sinh(pi * d / p_.omega2);
    }
  return prod;
}

LogProduct KernelFamily::log_cross_k(const Tuple& x, const Tuple& y, bool star) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < y.size(); ++j)
      lp.mul(star ? log_kk_star(x(i) - y(j)) : log_kk(x(i) - y(j)));
  return lp;
}

LogProduct KernelFamily::log_mu_prime(const Tuple& x) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = i + 1; j < x.size(); ++j) lp.mul(log_mu(x(i) - x(j)));
  return lp;
}

LogProduct KernelFamily::log_mu_hat_prime(const Tuple& l) const {
  LogProduct lp;
  for (Eigen::Index i = 0; i < l.size(); ++i)
    for (Eigen::Index j = i + 1; j < l.size(); ++j) lp.mul(log_mu_hat(l(i) - l(j)));
  return lp;
}

KernelBounds kernel_bounds(const KernelFamily& kf, double radius, int samples) {
  KernelBounds b;
  const SystemParams& p = kf.params();
  double nu = p.nu_g();
  double prev_env = -1;
  bool up = true, down = true;
  for (int s = 0; s < samples; ++s) {
    double x = -radius + 2.0 * radius * s / (samples - 1);
    double envk = std::abs(kf.kk(x)) * std::exp(pi * nu * std::abs(x));
    b.c_k = std::max(b.c_k, envk);
    if (x != 0.0) b.c_mu = std::max(b.c_mu, std::abs(kf.mu(x)) * std::exp(-pi * nu * std::abs(x)));
    if (x > 5.0) {
      if (prev_env >= 0 && envk < prev_env * (1 - 1e-12)) up = false;
      if (prev_env >= 0 && envk > prev_env * (1 + 1e-12)) down = false;
      prev_env = envk;
    }
  }
  b.k_envelope_monotone = up || down;
  cplx gh = p.g_hat();
  cplx phase = I * pi * gh * p.g_star() / 2.0;
  cplx mu_plus = std::exp(pi * gh * radius + phase);
  cplx mu_minus = std::exp(pi * gh * radius - phase);
  b.mu_rel_dev_plus = std::abs(kf.mu(radius) / mu_plus - 1.0);
  b.mu_rel_dev_minus = std::abs(kf.mu(-radius) / mu_minus - 1.0);
  b.k_rel_dev = std::max(std::abs(kf.kk(radius) / std::exp(-pi * gh * radius) - 1.0),
                         std::abs(kf.kk(-radius) / std::exp(-pi * gh * radius) - 1.0));
  return b;
}

}  // namespace rlab
