#include "rlab/baxter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rlab/complex_math.hpp"
#include "rlab/errors.hpp"

namespace rlab {

std::string to_string(BaxterVariant v) {
  switch (v) {
    case BaxterVariant::Q: return "Q";
    case BaxterVariant::Qstar: return "Q*";
    case BaxterVariant::Lambda: return "Lambda";
    case BaxterVariant::Lambdastar: return "Lambda*";
  }
  return "?";
}

BaxterVariant parse_variant(const std::string& s) {
  if (s == "Q") return BaxterVariant::Q;
  if (s == "Q*" || s == "Qstar") return BaxterVariant::Qstar;
  if (s == "Lambda" || s == "L") return BaxterVariant::Lambda;
  if (s == "Lambda*" || s == "Lambdastar" || s == "L*") return BaxterVariant::Lambdastar;
  throw PreconditionError("unknown Baxter operator variant '" + s + "'");
}

cplx d_const(int n, cplx coupling, const SystemParams& p) {
  if (n < 0) throw PreconditionError("d_const: n must be nonnegative");
  cplx base = std::sqrt(p.omega1 * p.omega2) * (*double_sine(p))(coupling);
  cplx d = 1;
  for (int k = 1; k <= n; ++k) d /= base * static_cast<double>(k);
  return d;
}

BaxterOperator::BaxterOperator(const BaxterKernelSpec& spec) : spec_(spec), kf_(spec.params) {
  if (spec.n < 1) throw PreconditionError("Baxter operator needs n >= 1");
  cplx coupling = spec.starred() ? spec.params.g_star() : spec.params.g;
  norm_ = d_const(spec.y_arity(), coupling, spec.params);
  if (spec.starred())
    k_memo_ = LatticeMemo([kf = kf_](double d) { return kf.kk_star(d); });
  else
    k_memo_ = LatticeMemo([kf = kf_](double d) { return kf.kk(d); });
  mu_memo_ = LatticeMemo([kf = kf_](double d) { return kf.mu(d); });
}

cplx BaxterOperator::cached_k(cplx d) const {
  if (d.imag() == 0.0) return k_memo_(d.real());
  return spec_.starred() ? kf_.kk_star(d) : kf_.kk(d);
}

cplx BaxterOperator::cached_mu(cplx d) const {
  if (d.imag() == 0.0) return mu_memo_(d.real());
  return kf_.mu(d);
}

cplx BaxterOperator::x_factor(const Tuple& x) const {
  LogProduct outer;
  outer.mul_log(2.0 * pi * I * spec_.lambda * x.sum());
  if (spec_.starred()) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (i != j) outer.mul(kf_.s2().eval(I * (x(i) - x(j)) + spec_.params.g), 1);
  }
  return outer.value();
}

cplx BaxterOperator::y_factor(const Tuple& x, std::span<const double> y) const {
  const SystemParams& p = spec_.params;
  const auto m = static_cast<Eigen::Index>(y.size());
  cplx k = std::exp(-2.0 * pi * I * spec_.lambda * std::accumulate(y.begin(), y.end(), 0.0));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < m; ++j) k *= cached_k(x(i) - y[j]);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      double d = y[i] - y[j];
      if (spec_.starred())
        k *= two_sinh(pi * d / p.omega1) * two_sinh(pi * d / p.omega2);
      else
        k *= cached_mu(d) * cached_mu(-d);
    }
  return k;
}

cplx BaxterOperator::kernel(const Tuple& x, const Tuple& y) const {
  if (x.size() != spec_.n || y.size() != spec_.y_arity())
    throw PreconditionError("Baxter kernel: argument arity does not match the operator");
  const SystemParams& p = spec_.params;
  bool real = x.imag().cwiseAbs().sum() == 0.0 && y.imag().cwiseAbs().sum() == 0.0;
  if (real) {
    std::vector<double> yr(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j) yr[j] = y(j).real();
    return x_factor(x) * y_factor(x, yr);
  }
  LogProduct lp;
  lp.mul_log(2.0 * pi * I * spec_.lambda * (x.sum() - y.sum()));
  if (spec_.starred()) {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (i != j) lp.mul(kf_.s2().eval(I * (x(i) - x(j)) + p.g), 1);
  }
  lp.mul(kf_.log_cross_k(x, y, spec_.starred()));
  if (spec_.starred())
    lp.mul(kf_.delta(y));
  else
    lp.mul(kf_.log_mu_n(y));
  return lp.value();
}

double BaxterOperator::kernel_rate() const {
  const SystemParams& p = spec_.params;
  const int m = spec_.y_arity();
  double r;
  if (spec_.starred())
    r = spec_.n * pi * p.nu_g_star() - (m - 1) * pi * (p.nu_g() + p.nu_g_star());
  else
    r = spec_.n * pi * p.nu_g() - 2.0 * (m - 1) * pi * p.nu_g();
  return r - 2.0 * pi * std::abs(spec_.lambda.imag());
}

QuadratureSpec BaxterOperator::default_quad(const Tuple& x, double tol, double f_rate) const {
  QuadratureSpec q;
  q.rel_tol = tol;
  q.abs_tol = 0.1 * tol;
  q.margin = 3.0;
  q.decay_rate = {kernel_rate() + f_rate};
  double lo = x.real().minCoeff(), hi = x.real().maxCoeff();
  q.center = {0.5 * (lo + hi)};
  q.plateau = {0.5 * (hi - lo)};
  return q;
}

IntegralResult BaxterOperator::apply(const Fn& f, const Tuple& x, const QuadratureSpec& quad) const {
  return apply([&f](const Tuple& y) { return Evaluated{f(y), 0.0}; }, x, quad);
}

IntegralResult BaxterOperator::apply(const ErrFn& f, const Tuple& x, const QuadratureSpec& quad) const {
  if (x.size() != spec_.n)
    throw PreconditionError("Baxter operator applied at a point of the wrong arity");
  const auto m = static_cast<Eigen::Index>(spec_.y_arity());
  const cplx pre = norm_ * x_factor(x);

  double err_weight = 0;
  long err_nodes = 0;
  Tuple yt(m);
  auto integrand = [&](std::span<const double> y) -> cplx {
    cplx k = y_factor(x, y);
    if (k == 0.0) return 0.0;
    for (Eigen::Index j = 0; j < m; ++j) yt(j) = y[j];
    Evaluated e = f(yt);
    if (e.error > 0) {
      err_weight += std::abs(k) * e.error;
    }
    ++err_nodes;
    return k * e.value;
  };

  IntegralResult r = integrate_nd(integrand, static_cast<std::size_t>(m), quad);
  r.value *= pre;
  r.error_estimate *= std::abs(pre);
  if (err_nodes > 0 && err_weight > 0) {
    double volume = 1;
    for (double R : r.truncation_radius) volume *= 2.0 * R;
    r.error_estimate += std::abs(pre) * err_weight / static_cast<double>(err_nodes) * volume;
  }
  return r;
}

cplx baxter_kernel(const BaxterKernelSpec& spec, const Tuple& x, const Tuple& y) {
  return BaxterOperator(spec).kernel(x, y);
}

IntegralResult apply_baxter(const BaxterKernelSpec& spec, const Fn& f, const Tuple& x,
                            const QuadratureSpec& quad) {
  return BaxterOperator(spec).apply(f, x, quad);
}

}  // namespace rlab
