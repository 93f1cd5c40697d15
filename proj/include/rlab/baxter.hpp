#pragma once

#include <functional>
#include <string>

#include "rlab/kernels.hpp"
#include "rlab/memo.hpp"
#include "rlab/params.hpp"
#include "rlab/quadrature.hpp"

namespace rlab {

enum class BaxterVariant { Q, Qstar, Lambda, Lambdastar };

std::string to_string(BaxterVariant v);
// accepts Q, Q*, Qstar, Lambda, Lambda*, Lambdastar, L, L*
BaxterVariant parse_variant(const std::string& s);

struct BaxterKernelSpec {
  BaxterVariant variant = BaxterVariant::Q;
  int n = 1;
  cplx lambda = 0;
  SystemParams params;

  bool starred() const { return variant == BaxterVariant::Qstar || variant == BaxterVariant::Lambdastar; }
  bool raising() const { return variant == BaxterVariant::Lambda || variant == BaxterVariant::Lambdastar; }
  int y_arity() const { return raising() ? n - 1 : n; }
};

// d_n = [√(ω₁ω₂) S₂(coupling)]^{-n} / n!
cplx d_const(int n, cplx coupling, const SystemParams& p);

// A value together with an absolute error bound, for integrands that are
// themselves computed by quadrature.
struct Evaluated {
  cplx value;
  double error = 0;
};
using ErrFn = std::function<Evaluated(const Tuple&)>;

// One of Q_n(λ), Q*_n(λ), Λ_n(λ), Λ*_n(λ). Kernel factors at real arguments
// are cached across calls, so one operator applied at many points (or to a
// nested integrand) reuses them. Not thread-safe; use one per thread.
class BaxterOperator {
 public:
  explicit BaxterOperator(const BaxterKernelSpec& spec);

  const BaxterKernelSpec& spec() const { return spec_; }
  const KernelFamily& kernels() const { return kf_; }
  // d_n(g), d_n(g*), d_{n-1}(g) or d_{n-1}(g*)
  cplx normalization() const { return norm_; }

  // Q(x,y;λ) = e^{2πiλ(x̄-ȳ)} K(x,y) μ(y),  Q* = η⁻¹(x) e^{2πiλ(x̄-ȳ)} K*(x,y) Δ(y),
  // and the same with y of arity n-1 for Λ, Λ*. No normalization constant.
  cplx kernel(const Tuple& x, const Tuple& y) const;

  // d · ∫ kernel(x,y) f(y) dy
  IntegralResult apply(const Fn& f, const Tuple& x, const QuadratureSpec& quad) const;
  // inner errors of f are propagated into the estimate
  IntegralResult apply(const ErrFn& f, const Tuple& x, const QuadratureSpec& quad) const;

  // Truncation hints for an integrand kernel·f where f decays at f_rate per
  // axis (negative for growth): centre at the mean of x, plateau covering the
  // spread of x.
  QuadratureSpec default_quad(const Tuple& x, double tol, double f_rate = 0.0) const;
  // own decay rate of |kernel| along one y axis with the others fixed
  double kernel_rate() const;

 private:
  cplx cached_k(cplx d) const;
  cplx cached_mu(cplx d) const;
  // e^{2πiλx̄} and η⁻¹(x) for the starred variants
  cplx x_factor(const Tuple& x) const;
  // everything depending on y, for real x and y
  cplx y_factor(const Tuple& x, std::span<const double> y) const;

  BaxterKernelSpec spec_;
  KernelFamily kf_;
  cplx norm_;
  mutable LatticeMemo k_memo_;
  mutable LatticeMemo mu_memo_;
};

cplx baxter_kernel(const BaxterKernelSpec& spec, const Tuple& x, const Tuple& y);
IntegralResult apply_baxter(const BaxterKernelSpec& spec, const Fn& f, const Tuple& x,
                            const QuadratureSpec& quad);

}  // namespace rlab
