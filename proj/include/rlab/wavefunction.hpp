#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rlab/baxter.hpp"

namespace rlab {

struct WaveSpec {
  SystemParams params;
  Tuple lambdas;
  // quadrature tolerance of Λ₂, Λ₃, Λ₄ (innermost first)
  std::vector<double> level_tol{1e-8, 1e-6, 1e-4};
  // ε of the convergence domain |Im(λ_k - λ_j)| <= θ(ε)
  double epsilon = 0.5;
  double initial_step = 0.5;
  double margin = 3.0;
  long max_nodes = 4'000'000;

  int n() const { return static_cast<int>(lambdas.size()); }
};

// θ(ε) = ν_g ε / (2 (n-1)! e)
double theta(double epsilon, int n, const SystemParams& p);

// Ψ_λ(x) = Λ_n(λ_n) ⋯ Λ₂(λ₂) e^{2πiλ₁x₁}, evaluated level by level. Inner
// wave functions are cached by quadrature node, and all levels share one
// node lattice so kernel factors are cached too. Not thread-safe.
class WaveFunction {
 public:
  explicit WaveFunction(const WaveSpec& spec);

  const WaveSpec& spec() const { return spec_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // real x only; n = 1 is exact
  IntegralResult psi(const Tuple& x);
  // value with propagated error bound, for use as an integrand
  Evaluated eval(const Tuple& x);
  Fn fn();
  ErrFn err_fn();

  // E = e^{-iπĝg* n(n-1)/4} μ'(x) μ̂'(λ) Ψ
  cplx e_function(const Tuple& x, IntegralResult* psi_out = nullptr);
  cplx e_asymptotic(const Tuple& x) const;

  std::size_t cached_values() const;

 private:
  Evaluated level(int k, const Tuple& x, IntegralResult* out);
  QuadratureSpec level_quad(int k, const Tuple& x) const;

  WaveSpec spec_;
  KernelFamily kf_;
  std::vector<std::unique_ptr<BaxterOperator>> ops_;  // ops_[k] = Λ_k(λ_k)
  std::vector<std::map<std::vector<long long>, Evaluated>> memo_;
  std::vector<std::string> warnings_;
  long inner_failures_ = 0;
};

IntegralResult psi(const WaveSpec& spec, const Tuple& x);
cplx e_function(const WaveSpec& spec, const Tuple& x);
// Σ_σ Π_{i<j, σ⁻¹(i)>σ⁻¹(j)} μ̂(λ_i-λ_j)/μ̂(λ_j-λ_i) · exp(2πi Σ_j λ_{σ(j)} x_j)
cplx e_asymptotic(const WaveSpec& spec, const Tuple& x);

}  // namespace rlab
