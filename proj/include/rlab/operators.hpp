#pragma once

#include <functional>
#include <vector>

#include "rlab/params.hpp"

namespace rlab {

// f(x) = Σ_k c_k exp(Σ_i a_{k,i} x_i); closed under complex shifts.
struct TestFunction {
  struct Term {
    cplx c;
    Tuple a;
  };
  std::size_t arity = 0;
  std::vector<Term> terms;

  TestFunction() = default;
  explicit TestFunction(std::size_t n) : arity(n) {}

  TestFunction& add(cplx c, const Tuple& a);
  cplx operator()(const Tuple& x) const;
  Fn fn() const;

  static TestFunction constant(std::size_t n, cplx c = 1.0);
  // exp(2πi Σ λ_j x_j)
  static TestFunction plane_wave(const Tuple& lambdas);
};

// T^a_{x_i} f
TestFunction shift(const TestFunction& f, std::size_t i, cplx a);

// r-subsets of {0..n-1} in lexicographic order
std::vector<std::vector<int>> subsets(int n, int r);
// m ∈ ℕ₀ⁿ with |m| = r in lexicographic order
std::vector<std::vector<int>> multi_indices(int n, int r);

// (M_r f)(x) = Σ_{|I|=r} Π_{i∈I,j∉I} sh(π(x_i-x_j-ig)/ω₂)/sh(π(x_i-x_j)/ω₂) f(x - iω₁e_I)
cplx apply_macdonald(int r, const Fn& f, const Tuple& x, const SystemParams& p);
Fn macdonald(int r, Fn f, SystemParams p);

struct RuijsenaarsResult {
  cplx value;
  // no principal-branch jump of any μ factor along the shift paths
  bool branch_clean = true;
};

// H_r f = √μ M_r (f/√μ), principal log of each μ factor, summed then halved.
RuijsenaarsResult apply_ruijsenaars(int r, const Fn& f, const Tuple& x, const SystemParams& p);
// The same operator written with the shifts to the right: coefficients
// sh^{1/2}(…-ig) sh^{1/2}(…-ig*) / (sh^{1/2}(…) sh^{1/2}(…-iω₁-iω₂)), each pair
// multiplied before the principal square root.
cplx apply_ruijsenaars_direct(int r, const Fn& f, const Tuple& x, const SystemParams& p);

// N_r^{(kind)} of Noumi-Sano, kind ∈ {1, 2}
cplx apply_noumi_sano(int kind, int r, const Fn& f, const Tuple& x, const SystemParams& p);
Fn noumi_sano(int kind, int r, Fn f, SystemParams p);

struct SeriesResult {
  cplx value;
  double tail_estimate;
  int terms;
};

// Σ_{r=0}^{r_max} (-1)^r e^{-2πλ r ω_kind} N_r^{(kind)} f
SeriesResult noumi_sano_series(int kind, cplx lambda, int r_max, const Fn& f, const Tuple& x,
                               const SystemParams& p);

}  // namespace rlab
