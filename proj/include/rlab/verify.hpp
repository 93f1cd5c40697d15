#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rlab/baxter.hpp"
#include "rlab/operators.hpp"
#include "rlab/params.hpp"
#include "rlab/quadrature.hpp"
#include "rlab/wavefunction.hpp"

namespace rlab {

struct VerificationReport {
  std::string identity;
  SystemParams params;
  // named probe values (points, spectral parameters, …)
  std::vector<std::pair<std::string, std::vector<cplx>>> probes;
  cplx lhs{};
  cplx rhs{};
  double abs_residual = 0;
  double rel_residual = 0;
  double tolerance = 0;
  bool pass = false;
  long nodes = 0;
  double seconds = 0;
  // quadrature error estimates and other notes
  std::vector<std::string> diagnostics;
  std::vector<std::string> warnings;

  void add_probe(const std::string& name, std::vector<cplx> values) {
    probes.emplace_back(name, std::move(values));
  }
};

// Below this |rhs| the absolute residual decides.
inline constexpr double kAbsFloor = 1e-12;

// Fills residuals and pass from lhs, rhs, tolerance.
void finish_report(VerificationReport& r);

// Numerical knobs shared by every quadrature-backed check.
struct VerifyOptions {
  double margin = 3.0;
  double initial_step = 0.5;
  long max_nodes = 4'000'000;
  int max_levels = 12;
};

// ∫ e^{2πiλx} K(x) dx = √(ω₁ω₂) S₂(g) K̂(λ), |Im λ| < ν_g/2
VerificationReport check_fourier(const SystemParams& p, cplx lambda, double tol,
                                 const VerifyOptions& opt = {});

// Degenerate Rains identity (kernel form of Q*Q = QQ*), n = 1, 2
VerificationReport check_rains_im(int n, const SystemParams& p, cplx lambda, const Tuple& x,
                                  const Tuple& z, double tol, const VerifyOptions& opt = {});

// Balanced A_n ↔ A_m hyperbolic identity with n + m + 2 parameters each
VerificationReport check_rains_id2(int n, int m, const SystemParams& p, const Tuple& g_vec,
                                   const Tuple& f_vec, double tol, const VerifyOptions& opt = {});
// parameters g_ℓ = f_ℓ = (m+1) q / (n+m+2)
std::pair<Tuple, Tuple> id2_midpoint(int n, int m, const SystemParams& p);

// Q*_n(λ)Λ_n(ρ) = K̂*(λ-ρ) Λ_n(ρ) Q*_{n-1}(λ) in kernel form, n = 2, at each
// (x, z) of the probe list; the report keeps the worst point.
VerificationReport check_exchange_qstar_lambda(const SystemParams& p, cplx lambda, cplx rho,
                                               const std::vector<std::pair<Tuple, cplx>>& probes,
                                               double tol, const VerifyOptions& opt = {});

// Λ*_2(λ)Λ_1(ρ) = K_{2ĝ}(λ-ρ|ω̂) Λ_2(ρ)Λ*_1(λ) at each x of the probe list
VerificationReport check_exchange_lambdastar_lambda(const SystemParams& p, cplx lambda, cplx rho,
                                                    const std::vector<Tuple>& probes, double tol,
                                                    const VerifyOptions& opt = {});

// (Q or Q*)(λ) Ψ = Π_j (K̂ or K̂*)(λ-λ_j) Ψ, n <= 2
VerificationReport check_eigen(BaxterVariant variant, const SystemParams& p, cplx lambda,
                               const Tuple& lambdas, const Tuple& x, double tol,
                               const VerifyOptions& opt = {});

// Ψ(x; g) = η̂⁻¹(λ) η⁻¹(x) Ψ(x; g*), n <= 3
VerificationReport check_reflection_symmetry(const SystemParams& p, const Tuple& lambdas,
                                             const Tuple& x, double tol,
                                             const VerifyOptions& opt = {});

// Ψ_λ(x; g|ω) = Ψ_x(λ; ĝ*|ω̂), n <= 2
VerificationReport check_duality(const SystemParams& p, const Tuple& lambdas, const Tuple& x,
                                 double tol, const VerifyOptions& opt = {});

// Residue of Q*(x + ig/2, y; λ) f(y) at y = x - i(mω₁ + kω₂), n = 1: closed
// form against a numerical limit.
VerificationReport check_ns_residue(int m, int k, const SystemParams& p, cplx lambda, cplx x,
                                    const TestFunction& f, double tol);
// N_p^{(1)} N_q^{(2)} f as a sum of residues, n = 1
VerificationReport check_ns_residue_sum(int p_order, int q_order, const SystemParams& p,
                                        cplx lambda, cplx x, const TestFunction& f, double tol);

// [M_r, M_s], [M_r, N_s^{(i)}], [N_r^{(i)}, N_s^{(i)}], [N_r^{(1)}, N_s^{(2)}]
VerificationReport check_ns_commutativity(int r, int s, const SystemParams& p,
                                          const TestFunction& f, const Tuple& x, double tol);

// Decay of E - E^as with the separation x₁ - x₂ and the reflected-wave
// coefficient, n = 2. tol_slope is relative (0.2 = 20%).
VerificationReport check_e_asymptotics(const SystemParams& p, const Tuple& lambdas,
                                       const std::vector<double>& separations, double tol_slope,
                                       const VerifyOptions& opt = {});

// Random sampling of the two Appendix C inequalities
VerificationReport check_appendix_c(long trials, int n_max, std::uint64_t seed);

VerificationReport check_kernel_bounds(const SystemParams& p, double radius, int samples);

// S₂ relation suite on random points: functional equations, reflection,
// inversion, factorization, homogeneity, period swap
VerificationReport check_s2_relations(const SystemParams& p, int points, std::uint64_t seed,
                                      double tol);
// closed-form residues of S₂⁻¹ against numerical limits, (m, k) ∈ {0,1}²
VerificationReport check_s2_residues(const SystemParams& p, double tol);
// closed-form integral corpus: fraction of cases with true error <= 3 × estimate
VerificationReport check_quadrature_honesty(double required_fraction);

// Named suites: "fast" (one-dimensional integrals and exact checks) and
// "full" (adds the 2-D and 3-D checks).
std::vector<std::string> suite_identities(const std::string& suite);
// Runs an identity by name at the reference probes. n selects the dimension
// where the identity has several (0 = default).
VerificationReport run_identity(const std::string& id, const SystemParams& p, int n,
                                std::uint64_t seed, const VerifyOptions& opt = {});

}  // namespace rlab
