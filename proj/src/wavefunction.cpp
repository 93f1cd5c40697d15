#include "rlab/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

double theta(double epsilon, int n, const SystemParams& p) {
  double fact = 1;
  for (int k = 2; k <= n - 1; ++k) fact *= k;
  return p.nu_g() * epsilon / (2.0 * fact * std::exp(1.0));
}

WaveFunction::WaveFunction(const WaveSpec& spec) : spec_(spec), kf_(spec.params) {
  const int n = spec.n();
  if (n < 1 || n > 4) throw UnsupportedDimensionError("wave function supports 1 <= n <= 4");
  require_valid(spec.params);
  ops_.resize(n + 1);
  memo_.resize(n + 1);
  for (int k = 2; k <= n; ++k)
    ops_[k] = std::make_unique<BaxterOperator>(
        BaxterKernelSpec{BaxterVariant::Lambda, k, spec.lambdas(k - 1), spec.params});
  double th = theta(spec.epsilon, n, spec.params);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = std::abs((spec.lambdas(i) - spec.lambdas(j)).imag());
      if (d > th) {
        std::ostringstream os;
        os << "|Im(lambda_" << i + 1 << " - lambda_" << j + 1 << ")| = " << d
           << " exceeds theta(" << spec.epsilon << ") = " << th;
        warnings_.push_back(os.str());
      }
    }
}

QuadratureSpec WaveFunction::level_quad(int k, const Tuple& x) const {
  const BaxterOperator& op = *ops_[k];
  const SystemParams& p = spec_.params;
  double tol = spec_.level_tol[std::min<std::size_t>(k - 2, spec_.level_tol.size() - 1)];
  double im = 0;
  for (int j = 0; j < k - 1; ++j) im = std::max(im, std::abs(spec_.lambdas(j).imag()));
  QuadratureSpec q;
  q.rel_tol = tol;
  q.abs_tol = 1e-2 * tol;
  q.margin = spec_.margin;
  q.initial_step = spec_.initial_step;
  q.max_nodes = spec_.max_nodes;
  q.decay_rate = {op.kernel_rate() + (k - 2) * pi * p.nu_g() - 2.0 * pi * im};
  // centre on the common node lattice
  double h0 = spec_.initial_step;
  double c = h0 * std::round(x.real().mean() / h0);
  q.center = {c};
  q.plateau = {(x.real().array() - c).abs().maxCoeff()};
  return q;
}

Evaluated WaveFunction::level(int k, const Tuple& x, IntegralResult* out) {
  if (k == 1) {
    cplx v = std::exp(2.0 * pi * I * spec_.lambdas(0) * x(0));
    if (out) {
      *out = IntegralResult{};
      out->value = v;
      out->nodes_used = 1;
      out->converged = true;
    }
    return {v, 0.0};
  }
  // Ψ is symmetric in x: cache on the sorted, rounded coordinates
  std::vector<long long> key(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) key[i] = std::llround(std::ldexp(x(i).real(), 36));
  std::sort(key.begin(), key.end());
  if (!out) {
    auto it = memo_[k].find(key);
    if (it != memo_[k].end()) return it->second;
  }
  ErrFn inner = [this, k](const Tuple& y) { return level(k - 1, y, nullptr); };
  IntegralResult r = ops_[k]->apply(inner, x, level_quad(k, x));
  if (!r.converged) ++inner_failures_;
  Evaluated e{r.value, r.error_estimate};
  memo_[k].emplace(key, e);
  if (out) *out = r;
  return e;
}

IntegralResult WaveFunction::psi(const Tuple& x) {
  if (x.size() != spec_.n()) throw PreconditionError("psi: point has the wrong arity");
  if (x.imag().cwiseAbs().maxCoeff() != 0.0)
    throw PreconditionError("psi: only real coordinates are supported");
  long failures = inner_failures_;
  IntegralResult r;
  level(spec_.n(), x, &r);
  // inner failures other than the top level itself
  if (inner_failures_ - failures > (r.converged ? 0 : 1)) r.converged = false;
  return r;
}

Evaluated WaveFunction::eval(const Tuple& x) { return level(spec_.n(), x, nullptr); }

Fn WaveFunction::fn() {
  return [this](const Tuple& x) { return eval(x).value; };
}

ErrFn WaveFunction::err_fn() {
  return [this](const Tuple& x) { return eval(x); };
}

cplx WaveFunction::e_function(const Tuple& x, IntegralResult* psi_out) {
  const SystemParams& p = spec_.params;
  const int n = spec_.n();
  IntegralResult r = psi(x);
  if (psi_out) *psi_out = r;
  // π restored in the phase; without it E and E^as differ by a unimodular constant
  cplx phase = std::exp(-I * pi * p.g_hat() * p.g_star() * static_cast<double>(n * (n - 1)) / 4.0);
  return phase * kf_.mu_prime(x) * kf_.mu_hat_prime(spec_.lambdas) * r.value;
}

cplx WaveFunction::e_asymptotic(const Tuple& x) const {
  const int n = spec_.n();
  const Tuple& l = spec_.lambdas;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<int> inv(n);
  cplx total = 0;
  do {
    for (int j = 0; j < n; ++j) inv[sigma[j]] = j;
    cplx c = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (inv[i] > inv[j]) c *= kf_.mu_hat(l(i) - l(j)) / kf_.mu_hat(l(j) - l(i));
    cplx phase = 0;
    for (int j = 0; j < n; ++j) phase += l(sigma[j]) * x(j);
    total += c * std::exp(2.0 * pi * I * phase);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

std::size_t WaveFunction::cached_values() const {
  std::size_t s = 0;
  for (const auto& m : memo_) s += m.size();
  return s;
}

IntegralResult psi(const WaveSpec& spec, const Tuple& x) { return WaveFunction(spec).psi(x); }

cplx e_function(const WaveSpec& spec, const Tuple& x) { return WaveFunction(spec).e_function(x); }

cplx e_asymptotic(const WaveSpec& spec, const Tuple& x) { return WaveFunction(spec).e_asymptotic(x); }

}  // namespace rlab
