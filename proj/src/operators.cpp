#include "rlab/operators.hpp"

#include <cmath>
#include <sstream>

#include "rlab/complex_math.hpp"
#include "rlab/errors.hpp"
#include "rlab/kernels.hpp"

namespace rlab {

namespace {

// |2 sh| or |2 sin| below this counts as an exact zero of a denominator
constexpr double kSingular = 1e-13;

void check_order(int r, Eigen::Index n, const char* who) {
  if (r < 0 || r > n) {
    std::ostringstream os;
    os << who << ": order r = " << r << " outside [0, " << n << "]";
    throw PreconditionError(os.str());
  }
}

cplx macdonald_coefficient(const std::vector<int>& subset, const Tuple& x, const SystemParams& p) {
  const auto n = x.size();
  std::vector<char> in(n, 0);
  for (int i : subset) in[i] = 1;
  cplx c = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!in[i]) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (in[j]) continue;
      cplx d = x(i) - x(j);
      cplx den = two_sinh(pi * d / p.omega2);
      if (std::abs(den) < kSingular) {
        std::ostringstream os;
        os << "Macdonald coefficient singular: x_" << i + 1 << " - x_" << j + 1
           << " on a zero of sh(pi x / omega2)";
        throw SingularValueError(os.str());
      }
      c *= two_sinh(pi * (d - I * p.g) / p.omega2) / den;
    }
  }
  return c;
}

Tuple shifted(const Tuple& x, const std::vector<int>& subset, cplx a) {
  Tuple y = x;
  for (int i : subset) y(i) += a;
  return y;
}

// Unwrapped phase change of μ along d(t) = d0 + t·(d1 - d0), compared with the
// change of the principal argument. A mismatch means a branch cut was crossed.
bool mu_path_clean(const KernelFamily& kf, cplx d0, cplx d1) {
  constexpr int steps = 48;
  cplx prev = kf.mu(d0);
  if (prev == 0.0) return false;
  double unwrapped = 0;
  for (int s = 1; s <= steps; ++s) {
    cplx cur = kf.mu(d0 + (d1 - d0) * (static_cast<double>(s) / steps));
    if (cur == 0.0) return false;
    double step = std::arg(cur / prev);
    if (std::abs(step) > 0.5 * pi) return false;  // under-resolved, treat as unsafe
    unwrapped += step;
    prev = cur;
  }
  double principal = std::arg(kf.mu(d1)) - std::arg(kf.mu(d0));
  return std::abs(unwrapped - principal) < 1e-6;
}

cplx principal_log_mu(const KernelFamily& kf, cplx d) {
  cplx m = kf.mu(d);
  if (m == 0.0) throw SingularValueError("mu vanishes at a Ruijsenaars probe point");
  return std::log(m);
}

// log of the trigonometric Pochhammer symbol Π_{j<m} 2 sin(π(y + jω)/ω')
// flagging exact zeros.
cplx log_pochhammer(cplx y, cplx step, cplx other, int m, bool& zero) {
  cplx acc = 0;
  zero = false;
  for (int j = 0; j < m; ++j) {
    cplx u = pi * (y + static_cast<double>(j) * step) / other;
    if (std::abs(two_sin(u)) < kSingular) {
      zero = true;
      return 0;
    }
    acc += log_two_sin(u);
  }
  return acc;
}

}  // namespace

TestFunction& TestFunction::add(cplx c, const Tuple& a) {
  if (static_cast<std::size_t>(a.size()) != arity)
    throw PreconditionError("TestFunction term has the wrong arity");
  terms.push_back({c, a});
  return *this;
}

cplx TestFunction::operator()(const Tuple& x) const {
  if (static_cast<std::size_t>(x.size()) != arity)
    throw PreconditionError("TestFunction evaluated at a point of the wrong arity");
  cplx s = 0;
  for (const auto& t : terms) s += t.c * std::exp((t.a.array() * x.array()).sum());
  return s;
}

Fn TestFunction::fn() const {
  return [self = *this](const Tuple& x) { return self(x); };
}

TestFunction TestFunction::constant(std::size_t n, cplx c) {
  TestFunction f(n);
  f.add(c, Tuple::Zero(static_cast<Eigen::Index>(n)));
  return f;
}

TestFunction TestFunction::plane_wave(const Tuple& lambdas) {
  TestFunction f(static_cast<std::size_t>(lambdas.size()));
  f.add(1.0, 2.0 * pi * I * lambdas);
  return f;
}

TestFunction shift(const TestFunction& f, std::size_t i, cplx a) {
  if (i >= f.arity) throw PreconditionError("shift axis out of range");
  TestFunction g = f;
  for (auto& t : g.terms) t.c *= std::exp(t.a(static_cast<Eigen::Index>(i)) * a);
  return g;
}

std::vector<std::vector<int>> subsets(int n, int r) {
  std::vector<std::vector<int>> out;
  if (r < 0 || r > n) return out;
  std::vector<int> cur(r);
  for (int i = 0; i < r; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    int i = r - 1;
    while (i >= 0 && cur[i] == n - r + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<std::vector<int>> multi_indices(int n, int r) {
  std::vector<std::vector<int>> out;
  if (n <= 0 || r < 0) return out;
  std::vector<int> m(n, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      m[pos] = left;
      out.push_back(m);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      m[pos] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, r);
  return out;
}

cplx apply_macdonald(int r, const Fn& f, const Tuple& x, const SystemParams& p) {
  check_order(r, x.size(), "apply_macdonald");
  cplx total = 0;
  for (const auto& s : subsets(static_cast<int>(x.size()), r)) {
    cplx c = macdonald_coefficient(s, x, p);
    if (c == 0.0) continue;
    total += c * f(shifted(x, s, -I * p.omega1));
  }
  return total;
}

Fn macdonald(int r, Fn f, SystemParams p) {
  return [r, f = std::move(f), p](const Tuple& x) { return apply_macdonald(r, f, x, p); };
}

RuijsenaarsResult apply_ruijsenaars(int r, const Fn& f, const Tuple& x, const SystemParams& p) {
  check_order(r, x.size(), "apply_ruijsenaars");
  KernelFamily kf(p);
  RuijsenaarsResult res{0, true};
  const auto n = x.size();
  const cplx a = -I * p.omega1;
  for (const auto& s : subsets(static_cast<int>(n), r)) {
    cplx c = macdonald_coefficient(s, x, p);
    if (c == 0.0) continue;
    std::vector<char> in(n, 0);
    for (int i : s) in[i] = 1;
    // √μ(x)/√μ(x + a e_I): only pairs with exactly one index in I change
    cplx half_log = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j || in[i] == in[j]) continue;
        cplx d0 = x(i) - x(j);
        cplx d1 = d0 + (in[i] ? a : -a);
        half_log += 0.5 * (principal_log_mu(kf, d0) - principal_log_mu(kf, d1));
        if (res.branch_clean && !mu_path_clean(kf, d0, d1)) res.branch_clean = false;
      }
    res.value += c * std::exp(half_log) * f(shifted(x, s, a));
  }
  return res;
}

cplx apply_ruijsenaars_direct(int r, const Fn& f, const Tuple& x, const SystemParams& p) {
  check_order(r, x.size(), "apply_ruijsenaars_direct");
  const auto n = x.size();
  const cplx w2 = p.omega2;
  cplx total = 0;
  for (const auto& s : subsets(static_cast<int>(n), r)) {
    std::vector<char> in(n, 0);
    for (int i : s) in[i] = 1;
    cplx c = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!in[i]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (in[j]) continue;
        cplx d = x(i) - x(j);
        cplx num = two_sinh(pi * (d - I * p.g) / w2) * two_sinh(pi * (d - I * p.g_star()) / w2);
        cplx den = two_sinh(pi * d / w2) * two_sinh(pi * (d - I * p.omega1 - I * p.omega2) / w2);
        if (std::abs(den) < kSingular)
          throw SingularValueError("Ruijsenaars coefficient singular at coinciding coordinates");
        c *= std::sqrt(num / den);
      }
    }
    total += c * f(shifted(x, s, -I * p.omega1));
  }
  return total;
}

cplx apply_noumi_sano(int kind, int r, const Fn& f, const Tuple& x, const SystemParams& p) {
  if (kind != 1 && kind != 2) throw PreconditionError("Noumi-Sano kind must be 1 or 2");
  if (r < 0) throw PreconditionError("Noumi-Sano order must be nonnegative");
  const cplx step = kind == 1 ? p.omega1 : p.omega2;
  const cplx other = kind == 1 ? p.omega2 : p.omega1;
  const auto n = x.size();
  cplx total = 0;
  for (const auto& m : multi_indices(static_cast<int>(n), r)) {
    cplx log_c = 0;
    bool vanishes = false;
    for (Eigen::Index i = 0; i < n && !vanishes; ++i) {
      if (m[i] == 0) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        cplx ixij = I * (x(i) - x(j));
        bool zero = false;
        cplx den = log_pochhammer(ixij - static_cast<double>(m[j]) * step, step, other, m[i], zero);
        if (zero) {
          std::ostringstream os;
          os << "Noumi-Sano denominator vanishes at (i, j) = (" << i + 1 << ", " << j + 1
             << "), m = (";
          for (std::size_t k = 0; k < m.size(); ++k) os << (k ? ", " : "") << m[k];
          os << ")";
          throw SingularValueError(os.str());
        }
        cplx num = log_pochhammer(ixij + p.g, step, other, m[i], zero);
        if (zero) {
          vanishes = true;
          break;
        }
        log_c += num - den;
      }
    }
    if (vanishes) continue;
    Tuple y = x;
    for (Eigen::Index i = 0; i < n; ++i) y(i) -= I * static_cast<double>(m[i]) * step;
    total += std::exp(log_c) * f(y);
  }
  return (r % 2 ? -1.0 : 1.0) * total;
}

Fn noumi_sano(int kind, int r, Fn f, SystemParams p) {
  return [kind, r, f = std::move(f), p](const Tuple& x) {
    return apply_noumi_sano(kind, r, f, x, p);
  };
}

SeriesResult noumi_sano_series(int kind, cplx lambda, int r_max, const Fn& f, const Tuple& x,
                               const SystemParams& p) {
  if (kind != 1 && kind != 2) throw PreconditionError("Noumi-Sano kind must be 1 or 2");
  if (r_max < 0) throw PreconditionError("noumi_sano_series: r_max must be nonnegative");
  const cplx w = kind == 1 ? p.omega1 : p.omega2;
  const double decay = (lambda * w).real();
  if (!(decay > 0)) {
    std::ostringstream os;
    os << "Noumi-Sano series does not decay: Re(lambda omega" << kind << ") = " << decay;
    throw DivergenceError(os.str());
  }
  const double rho = std::exp(-2.0 * pi * decay);
  SeriesResult res{0, 0, 0};
  double last = 0, before = 0;
  for (int r = 0; r <= r_max; ++r) {
    cplx t = (r % 2 ? -1.0 : 1.0) * std::exp(-2.0 * pi * lambda * static_cast<double>(r) * w) *
             apply_noumi_sano(kind, r, f, x, p);
    res.value += t;
    before = last;
    last = std::abs(t);
    ++res.terms;
  }
  if (r_max == 0) {
    res.tail_estimate = last * rho / (1.0 - rho);
    return res;
  }
  double ratio = rho;
  if (before > 0) ratio = std::max(ratio, last / before);
  res.tail_estimate = ratio < 1 ? last * ratio / (1.0 - ratio) : INFINITY;
  return res;
}

}  // namespace rlab
