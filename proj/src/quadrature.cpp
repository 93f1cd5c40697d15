#include "rlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

namespace {

double pick(const std::vector<double>& v, std::size_t axis, double fallback) {
  if (v.empty()) return fallback;
  return axis < v.size() ? v[axis] : v.back();
}

// Neumaier-compensated complex accumulator; order of additions is fixed by
// the caller, so results are deterministic.
struct Accumulator {
  cplx sum{0, 0};
  cplx comp{0, 0};
  void add(cplx x) {
    auto part = [](double& s, double& c, double v) {
      double t = s + v;
      if (std::abs(s) >= std::abs(v))
        c += (s - t) + v;
      else
        c += (v - t) + s;
      s = t;
    };
    double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
    part(sr, cr, x.real());
    part(si, ci, x.imag());
    sum = {sr, si};
    comp = {cr, ci};
  }
  cplx value() const { return sum + comp; }
};

double tolerance(const QuadratureSpec& s, cplx value) {
  return std::max(s.abs_tol, s.rel_tol * std::abs(value));
}

IntegralResult trapezoid_nd(const IntegrandND& f, std::size_t n, const QuadratureSpec& spec) {
  IntegralResult res;
  std::array<double, 4> h{}, c{};
  std::array<long, 4> N{};
  for (std::size_t i = 0; i < n; ++i) {
    double U = spec.radius(i);
    double step = spec.initial_step / (1.0 + spec.osc(i) / spec.rate(i));
    step = std::min(step, U / 4.0);
    N[i] = std::max<long>(1, static_cast<long>(std::floor(U / step)));
    h[i] = step;
    c[i] = spec.centre(i);
    res.truncation_radius.push_back(N[i] * h[i]);
  }

  std::array<double, 4> y{};
  std::array<long, 4> k{};
  cplx previous = 0;
  double tail = 0;
  double previous_abs = 0;
  for (int level = 0; level <= spec.max_levels; ++level) {
    long count = 1, old_count = 1;
    for (std::size_t i = 0; i < n; ++i) {
      count *= 2 * N[i] + 1;
      old_count *= N[i] + 1;  // all-even indices at this level (N even for level > 0)
    }
    long fresh = level == 0 ? count : count - old_count;
    if (res.nodes_used + fresh > spec.max_nodes) break;

    Accumulator acc;
    double abs_sum = 0;
    for (std::size_t i = 0; i < n; ++i) k[i] = -N[i];
    double cell = 1;
    for (std::size_t i = 0; i < n; ++i) cell *= h[i];
    for (;;) {
      bool all_even = true;
      for (std::size_t i = 0; i < n; ++i)
        if (k[i] % 2 != 0) all_even = false;
      if (level == 0 || !all_even) {
        for (std::size_t i = 0; i < n; ++i) y[i] = c[i] + static_cast<double>(k[i]) * h[i];
        cplx v = f(std::span<const double>(y.data(), n));
        acc.add(v);
        abs_sum += std::abs(v);
        if (level == 0) {
          for (std::size_t i = 0; i < n; ++i)
            if (k[i] == N[i] || k[i] == -N[i]) tail += std::abs(v) * cell / h[i] / spec.rate(i);
        }
      }
      std::size_t ax = 0;
      while (ax < n) {
        if (++k[ax] <= N[ax]) break;
        k[ax] = -N[ax];
        ++ax;
      }
      if (ax == n) break;
    }
    res.nodes_used += fresh;
    cplx value = level == 0 ? acc.value() * cell
                            : previous / std::pow(2.0, static_cast<double>(n)) + acc.value() * cell;
    double abs_integral = level == 0 ? abs_sum * cell
                                     : previous_abs / std::pow(2.0, static_cast<double>(n)) + abs_sum * cell;
    // rounding floor of the node sum
    double roundoff = 8.0 * std::numeric_limits<double>::epsilon() * abs_integral;
    res.levels = level + 1;
    res.value = value;
    if (level > 0) {
      double diff = std::abs(value - previous);
      res.error_estimate = diff + tail + roundoff;
      if (level >= spec.min_levels - 1 && res.error_estimate <= tolerance(spec, value)) {
        res.converged = true;
        return res;
      }
    } else {
      res.error_estimate = std::abs(value) + tail;
    }
    previous = value;
    previous_abs = abs_integral;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] *= 0.5;
      N[i] *= 2;
    }
  }
  return res;
}

// tanh-sinh on each segment between breakpoints of [c-U, c+U]
IntegralResult tanh_sinh_1d(const Integrand1D& f, const QuadratureSpec& spec) {
  IntegralResult res;
  double U = spec.radius(0);
  double c = spec.centre(0);
  res.truncation_radius.push_back(U);
  std::vector<double> cuts{c - U};
  std::vector<double> bps = spec.breakpoints;
  std::sort(bps.begin(), bps.end());
  for (double b : bps)
    if (b > c - U && b < c + U) cuts.push_back(b);
  cuts.push_back(c + U);

  const double t_max = 3.2;
  auto node_sum = [&](double a, double b, double h, bool odd_only, long& nodes) {
    Accumulator acc;
    double half = 0.5 * (b - a);
    long kmax = static_cast<long>(std::ceil(t_max / h));
    for (long kk = -kmax; kk <= kmax; ++kk) {
      if (odd_only && kk % 2 == 0) continue;
      double t = kk * h;
      double u = 0.5 * pi * std::sinh(t);
      double ch = std::cosh(u);
      double w = half * 0.5 * pi * std::cosh(t) / (ch * ch);
      // distance to the nearer endpoint, without cancellation
      double delta = half * 2.0 / (1.0 + std::exp(2.0 * std::abs(u)));
      if (delta <= 0 || w == 0) continue;
      double x = t < 0 ? a + delta : b - delta;
      cplx v = f(x);
      ++nodes;
      acc.add(w * v);
    }
    return acc.value() * h;
  };

  double tail = 0;
  cplx previous = 0;
  double h = 1.0;
  for (int level = 0; level <= spec.max_levels + 4; ++level) {
    cplx value = 0;
    long nodes = 0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      value += node_sum(cuts[s], cuts[s + 1], h, level > 0, nodes);
    }
    if (res.nodes_used + nodes > spec.max_nodes) break;
    res.nodes_used += nodes;
    if (level == 0) {
      // outer endpoints only matter through truncation
      tail = (std::abs(f(c - U)) + std::abs(f(c + U))) / spec.rate(0);
      res.value = value;
      res.error_estimate = std::abs(value) + tail;
    } else {
      value += 0.5 * previous;
      res.value = value;
      res.error_estimate = std::abs(value - previous) + tail;
      if (level >= spec.min_levels - 1 && res.error_estimate <= tolerance(spec, value)) {
        res.levels = level + 1;
        res.converged = true;
        return res;
      }
    }
    res.levels = level + 1;
    previous = value;
    h *= 0.5;
  }
  return res;
}

}  // namespace

double QuadratureSpec::rate(std::size_t axis) const { return pick(decay_rate, axis, 1.0); }
double QuadratureSpec::osc(std::size_t axis) const { return pick(oscillation, axis, 0.0); }
double QuadratureSpec::centre(std::size_t axis) const { return pick(center, axis, 0.0); }
double QuadratureSpec::flat(std::size_t axis) const { return pick(plateau, axis, 0.0); }
double QuadratureSpec::radius(std::size_t axis) const {
  double r = rate(axis);
  if (!(r > 0)) throw PreconditionError("quadrature decay rate must be positive");
  double U = flat(axis) + (margin + std::log(1.0 / abs_tol)) / r;
  if (!(U > 0) || !std::isfinite(U)) throw PreconditionError("quadrature truncation radius invalid");
  return U;
}

IntegralResult integrate_1d(const Integrand1D& f, const QuadratureSpec& spec) {
  if (spec.scheme == NodeScheme::double_exponential) return tanh_sinh_1d(f, spec);
  return trapezoid_nd([&](std::span<const double> y) { return f(y[0]); }, 1, spec);
}

IntegralResult integrate_nd(const IntegrandND& f, std::size_t n, const QuadratureSpec& spec) {
  if (n > 4) {
    std::ostringstream os;
    os << "integrate_nd supports n <= 4, got n = " << n;
    throw UnsupportedDimensionError(os.str());
  }
  if (n == 0) {
    IntegralResult r;
    r.value = f(std::span<const double>());
    r.nodes_used = 1;
    r.converged = true;
    return r;
  }
  if (spec.scheme == NodeScheme::double_exponential && n == 1)
    return tanh_sinh_1d([&](double x) { return f(std::span<const double>(&x, 1)); }, spec);
  return trapezoid_nd(f, n, spec);
}

const IntegralResult& require_converged(const IntegralResult& r, const std::string& what) {
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (estimate " << r.error_estimate << ", nodes "
       << r.nodes_used << ")";
    throw DivergenceError(os.str());
  }
  return r;
}

}  // namespace rlab
