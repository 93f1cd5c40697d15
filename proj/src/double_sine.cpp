#include "rlab/double_sine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <memory>
#include <sstream>

#include "rlab/complex_math.hpp"
#include "rlab/errors.hpp"

namespace rlab {

const char* to_string(S2Class c) {
  switch (c) {
    case S2Class::regular: return "regular";
    case S2Class::zero: return "zero";
    case S2Class::pole: return "pole";
  }
  return "?";
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

namespace {

constexpr int kGaussOrder = 12;
// e^{-38} ~ 3e-17: envelope cut of the sh-term
constexpr double kEnvelopeLog = 38.0;
constexpr double kMaxExponent = 690.0;

struct Panels {
  std::vector<double> x, w;
  Panels() { std::tie(x, w) = gauss_legendre(kGaussOrder); }
};

const Panels& gl() {
  static const Panels p;
  return p;
}

}  // namespace

DoubleSine::DoubleSine(cplx omega1, cplx omega2, S2Options opts)
    : w1_(omega1), w2_(omega2), opts_(opts) {
  if (!(w1_.real() > 0 && w2_.real() > 0))
    throw PreconditionError("double sine requires Re omega1 > 0 and Re omega2 > 0");
  t0_ = 1e-3 / std::abs(q());
  panel_width_ = 1.4 / std::max(std::abs(w1_), std::abs(w2_));
  max_freq_ = 4.0 / panel_width_;
  // Cache panels far enough for the ladder window, where the decay rate is at
  // least min(Re ω).
  double p = std::min(w1_.real(), w2_.real());
  double t_max = std::min(kEnvelopeLog / p, kMaxExponent / (w1_.real() + w2_.real()));
  const auto& g = gl();
  double left = t0_;
  double right = panel_width_;
  while (left < t_max) {
    double h = 0.5 * (right - left), c = 0.5 * (right + left);
    for (int i = 0; i < kGaussOrder; ++i) {
      double t = c + h * g.x[i];
      double wt = h * g.w[i];
      t_.push_back(t);
      a_.push_back(wt / (4.0 * t * std::sinh(w1_ * t) * std::sinh(w2_ * t)));
      b_.push_back(wt / (2.0 * t * t * w1_ * w2_));
    }
    panel_end_.push_back(t_.size());
    panel_right_.push_back(right);
    left = right;
    right += panel_width_;
  }
}

cplx DoubleSine::strip_sum(cplx w, double decay) const {
  double re_sum = w1_.real() + w2_.real();
  double t_cut = std::min(kEnvelopeLog / decay, kMaxExponent / re_sum);
  double freq = std::abs(w.imag()) + std::abs(w1_.imag()) + std::abs(w2_.imag());
  cplx s1 = w1_ * w1_, s2 = w2_ * w2_, w2sq = w * w;
  cplx c2 = (w2sq - s1 - s2) / 6.0;
  cplx c4 = w2sq * w2sq / 120.0 - w2sq * (s1 + s2) / 36.0 + 7.0 * (s1 * s1 + s2 * s2) / 360.0 +
            s1 * s2 / 36.0;
  cplx pref = w / (2.0 * w1_ * w2_);
  cplx acc = pref * (c2 * t0_ + c4 * t0_ * t0_ * t0_ / 3.0);
  double t_end = t0_;
  if (freq <= max_freq_ && t_cut <= panel_right_.back() + 1e-12) {
    std::size_t begin = 0;
    for (std::size_t pnl = 0; pnl < panel_end_.size(); ++pnl) {
      cplx part = 0;
      for (std::size_t i = begin; i < panel_end_[pnl]; ++i)
        part += a_[i] * (2.0 * std::sinh(w * t_[i])) - b_[i] * w;
      acc += part;
      begin = panel_end_[pnl];
      t_end = panel_right_[pnl];
      if (t_end >= t_cut) break;
    }
  } else {
    const auto& g = gl();
    double width = std::min(panel_width_, 4.0 / std::max(freq, 1e-300));
    double left = t0_;
    double right = t0_ + width;
    while (left < t_cut) {
      double h = 0.5 * (right - left), c = 0.5 * (right + left);
      cplx part = 0;
      for (int i = 0; i < kGaussOrder; ++i) {
        double t = c + h * g.x[i];
        double wt = h * g.w[i];
        cplx sh = std::sinh(w * t) / (std::sinh(w1_ * t) * std::sinh(w2_ * t));
        part += wt / (2.0 * t) * (sh - w / (w1_ * w2_ * t));
      }
      acc += part;
      t_end = right;
      left = right;
      right = left + width;
    }
  }
  // ∫_{t_end}^∞ of the algebraic subtraction term
  return acc - pref / t_end;
}

cplx DoubleSine::log_strip(cplx z) const {
  double re_sum = w1_.real() + w2_.real();
  if (!(z.real() > 0 && z.real() < re_sum)) {
    std::ostringstream os;
    os << "log_s2_strip: Re z = " << z.real() << " outside the strip (0, " << re_sum << ")";
    throw DomainError(os.str());
  }
  cplx w = 2.0 * z - w1_ - w2_;
  double decay = re_sum - std::abs(w.real());
  return strip_sum(w, decay);
}

std::optional<cplx> DoubleSine::log_series(cplx z) const {
  auto one_side = [&](cplx zz) -> std::optional<cplx> {
    double x1 = 2 * pi * (zz / w1_).imag();
    double x2 = 2 * pi * (zz / w2_).imag();
    if (x1 < opts_.series_threshold || x2 < opts_.series_threshold) return std::nullopt;
    cplx sum = I * (0.5 * pi) * bernoulli22(zz);
    const cplx periods[2] = {w1_, w2_};
    for (int j = 0; j < 2; ++j) {
      cplx wj = periods[j], wl = periods[1 - j];
      cplx e1 = std::exp(2.0 * pi * I * zz / wj);
      cplx r = std::exp(2.0 * pi * I * wl / wj);
      double m1 = std::abs(e1);
      cplx ek = 1, rk = 1;
      double mk = 1;
      bool done = false;
      for (int k = 1; k <= 200; ++k) {
        ek *= e1;
        rk *= r;
        mk *= m1;
        cplx den = 1.0 - rk;
        double ad = std::abs(den);
        if (ad < 1e-6) return std::nullopt;
        cplx term = ek / (static_cast<double>(k) * den);
        sum -= term;
        if (mk < 1e-20 && std::abs(term) < 1e-18) {
          done = true;
          break;
        }
      }
      if (!done) return std::nullopt;
    }
    return sum;
  };
  if (auto v = one_side(z)) return v;
  if (auto v = one_side(w1_ + w2_ - z)) return -*v;
  return std::nullopt;
}

std::optional<std::pair<int, int>> DoubleSine::near_lattice(cplx zeta, int min_index) const {
  double tol = opts_.snap_tol * std::abs(q());
  if (std::abs(zeta) > 1e4 * std::abs(q())) return std::nullopt;
  double mmax = (zeta.real() + tol) / w1_.real();
  if (mmax < min_index) return std::nullopt;
  for (int m = min_index; m <= static_cast<int>(mmax); ++m) {
    cplx r = zeta - static_cast<double>(m) * w1_;
    double kest = (r * std::conj(w2_)).real() / std::norm(w2_);
    for (int k : {static_cast<int>(std::floor(kest)), static_cast<int>(std::ceil(kest))}) {
      if (k < min_index) continue;
      if (std::abs(r - static_cast<double>(k) * w2_) <= tol) return std::make_pair(m, k);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> DoubleSine::near_zero(cplx z) const {
  return near_lattice(-z, 0);
}

std::optional<std::pair<int, int>> DoubleSine::near_pole(cplx z) const {
  return near_lattice(z, 1);
}

S2Value DoubleSine::eval(cplx z) const {
  S2Value out;
  const double inf = std::numeric_limits<double>::infinity();
  if (z.real() <= opts_.snap_tol * std::abs(q())) {
    if (auto mk = near_zero(z)) {
      out.classification = S2Class::zero;
      out.value = 0;
      out.log_value = {-inf, 0};
      std::tie(out.m, out.k) = *mk;
      return out;
    }
  }
  if (z.real() >= w1_.real() + w2_.real() - opts_.snap_tol * std::abs(q())) {
    if (auto mk = near_pole(z)) {
      out.classification = S2Class::pole;
      out.value = {inf, 0};
      out.log_value = {inf, 0};
      std::tie(out.m, out.k) = *mk;
      return out;
    }
  }
  if (opts_.allow_series) {
    if (auto l = log_series(z)) {
      out.log_value = *l;
      out.value = std::exp(*l);
      return out;
    }
  }
  // Ladder into [p/2, Re(ω₁+ω₂) - p/2]; both periods can reach it.
  double p = std::min(w1_.real(), w2_.real());
  double lo = 0.5 * p, hi = w1_.real() + w2_.real() - 0.5 * p;
  auto steps_for = [&](double step) -> int {
    if (z.real() < lo) return static_cast<int>(std::ceil((lo - z.real()) / step));
    if (z.real() > hi) return -static_cast<int>(std::ceil((z.real() - hi) / step));
    return 0;
  };
  int n1 = steps_for(w1_.real()), n2 = steps_for(w2_.real());
  int axis = std::abs(n2) < std::abs(n1) ? 2 : 1;
  int n = axis == 1 ? n1 : n2;
  cplx step = axis == 1 ? w1_ : w2_;
  cplx other = axis == 1 ? w2_ : w1_;
  cplx acc = 0;
  double worst = 1.0;
  cplx zz = z;
  if (n > 0) {
    // S₂(z) = 2 sin(πz/ω_other) S₂(z + ω_step)
    for (int j = 0; j < n; ++j) {
      cplx u = pi * zz / other;
      acc += log_two_sin(u);
      worst = std::max(worst, std::exp(-log_two_sin(u).real()));
      zz += step;
    }
  } else if (n < 0) {
    // S₂(z) = S₂(z - ω_step) / (2 sin(π(z - ω_step)/ω_other))
    for (int j = 0; j < -n; ++j) {
      zz -= step;
      cplx u = pi * zz / other;
      acc -= log_two_sin(u);
      worst = std::max(worst, std::exp(-log_two_sin(u).real()));
    }
  }
  out.log_value = acc + log_strip(zz);
  out.value = std::exp(out.log_value);
  out.condition_estimate = (1.0 + std::abs(n)) * worst;
  return out;
}

cplx DoubleSine::log(cplx z) const {
  S2Value v = eval(z);
  if (!v.regular()) {
    std::ostringstream os;
    os << "log S2 at " << to_string(v.classification) << " (m,k)=(" << v.m << "," << v.k
       << "), z=" << z;
    throw SingularValueError(os.str(), v.m, v.k);
  }
  return v.log_value;
}

cplx DoubleSine::operator()(cplx z) const {
  S2Value v = eval(z);
  if (v.classification == S2Class::pole) {
    std::ostringstream os;
    os << "S2 pole (m,k)=(" << v.m << "," << v.k << ") at z=" << z;
    throw SingularValueError(os.str(), v.m, v.k);
  }
  return v.value;
}

cplx DoubleSine::inv(cplx z) const {
  S2Value v = eval(z);
  if (v.classification == S2Class::zero) {
    std::ostringstream os;
    os << "S2^{-1} pole at S2 zero (m,k)=(" << v.m << "," << v.k << "), z=" << z;
    throw SingularValueError(os.str(), v.m, v.k);
  }
  if (v.classification == S2Class::pole) return 0;
  return std::exp(-v.log_value);
}

cplx DoubleSine::inv_residue(int m, int k) const {
  cplx den = 1;
  for (int s = 1; s <= m; ++s) den *= two_sin(pi * static_cast<double>(s) * w1_ / w2_);
  for (int l = 1; l <= k; ++l) den *= two_sin(pi * static_cast<double>(l) * w2_ / w1_);
  double sign = ((m * k + m + k) % 2 == 0) ? 1.0 : -1.0;
  return std::sqrt(w1_ * w2_) / (2 * pi) * sign / den;
}

cplx DoubleSine::residue(int m, int k) const {
  if (m < 1 || k < 1) throw PreconditionError("S2 poles have m, k >= 1");
  return -inv_residue(m - 1, k - 1);
}

cplx DoubleSine::pochhammer(cplx x, int axis, int m) const {
  if (m < 0) throw PreconditionError("pochhammer: m must be nonnegative");
  cplx step = axis == 1 ? w1_ : w2_;
  cplx other = axis == 1 ? w2_ : w1_;
  cplx prod = 1;
  for (int j = 0; j < m; ++j) prod *= two_sin(pi * (x + static_cast<double>(j) * step) / other);
  return prod;
}

cplx DoubleSine::pochhammer_double(cplx x, int m, int k) const {
  // [x]_{m,k} = [x]_{m,0} [x+mω₁]_{0,k}; negative indices invert the
  // shifted product.
  auto one_axis = [&](cplx y, int axis, int n) -> cplx {
    if (n >= 0) return pochhammer(y, axis, n);
    cplx step = axis == 1 ? w1_ : w2_;
    cplx start = y + static_cast<double>(n) * step;
    cplx den = pochhammer(start, axis, -n);
    if (std::abs(den) == 0.0 || std::abs(den) < 1e-300) {
      std::ostringstream os;
      os << "pochhammer_double: singular ratio, S2 zero/pole collision starting at " << start;
      throw SingularValueError(os.str());
    }
    return 1.0 / den;
  };
  return one_axis(x, 1, m) * one_axis(x + static_cast<double>(m) * w1_, 2, k);
}

cplx DoubleSine::bernoulli22(cplx z) const {
  cplx d = z - q();
  return d * d / (w1_ * w2_) - (w1_ * w1_ + w2_ * w2_) / (12.0 * w1_ * w2_);
}

cplx DoubleSine::asymptotic(cplx z) const {
  double sgn = z.imag() >= 0 ? 1.0 : -1.0;
  return std::exp(sgn * I * (0.5 * pi) * bernoulli22(z));
}

std::shared_ptr<const DoubleSine> double_sine(cplx omega1, cplx omega2) {
  thread_local std::list<std::shared_ptr<const DoubleSine>> cache;
  for (auto it = cache.begin(); it != cache.end(); ++it) {
    if ((*it)->omega1() == omega1 && (*it)->omega2() == omega2) {
      if (it != cache.begin()) cache.splice(cache.begin(), cache, it);
      return cache.front();
    }
  }
  cache.push_front(std::make_shared<const DoubleSine>(omega1, omega2));
  if (cache.size() > 8) cache.pop_back();
  return cache.front();
}

cplx log_s2_strip(cplx z, const SystemParams& p) { return double_sine(p)->log_strip(z); }
S2Value s2(cplx z, const SystemParams& p) { return double_sine(p)->eval(z); }
cplx s2_inv_residue(int m, int k, const SystemParams& p) {
  return double_sine(p)->inv_residue(m, k);
}
cplx pochhammer_omega(cplx x, int axis, int m, const SystemParams& p) {
  return double_sine(p)->pochhammer(x, axis, m);
}
cplx pochhammer_double(cplx x, int m, int k, const SystemParams& p) {
  return double_sine(p)->pochhammer_double(x, m, k);
}
cplx s2_asymptotic(cplx z, const SystemParams& p) { return double_sine(p)->asymptotic(z); }

}  // namespace rlab
