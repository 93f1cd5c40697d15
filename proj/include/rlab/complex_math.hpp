#pragma once

#include <cmath>
#include <complex>

#include "rlab/params.hpp"

namespace rlab {

// log(2 sin u) on some branch. Never forms e^{|Im u|}, so it is finite for
// arbitrarily large imaginary parts.
inline cplx log_two_sin(cplx u) {
  if (u.imag() > 0) return I * (0.5 * pi) - I * u + std::log(1.0 - std::exp(2.0 * I * u));
  return -I * (0.5 * pi) + I * u + std::log(1.0 - std::exp(-2.0 * I * u));
}

// log(2 sh v) on some branch.
inline cplx log_two_sinh(cplx v) {
  if (v.real() >= 0) return v + std::log(1.0 - std::exp(-2.0 * v));
  return I * pi - v + std::log(1.0 - std::exp(2.0 * v));
}

// 2 sin u with the exponential evaluated only when |Im u| is below the
// overflow guard; beyond it the result is infinite in modulus anyway.
inline cplx two_sin(cplx u) {
  if (std::abs(u.imag()) > 700.0) return std::exp(log_two_sin(u));
  return 2.0 * std::sin(u);
}

inline cplx two_sinh(cplx v) {
  if (std::abs(v.real()) > 700.0) return std::exp(log_two_sinh(v));
  return 2.0 * std::sinh(v);
}

// Brings the imaginary part of a log into (-pi, pi].
inline cplx wrap_log(cplx l) {
  double im = std::remainder(l.imag(), 2.0 * pi);
  return {l.real(), im};
}

}  // namespace rlab
