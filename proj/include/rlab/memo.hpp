#pragma once

#include <cmath>
#include <functional>
#include <unordered_map>

#include "rlab/params.hpp"

namespace rlab {

// Caches a function of one real variable by its argument rounded to 2^-36.
// Trapezoid nodes of nested integrals sit on a common lattice, so differences
// of nodes repeat and most kernel factors become lookups.
class LatticeMemo {
 public:
  LatticeMemo() = default;
  explicit LatticeMemo(std::function<cplx(double)> f) : f_(std::move(f)) {}

  cplx operator()(double t) {
    long long key = std::llround(std::ldexp(t, 36));
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    cplx v = f_(t);
    map_.emplace(key, v);
    return v;
  }
  std::size_t size() const { return map_.size(); }

 private:
  std::function<cplx(double)> f_;
  std::unordered_map<long long, cplx> map_;
};

}  // namespace rlab
