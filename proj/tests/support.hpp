#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "yamabe/boundary_trace.hpp"

namespace testing {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

constexpr double pi = std::numbers::pi;

/// sqrt(4 pi): coefficient of the constant function 1 on the unit S^2.
inline double unit_coeff() { return std::sqrt(4.0 * pi); }

/// A positive trace 1 + eps * (random low modes) built from a tiny LCG, so
/// tests do not depend on the library's own random_trace.
inline yamabe::BoundaryTrace lcg_trace(const yamabe::Domain& d, int l_max, unsigned seed,
                                       double eps) {
  yamabe::BoundaryTrace t = yamabe::BoundaryTrace::constant(d, 1.0, l_max);
  unsigned long long s = 0x9e3779b97f4a7c15ULL ^ seed;
  auto next = [&s] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) / 9007199254740992.0 * 2.0 - 1.0;
  };
  for (std::size_t c = 0; c < t.components(); ++c)
    for (std::size_t k = 1; k < t.modes(); ++k) t.coefficients(c)[k] = eps * next();
  return t;
}

}  // namespace testing
