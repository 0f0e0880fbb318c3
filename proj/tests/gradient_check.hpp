#pragma once

#include <cmath>
#include <vector>

#include "yamabe/energy.hpp"
#include "yamabe/minimizer.hpp"

namespace testing {

/// Relative L2 error between QuotientObjective's analytic gradient and
/// central differences of Q computed through the energy module, at the
/// random trace of instance i (ball for even i, annulus for odd i).
inline double gradient_fd_error(int i) {
  using namespace yamabe;
  const bool ball = i % 2 == 0;
  const Domain d = ball ? Domain::ball(3) : Domain::annulus(3, 0.5, 1.0);
  const std::vector<double> h = ball ? std::vector<double>{2.0} : std::vector<double>{2.0, -1.0 + 0.1 * i};
  const auto g = with_boundary_curvature(d, h);
  const int l_max = 3;
  const auto grids = make_domain_grids(d, 2 * l_max + 2);
  const QuotientObjective obj(d, g, l_max, grids);
  const auto x = random_trace(d, l_max, 1000 + static_cast<unsigned>(i), 0.2).flatten();

  auto q = [&](const std::vector<double>& y) {
    BoundaryTrace t(d, l_max);
    t.assign(y);
    return boundary_quotient(g, t, grids).value;
  };
  std::vector<double> grad;
  obj.value_and_gradient(x, grad);
  const double step = 1e-5;
  double diff = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    const double fd = (q(xp) - q(xm)) / (2 * step);
    diff += (grad[k] - fd) * (grad[k] - fd);
    ref += fd * fd;
  }
  return std::sqrt(diff / ref);
}

}  // namespace testing
