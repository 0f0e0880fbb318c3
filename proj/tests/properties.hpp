#pragma once

// Randomized invariance properties of E and Q. Each runs `count` instances
// and reports the worst relative defect; callers compare it with 1e-8.

#include <algorithm>
#include <cmath>
#include <vector>

#include "support.hpp"
#include "yamabe/energy.hpp"
#include "yamabe/harmonic.hpp"

namespace testing {

struct PropertyResult {
  int instances = 0;
  int passed = 0;
  double worst = 0.0;
  void record(double defect, double tol) {
    ++instances;
    if (defect <= tol) ++passed;
    worst = std::max(worst, defect);
  }
};

struct Lcg {
  unsigned long long s;
  double uniform(double lo, double hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + (hi - lo) * static_cast<double>(s >> 11) / 9007199254740992.0;
  }
};

inline yamabe::Domain random_domain(Lcg& rng) {
  using yamabe::Domain;
  if (rng.uniform(0, 1) < 0.5) return Domain::ball(3, rng.uniform(0.5, 2.0));
  const double inner = rng.uniform(0.2, 0.7);
  return Domain::annulus(3, inner, rng.uniform(0.8, 1.5));
}

/// E(c g) = E(g) for g = u^4 delta, u a random positive harmonic function.
inline PropertyResult energy_scale_invariance(int count, double tol) {
  using namespace yamabe;
  Lcg rng{1};
  PropertyResult res;
  for (int i = 0; i < count; ++i) {
    const Domain d = random_domain(rng);
    const auto t = lcg_trace(d, 3, static_cast<unsigned>(i), rng.uniform(0.0, 0.3));
    const auto g = conformal_metric(d, harmonic_extension(t));
    const double c = rng.uniform(0.05, 20.0);
    const auto grids = make_domain_grids(d, 16);
    const double e = yamabe_energy(g, grids).energy;
    res.record(rel_err(yamabe_energy(rescaled_metric(g, c), grids).energy, e), tol);
  }
  return res;
}

/// Q(t phi) = Q(phi) for metrics with prescribed boundary curvature or an
/// affine conformal factor.
inline PropertyResult quotient_scale_invariance(int count, double tol) {
  using namespace yamabe;
  Lcg rng{2};
  PropertyResult res;
  for (int i = 0; i < count; ++i) {
    const Domain d = random_domain(rng);
    const auto grids = make_domain_grids(d, 12);
    MetricData g;
    if (i % 2 == 0) {
      std::vector<double> h;
      for (std::size_t c = 0; c < d.boundary_components().size(); ++c) h.push_back(rng.uniform(-3, 3));
      g = with_boundary_curvature(d, h);
    } else {
      g = conformal_metric(d, affine_factor(2.0, {rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0.2}));
    }
    auto phi = lcg_trace(d, 4, static_cast<unsigned>(100 + i), rng.uniform(0.0, 0.4));
    const double q = boundary_quotient(g, phi, grids).value;
    const double s = rng.uniform(0.01, 100.0);
    for (std::size_t c = 0; c < phi.components(); ++c)
      for (auto& v : phi.coefficients(c)) v *= s;
    res.record(rel_err(boundary_quotient(g, phi, grids).value, q), tol);
  }
  return res;
}

/// Q(phi_harm) <= Q(phi_harm + psi) for psi vanishing on the boundary; the
/// defect is the relative amount by which the harmonic value exceeds.
inline PropertyResult harmonic_replacement(int count, double tol) {
  using namespace yamabe;
  Lcg rng{3};
  PropertyResult res;
  for (int i = 0; i < count; ++i) {
    const Domain d = random_domain(rng);
    const auto grids = make_domain_grids(d, 16);
    std::vector<double> h;
    for (std::size_t c = 0; c < d.boundary_components().size(); ++c) h.push_back(rng.uniform(-1, 3));
    const auto g = with_boundary_curvature(d, h);
    const auto t = lcg_trace(d, 3, static_cast<unsigned>(200 + i), 0.2);
    const auto u = harmonic_extension(t);
    // psi = eps (ro^2 - |x|^2)(|x|^2 - ri^2) (b0 + a.x)
    const double ro = d.outer_radius();
    const double ri = d.kind() == DomainKind::annulus ? d.inner_radius() : 0.0;
    const Vec3 a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const double b0 = rng.uniform(-1, 1), eps = rng.uniform(0.05, 0.5);
    auto perturbed = [=](const Point& p) {
      FieldSample s = u.sample(p);
      const Vec3 x = to_cartesian(p);
      const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
      const double f = b0 + a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
      const double w = ro * ro - r2;
      const double w2 = ri > 0.0 ? r2 - ri * ri : 1.0;
      const double dw2 = ri > 0.0 ? 2.0 : 0.0;
      Vec3 grad{};
      for (std::size_t k = 0; k < 3; ++k)
        grad[k] = eps * (-2.0 * x[k] * w2 * f + w * dw2 * x[k] * f + w * w2 * a[k]);
      const Vec3 sph = spherical_components(p, grad);
      s.value += eps * w * w2 * f;
      for (std::size_t k = 0; k < 3; ++k) s.gradient[k] += sph[k];
      return s;
    };
    const double harm = boundary_quotient(g, t, grids).value;
    const double other = boundary_quotient(g, perturbed, grids).value;
    res.record(std::max(0.0, (harm - other) / std::abs(other)), tol);
  }
  return res;
}

/// Q_delta(phi) = E(phi^{4/(n-2)} delta) for random positive harmonic phi.
inline PropertyResult conformal_covariance(int count, double tol) {
  using namespace yamabe;
  Lcg rng{4};
  PropertyResult res;
  for (int i = 0; i < count; ++i) {
    const Domain d = random_domain(rng);
    const auto grids = make_domain_grids(d, 18);
    const auto t = lcg_trace(d, 3, static_cast<unsigned>(300 + i), rng.uniform(0.0, 0.25));
    const double q = boundary_quotient(euclidean_metric(d), t, grids).value;
    const double e = yamabe_energy(conformal_metric(d, harmonic_extension(t)), grids).energy;
    res.record(rel_err(q, e), tol);
  }
  return res;
}

}  // namespace testing
