#include "yamabe/worked_examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "yamabe/errors.hpp"
#include "yamabe/model_domains.hpp"

namespace yamabe {

namespace {

void check_params(const SchwarzschildParams& p) {
  if (p.n < 3) throw PreconditionError("dimension must be >= 3");
  if (!(p.r > 0.0 && p.r < 1.0)) throw PreconditionError("inner radius must lie in (0, 1)");
  if (!(p.m >= 0.0) || !std::isfinite(p.m)) throw PreconditionError("mass must be >= 0");
}

double sphere_norm(int n) { return std::pow(unit_sphere_area(n), 1.0 / (n - 1)); }

}  // namespace

MeanCurvaturePair schwarzschild_mean_curvatures(const SchwarzschildParams& p, SchwarzschildVariant v) {
  check_params(p);
  const int n = p.n;
  const double e = static_cast<double>(n) / (n - 2);
  const double u_in = 1.0 + p.m / (2.0 * std::pow(p.r, n - 2));
  const double u_out = 1.0 + p.m / 2.0;
  const double mr = p.m / std::pow(p.r, n - 1);
  MeanCurvaturePair h;
  h.outer = (n - 1) * (1.0 - p.m / 2.0) * std::pow(u_out, -e);
  const double bracket = v == SchwarzschildVariant::exact ? mr - u_in / p.r : mr - u_in;
  h.inner = (n - 1) * bracket * std::pow(u_in, -e);
  return h;
}

double schwarzschild_energy(const SchwarzschildParams& p, SchwarzschildVariant v) {
  check_params(p);
  const int n = p.n;
  const double r = p.r, m = p.m;
  const double tau = 2.0 * (n - 1) / (n - 2);
  const double u_in = 1.0 + m / (2.0 * std::pow(r, n - 2));
  const double inner = v == SchwarzschildVariant::exact
                           ? (m / 2.0 - std::pow(r, n - 2)) * u_in
                           : (m - std::pow(r, n - 1) - m / 2.0 * r) * u_in;
  const double numerator = 2.0 * (n - 1) * (inner + 1.0 - m * m / 4.0);
  const double area = std::pow(1.0 + m / 2.0, tau) + std::pow(u_in, tau) * std::pow(r, n - 1);
  return numerator * sphere_norm(n) / std::pow(area, (n - 2.0) / (n - 1));
}

double euclidean_annulus_energy(int n, double r) {
  check_params({n, r, 0.0});
  return 2.0 * (n - 1) * (1.0 - std::pow(r, n - 2)) * sphere_norm(n) /
         std::pow(1.0 + std::pow(r, n - 1), (n - 2.0) / (n - 1));
}

double schwarzschild_energy_limit(int n, double r, SchwarzschildVariant v) {
  check_params({n, r, 0.0});
  if (v == SchwarzschildVariant::exact) return euclidean_annulus_energy(n, r);
  return 2.0 * (n - 1) * (2.0 - r - std::pow(r, n - 2)) * sphere_norm(n) /
         std::pow(1.0 + std::pow(r, n - 1), (n - 2.0) / (n - 1));
}

EnergyReport schwarzschild_pipeline_energy(const SchwarzschildParams& p, int order) {
  check_params(p);
  const Domain a = Domain::annulus(p.n, p.r, 1.0);
  const MetricData g = conformal_metric(a, schwarzschild_factor(p.n, p.m));
  return yamabe_energy(g, make_domain_grids(a, order));
}

ThresholdReport find_m0(int n, double r, double tol, SchwarzschildVariant v, double probe_max) {
  if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");
  check_params({n, r, 0.0});
  ThresholdReport rep;
  rep.euclidean_energy = euclidean_annulus_energy(n, r);
  rep.probe_min = 1e-8;
  rep.probe_max = probe_max;
  if (!(probe_max > rep.probe_min)) throw PreconditionError("probe range is empty");
  auto excess = [&](double m) { return schwarzschild_energy({n, r, m}, v) - rep.euclidean_energy; };

  constexpr int per_decade = 20;
  const double lo = std::log10(rep.probe_min), hi = std::log10(probe_max);
  const int count = static_cast<int>(std::ceil((hi - lo) * per_decade)) + 1;
  std::vector<double> ms(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    ms[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (count - 1));
  rep.probes = count;

  // Highest probe at which the energy does not exceed E(delta).
  int last_fail = -1;
  for (int i = count - 1; i >= 0; --i)
    if (!(excess(ms[static_cast<std::size_t>(i)]) > 0.0)) {
      last_fail = i;
      break;
    }
  if (last_fail == count - 1) {
    std::ostringstream msg;
    msg << "E(g_{r,m}) <= E(delta) at m = " << probe_max << " (n = " << n << ", r = " << r
        << "); no threshold in the probe range";
    throw NotFoundError(msg.str());
  }
  if (last_fail < 0) {
    rep.m0 = ms.front();
  } else {
    double a = ms[static_cast<std::size_t>(last_fail)];
    double b = ms[static_cast<std::size_t>(last_fail) + 1];
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      (excess(mid) > 0.0 ? b : a) = mid;
    }
    rep.m0 = b;
  }
  rep.certified = excess(rep.m0) > 0.0;
  return rep;
}

// --- Escobar ---------------------------------------------------------------

EscobarSample escobar_sample(const std::vector<double>& a, const std::vector<double>& x) {
  const std::size_t n = a.size();
  if (n < 3) throw PreconditionError("Escobar solutions need n >= 3");
  if (x.size() != n) throw PreconditionError("point and parameter dimensions differ");
  double a2 = 0.0, x2 = 0.0, xa = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a2 += a[i] * a[i];
    x2 += x[i] * x[i];
    xa += x[i] * a[i];
  }
  if (!(a2 < 1.0)) throw PreconditionError("Escobar parameter must satisfy |a| < 1");
  const double nd = static_cast<double>(n);
  const double p = -(nd - 2.0) / 2.0;
  const double k = std::pow(2.0 / (nd - 2.0) * (1.0 - a2), (nd - 2.0) / 2.0);
  const double d = 1.0 + a2 * x2 - 2.0 * xa;
  EscobarSample s;
  s.value = k * std::pow(d, p);
  s.gradient.resize(n);
  double grad_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double gd = 2.0 * a2 * x[i] - 2.0 * a[i];
    s.gradient[i] = k * p * std::pow(d, p - 1.0) * gd;
    grad_d2 += gd * gd;
  }
  const double lap_d = 2.0 * nd * a2;
  s.laplacian = k * p * ((p - 1.0) * std::pow(d, p - 2.0) * grad_d2 + std::pow(d, p - 1.0) * lap_d);
  return s;
}

double escobar_solution(const std::vector<double>& a, const std::vector<double>& x) {
  return escobar_sample(a, x).value;
}

ConformalFactor escobar_factor(const Vec3& a) {
  const std::vector<double> av(a.begin(), a.end());
  escobar_sample(av, {0.0, 0.0, 0.0});  // validates |a| < 1
  return ConformalFactor::closed_form("escobar", av, 3, [av](const Point& p) {
    const Vec3 x = to_cartesian(p);
    const EscobarSample e = escobar_sample(av, {x[0], x[1], x[2]});
    FieldSample s;
    s.value = e.value;
    s.gradient = spherical_components(p, {e.gradient[0], e.gradient[1], e.gradient[2]});
    s.laplacian = e.laplacian;
    return s;
  });
}

EscobarResidual escobar_residual(const std::vector<double>& a, int order) {
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  const QuadratureGrid volume = radial_volume_quadrature(Domain::ball(3), order);
  const QuadratureGrid sphere = sphere_quadrature(order);
  auto embed = [n](const Point& p) {
    const Vec3 c = to_cartesian(p);
    std::vector<double> x(n, 0.0);
    std::copy(c.begin(), c.end(), x.begin());
    return x;
  };
  EscobarResidual r;
  for (const auto& p : volume.nodes)
    r.interior = std::max(r.interior, std::abs(escobar_sample(a, embed(p)).laplacian));
  const double h = (nd - 2.0) / 2.0;
  for (const auto& p : sphere.nodes) {
    const auto x = embed(p);
    const EscobarSample s = escobar_sample(a, x);
    double dn = 0.0;
    for (std::size_t i = 0; i < n; ++i) dn += x[i] * s.gradient[i];
    const double res = dn + h * s.value - h * h * std::pow(s.value, nd / (nd - 2.0));
    r.boundary = std::max(r.boundary, std::abs(res));
  }
  return r;
}

double escobar_quotient(const Vec3& a, int order) {
  const Domain ball = Domain::ball(3);
  const ConformalFactor u = escobar_factor(a);
  return boundary_quotient(euclidean_metric(ball), [u](const Point& p) { return u.sample(p); },
                           make_domain_grids(ball, order))
      .value;
}

// --- bump ball -------------------------------------------------------------

BumpDemo bump_ball_demo(double amplitude, double width, int samples) {
  if (!(amplitude >= 0.0)) throw PreconditionError("bump amplitude must be >= 0");
  if (!(width > 0.0)) throw PreconditionError("bump width must be positive");
  if (samples < 1) throw PreconditionError("need at least one sample");
  BumpProfile profile;
  profile.amplitude = amplitude;
  profile.width = width;
  BumpDemo demo;
  for (int i = 0; i < samples; ++i) {
    const double polar = std::numbers::pi * (i + 0.5) / samples;
    const double d = umbilicity_defect(second_fundamental_form_revolution(profile, polar));
    demo.profile.emplace_back(polar, d);
    if (d > demo.max_defect) {
      demo.max_defect = d;
      demo.argmax = polar;
    }
  }
  return demo;
}

}  // namespace yamabe
