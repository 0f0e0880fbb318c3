#include "yamabe/conformal_factor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <variant>

#include "yamabe/errors.hpp"

namespace yamabe {

Vec3 spherical_components(const Point& p, const Vec3& g) {
  const double st = std::sin(p.polar), ct = std::cos(p.polar);
  const double sp = std::sin(p.azimuth), cp = std::cos(p.azimuth);
  return {g[0] * st * cp + g[1] * st * sp + g[2] * ct,
          g[0] * ct * cp + g[1] * ct * sp - g[2] * st,
          -g[0] * sp + g[1] * cp};
}

namespace {

struct ClosedForm {
  std::string id;
  std::vector<double> parameters;
  SampleFunction sampler;
};

struct RadialTable {
  std::vector<double> radii;
  std::vector<double> values;
};

struct Harmonic {
  BoundaryTrace trace;
  RadialModes modes;
  SphericalHarmonicBasis basis;
  std::vector<RadialModes::Amplitudes> amplitudes;  // per flat (l, m) index
};

// Fornberg's finite-difference weights for derivatives 0..2 at z.
std::array<std::array<double, 5>, 3> fornberg5(const double* x, double z) {
  constexpr int N = 5, M = 2;
  double c[N][M + 1] = {};
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < N; ++i) {
    const int mn = std::min(i, M);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::array<std::array<double, 5>, 3> w{};
  for (int k = 0; k <= M; ++k)
    for (int i = 0; i < N; ++i) w[k][i] = c[i][k];
  return w;
}

}  // namespace

struct ConformalFactor::Impl {
  Representation representation;
  int dimension;
  std::variant<ClosedForm, RadialTable, Harmonic> data;

  FieldSample sample(const Point& p) const;
  FieldSample sample_table(const RadialTable& t, const Point& p) const;
  FieldSample sample_harmonic(const Harmonic& h, const Point& p) const;
};

FieldSample ConformalFactor::Impl::sample(const Point& p) const {
  if (const auto* cf = std::get_if<ClosedForm>(&data)) return cf->sampler(p);
  if (const auto* t = std::get_if<RadialTable>(&data)) return sample_table(*t, p);
  return sample_harmonic(std::get<Harmonic>(data), p);
}

FieldSample ConformalFactor::Impl::sample_table(const RadialTable& t, const Point& p) const {
  const auto& r = t.radii;
  const double tol = 1e-12 * (r.back() - r.front());
  if (p.radius < r.front() - tol || p.radius > r.back() + tol) {
    std::ostringstream msg;
    msg << "radius " << p.radius << " outside the radial table [" << r.front() << ", " << r.back()
        << "]";
    throw PreconditionError(msg.str());
  }
  const auto it = std::lower_bound(r.begin(), r.end(), p.radius);
  const std::ptrdiff_t idx = it - r.begin();
  const std::ptrdiff_t start =
      std::clamp<std::ptrdiff_t>(idx - 2, 0, static_cast<std::ptrdiff_t>(r.size()) - 5);
  const auto w = fornberg5(&r[static_cast<std::size_t>(start)], p.radius);
  double f = 0.0, df = 0.0, d2f = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double v = t.values[static_cast<std::size_t>(start + i)];
    f += w[0][i] * v;
    df += w[1][i] * v;
    d2f += w[2][i] * v;
  }
  FieldSample s;
  s.value = f;
  s.gradient = {df, 0.0, 0.0};
  s.laplacian = d2f + (dimension - 1) * df / p.radius;
  return s;
}

FieldSample ConformalFactor::Impl::sample_harmonic(const Harmonic& h, const Point& p) const {
  const std::size_t nm = h.basis.size();
  std::vector<double> y(nm), dy(nm), dphi(nm);
  h.basis.evaluate_with_derivatives(p.polar, p.azimuth, y, dy, dphi);
  const int n = dimension;
  const double r = p.radius;
  FieldSample s;
  double lap = 0.0;
  for (std::size_t k = 0; k < nm; ++k) {
    const auto [l, m] = SphericalHarmonicBasis::degree_order(k);
    const auto& a = h.amplitudes[k];
    if (a.p == 0.0 && a.q == 0.0) continue;
    const RadialValue v = h.modes.evaluate(l, a, r);
    s.value += v.f * y[k];
    s.gradient[0] += v.df * y[k];
    s.gradient[1] += v.f_over_r * dy[k];
    s.gradient[2] += v.f_over_r * dphi[k];
    if (r > 0.0) lap += (v.d2f + (n - 1) * v.df / r - l * (l + n - 2.0) * v.f / (r * r)) * y[k];
  }
  s.laplacian = lap;
  return s;
}

ConformalFactor ConformalFactor::closed_form(std::string expression_id,
                                             std::vector<double> parameters, int dimension,
                                             SampleFunction sampler) {
  if (dimension < 3) throw PreconditionError("conformal factor dimension must be >= 3");
  if (!sampler) throw PreconditionError("closed-form factor needs a sampler");
  auto impl = std::make_shared<Impl>(Impl{
      Representation::closed_form, dimension,
      ClosedForm{std::move(expression_id), std::move(parameters), std::move(sampler)}});
  return ConformalFactor(std::move(impl));
}

ConformalFactor ConformalFactor::radial_table(int dimension, std::vector<double> radii,
                                              std::vector<double> values) {
  if (dimension < 3) throw PreconditionError("conformal factor dimension must be >= 3");
  if (radii.size() != values.size() || radii.size() < 5)
    throw PreconditionError("radial table needs matching radii/values with at least 5 entries");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw PreconditionError("radial table radii must be strictly increasing");
    if (!(values[i] > 0.0)) {
      std::ostringstream msg;
      msg << "radial table value " << values[i] << " at r = " << radii[i] << " is not positive";
      throw DomainError(msg.str());
    }
  }
  if (!(radii.front() > 0.0)) throw PreconditionError("radial table radii must be positive");
  auto impl = std::make_shared<Impl>(
      Impl{Representation::radial_table, dimension, RadialTable{std::move(radii), std::move(values)}});
  return ConformalFactor(std::move(impl));
}

ConformalFactor ConformalFactor::harmonic(const BoundaryTrace& trace) {
  const Domain& d = trace.domain();
  Harmonic h{trace, RadialModes(d), SphericalHarmonicBasis(trace.l_max(), d.dimension()), {}};
  h.amplitudes.resize(trace.modes());
  const bool annulus = trace.components() > 1;
  for (std::size_t k = 0; k < trace.modes(); ++k) {
    const int l = SphericalHarmonicBasis::degree_order(k).first;
    const double outer = trace.coefficients(0)[k];
    const double inner = annulus ? trace.coefficients(1)[k] : 0.0;
    h.amplitudes[k] = h.modes.solve(l, outer, inner);
  }
  auto impl = std::make_shared<Impl>(
      Impl{Representation::harmonic_coeffs, d.dimension(), std::move(h)});
  return ConformalFactor(std::move(impl));
}

ConformalFactor::Representation ConformalFactor::representation() const {
  return impl_->representation;
}

int ConformalFactor::dimension() const { return impl_->dimension; }

const std::string& ConformalFactor::expression_id() const {
  static const std::string table = "radial_table";
  static const std::string harmonic = "harmonic_extension";
  if (const auto* cf = std::get_if<ClosedForm>(&impl_->data)) return cf->id;
  return impl_->representation == Representation::radial_table ? table : harmonic;
}

const std::vector<double>& ConformalFactor::parameters() const {
  static const std::vector<double> none;
  if (const auto* cf = std::get_if<ClosedForm>(&impl_->data)) return cf->parameters;
  return none;
}

const BoundaryTrace* ConformalFactor::trace() const {
  if (const auto* h = std::get_if<Harmonic>(&impl_->data)) return &h->trace;
  return nullptr;
}

FieldSample ConformalFactor::sample(const Point& p) const { return impl_->sample(p); }

// --- closed forms ----------------------------------------------------------

ConformalFactor constant_factor(int dimension, double c) {
  if (!(c > 0.0)) throw DomainError("constant conformal factor must be positive");
  return ConformalFactor::closed_form("constant", {c}, dimension, [c](const Point&) {
    FieldSample s;
    s.value = c;
    return s;
  });
}

ConformalFactor schwarzschild_factor(int dimension, double mass) {
  if (!(mass >= 0.0)) throw PreconditionError("Schwarzschild mass must be >= 0");
  const int n = dimension;
  return ConformalFactor::closed_form("schwarzschild", {mass}, n, [n, mass](const Point& p) {
    const double r = p.radius;
    const double rk = std::pow(r, n - 2);
    FieldSample s;
    s.value = 1.0 + mass / (2.0 * rk);
    const double d1 = -mass * (n - 2) / (2.0 * rk * r);
    const double d2 = mass * (n - 2) * (n - 1) / (2.0 * rk * r * r);
    s.gradient = {d1, 0.0, 0.0};
    s.laplacian = d2 + (n - 1) * d1 / r;
    return s;
  });
}

ConformalFactor affine_factor(double c0, const Vec3& slope) {
  return ConformalFactor::closed_form(
      "affine", {c0, slope[0], slope[1], slope[2]}, 3, [c0, slope](const Point& p) {
        const Vec3 x = to_cartesian(p);
        FieldSample s;
        s.value = c0 + slope[0] * x[0] + slope[1] * x[1] + slope[2] * x[2];
        s.gradient = spherical_components(p, slope);
        s.laplacian = 0.0;
        return s;
      });
}

PositivityReport check_positivity(const ConformalFactor& u, const DomainGrids& grids) {
  PositivityReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  auto visit = [&](const QuadratureGrid& g) {
    for (const auto& p : g.nodes) {
      const double v = u.value(p);
      if (v < report.min_value) {
        report.min_value = v;
        report.worst = p;
      }
    }
  };
  visit(grids.volume);
  for (const auto& b : grids.boundary) visit(b);
  report.positive = report.min_value > 0.0;
  return report;
}

}  // namespace yamabe
