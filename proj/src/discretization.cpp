#include "yamabe/discretization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "yamabe/errors.hpp"
#include "yamabe/parallel.hpp"

namespace yamabe {

GaussLegendreRule gauss_legendre(int count, double lo, double hi) {
  if (count < 1) throw PreconditionError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int roots = (count + 1) / 2;
  for (int i = 0; i < roots; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= count; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = count * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // one more derivative evaluation at the converged root
    double p1 = 1.0, p2 = 0.0;
    for (int j = 1; j <= count; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = count * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 * half / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[count - 1 - i] = mid + half * z;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  return rule;
}

double QuadratureGrid::reduce(std::span<const double> terms) { return pairwise_sum(terms); }

double QuadratureGrid::measure() const { return pairwise_sum(weights); }

QuadratureGrid sphere_quadrature(int order) {
  if (order < 1) throw PreconditionError("sphere quadrature order must be >= 1");
  const auto polar = gauss_legendre(order);
  const int az = 2 * order;
  const double dphi = 2.0 * std::numbers::pi / az;
  QuadratureGrid grid;
  grid.tag = GridTag::sphere;
  grid.exactness_order = 2 * order - 1;
  grid.nodes.reserve(static_cast<std::size_t>(order) * az);
  for (int i = 0; i < order; ++i) {
    const double theta = std::acos(polar.nodes[i]);
    for (int j = 0; j < az; ++j) {
      grid.nodes.push_back({1.0, theta, j * dphi});
      grid.weights.push_back(polar.weights[i] * dphi);
    }
  }
  return grid;
}

QuadratureGrid boundary_quadrature(const Domain& domain, const BoundaryComponent& component,
                                   int order) {
  if (domain.kind() == DomainKind::bump_ball)
    throw PreconditionError("boundary quadrature is available for ball and annulus only");
  const int n = domain.dimension();
  const double area = std::pow(component.radius, n - 1);
  if (!domain.angular()) {
    QuadratureGrid grid;
    grid.tag = GridTag::sphere;
    grid.dimension = n;
    grid.radial_only = true;
    grid.exactness_order = 1;
    grid.nodes.push_back({component.radius, 0.0, 0.0});
    grid.weights.push_back(unit_sphere_area(n) * area);
    return grid;
  }
  QuadratureGrid grid = sphere_quadrature(order);
  for (auto& p : grid.nodes) p.radius = component.radius;
  for (auto& w : grid.weights) w *= area;
  return grid;
}

QuadratureGrid radial_volume_quadrature(const Domain& domain, int order) {
  if (domain.kind() == DomainKind::bump_ball)
    throw PreconditionError("volume quadrature is available for ball and annulus only");
  if (order < 1) throw PreconditionError("volume quadrature order must be >= 1");
  const int n = domain.dimension();
  const auto radial = gauss_legendre(order, domain.inner_radius(), domain.outer_radius());
  QuadratureGrid grid;
  grid.tag = domain.kind() == DomainKind::ball ? GridTag::ball : GridTag::annulus;
  grid.dimension = n;
  grid.exactness_order = 2 * order - 1;
  if (!domain.angular()) {
    grid.radial_only = true;
    const double s = unit_sphere_area(n);
    for (int k = 0; k < order; ++k) {
      const double r = radial.nodes[k];
      grid.nodes.push_back({r, 0.0, 0.0});
      grid.weights.push_back(radial.weights[k] * std::pow(r, n - 1) * s);
    }
    return grid;
  }
  const QuadratureGrid sphere = sphere_quadrature(order);
  grid.nodes.reserve(sphere.size() * order);
  for (int k = 0; k < order; ++k) {
    const double r = radial.nodes[k];
    const double wr = radial.weights[k] * r * r;
    for (std::size_t i = 0; i < sphere.size(); ++i) {
      grid.nodes.push_back({r, sphere.nodes[i].polar, sphere.nodes[i].azimuth});
      grid.weights.push_back(wr * sphere.weights[i]);
    }
  }
  return grid;
}

DomainGrids make_domain_grids(const Domain& domain, int order) {
  DomainGrids grids;
  grids.order = order;
  grids.volume = radial_volume_quadrature(domain, order);
  for (const auto& c : domain.boundary_components())
    grids.boundary.push_back(boundary_quadrature(domain, c, order));
  return grids;
}

// --- spherical harmonics ---------------------------------------------------

SphericalHarmonicBasis::SphericalHarmonicBasis(int l_max, int dimension)
    : l_max_(l_max), dimension_(dimension) {
  if (l_max < 0) throw PreconditionError("l_max must be >= 0");
  if (dimension != 3 && l_max != 0)
    throw PreconditionError("dimension " + std::to_string(dimension) +
                            " supports only radial (l_max = 0) harmonics");
}

std::pair<int, int> SphericalHarmonicBasis::degree_order(std::size_t index) {
  int l = static_cast<int>(std::sqrt(static_cast<double>(index)));
  while (static_cast<std::size_t>(l * l) > index) --l;
  while (static_cast<std::size_t>((l + 1) * (l + 1)) <= index) ++l;
  return {l, static_cast<int>(index) - l * l - l};
}

namespace {

inline std::size_t tri(int l, int m) { return static_cast<std::size_t>(l * (l + 1) / 2 + m); }

// Normalized associated Legendre functions Pbar_l^m(cos t) (no Condon-Shortley
// phase), Pbar_l^m / sin t for m >= 1, and d Pbar_l^m / dt.
struct LegendreTable {
  std::vector<double> p, p_over_sin, dp;
};

// Fills the three-term recurrence in l for fixed m, given the m = l seed.
void recur_in_l(int l_max, int m, double x, std::vector<double>& t) {
  if (m + 1 <= l_max) t[tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * t[tri(m, m)];
  for (int l = m + 2; l <= l_max; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l * l) - m * m));
    const double b = std::sqrt((static_cast<double>((l - 1) * (l - 1)) - m * m) /
                               (4.0 * (l - 1) * (l - 1) - 1.0));
    t[tri(l, m)] = a * (x * t[tri(l - 1, m)] - b * t[tri(l - 2, m)]);
  }
}

LegendreTable legendre(int l_max, double theta, bool with_derivatives) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const std::size_t n = tri(l_max, l_max) + 1;
  LegendreTable t;
  t.p.assign(n, 0.0);
  t.p[0] = 0.5 / std::sqrt(std::numbers::pi);
  for (int m = 1; m <= l_max; ++m)
    t.p[tri(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * t.p[tri(m - 1, m - 1)];
  for (int m = 0; m <= l_max; ++m) recur_in_l(l_max, m, x, t.p);
  if (!with_derivatives) return t;

  t.p_over_sin.assign(n, 0.0);
  for (int m = 1; m <= l_max; ++m) {
    t.p_over_sin[tri(m, m)] = std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * t.p[tri(m - 1, m - 1)];
    recur_in_l(l_max, m, x, t.p_over_sin);
  }

  t.dp.assign(n, 0.0);
  for (int l = 1; l <= l_max; ++l) {
    t.dp[tri(l, 0)] = -std::sqrt(static_cast<double>(l) * (l + 1)) * t.p[tri(l, 1)];
    for (int m = 1; m <= l; ++m) {
      const double down = std::sqrt(static_cast<double>(l + m) * (l - m + 1)) * t.p[tri(l, m - 1)];
      const double up =
          m < l ? std::sqrt(static_cast<double>(l - m) * (l + m + 1)) * t.p[tri(l, m + 1)] : 0.0;
      t.dp[tri(l, m)] = 0.5 * (down - up);
    }
  }
  return t;
}

}  // namespace

void SphericalHarmonicBasis::evaluate(double polar, double azimuth,
                                      std::span<double> values) const {
  if (dimension_ != 3) {
    values[0] = 1.0 / std::sqrt(unit_sphere_area(dimension_));
    return;
  }
  const auto t = legendre(l_max_, polar, false);
  for (int l = 0; l <= l_max_; ++l) {
    values[index(l, 0)] = t.p[tri(l, 0)];
    for (int m = 1; m <= l; ++m) {
      const double pm = std::numbers::sqrt2 * t.p[tri(l, m)];
      values[index(l, m)] = pm * std::cos(m * azimuth);
      values[index(l, -m)] = pm * std::sin(m * azimuth);
    }
  }
}

void SphericalHarmonicBasis::evaluate_with_derivatives(double polar, double azimuth,
                                                       std::span<double> values,
                                                       std::span<double> d_polar,
                                                       std::span<double> d_azimuth_over_sin) const {
  if (dimension_ != 3) {
    values[0] = 1.0 / std::sqrt(unit_sphere_area(dimension_));
    d_polar[0] = 0.0;
    d_azimuth_over_sin[0] = 0.0;
    return;
  }
  const auto t = legendre(l_max_, polar, true);
  for (int l = 0; l <= l_max_; ++l) {
    values[index(l, 0)] = t.p[tri(l, 0)];
    d_polar[index(l, 0)] = t.dp[tri(l, 0)];
    d_azimuth_over_sin[index(l, 0)] = 0.0;
    for (int m = 1; m <= l; ++m) {
      const double c = std::cos(m * azimuth);
      const double s = std::sin(m * azimuth);
      const double pm = std::numbers::sqrt2 * t.p[tri(l, m)];
      const double dpm = std::numbers::sqrt2 * t.dp[tri(l, m)];
      const double qm = std::numbers::sqrt2 * m * t.p_over_sin[tri(l, m)];
      values[index(l, m)] = pm * c;
      values[index(l, -m)] = pm * s;
      d_polar[index(l, m)] = dpm * c;
      d_polar[index(l, -m)] = dpm * s;
      d_azimuth_over_sin[index(l, m)] = -qm * s;
      d_azimuth_over_sin[index(l, -m)] = qm * c;
    }
  }
}

SphericalTransform::SphericalTransform(const SphericalHarmonicBasis& basis,
                                       const QuadratureGrid& grid)
    : node_count_(grid.size()), coeff_count_(basis.size()) {
  if (grid.size() == 0) throw PreconditionError("empty sphere grid");
  const int needed = 2 * basis.l_max();
  if (grid.exactness_order < needed) {
    throw PreconditionError("sphere grid exact to degree " + std::to_string(grid.exactness_order) +
                            " cannot resolve l_max = " + std::to_string(basis.l_max()) +
                            "; required quadrature order is " +
                            std::to_string(required_order(basis.l_max())));
  }
  const int n = basis.dimension();
  const double radius = grid.nodes.front().radius;
  const double area = std::pow(radius, n - 1);
  table_.resize(node_count_ * coeff_count_);
  angular_weights_.resize(node_count_);
  for (std::size_t i = 0; i < node_count_; ++i) {
    angular_weights_[i] = grid.weights[i] / area;
    basis.evaluate(grid.nodes[i].polar, grid.nodes[i].azimuth,
                   std::span<double>(table_).subspan(i * coeff_count_, coeff_count_));
  }
}

std::vector<double> SphericalTransform::analyze(std::span<const double> node_values) const {
  if (node_values.size() != node_count_)
    throw PreconditionError("analyze: node value count does not match the grid");
  std::vector<double> coeffs(coeff_count_);
  std::vector<double> terms(node_count_);
  for (std::size_t k = 0; k < coeff_count_; ++k) {
    for (std::size_t i = 0; i < node_count_; ++i)
      terms[i] = angular_weights_[i] * node_values[i] * table_[i * coeff_count_ + k];
    coeffs[k] = pairwise_sum(terms);
  }
  return coeffs;
}

std::vector<double> SphericalTransform::synthesize(std::span<const double> coefficients) const {
  if (coefficients.size() != coeff_count_)
    throw PreconditionError("synthesize: coefficient count does not match the basis");
  std::vector<double> values(node_count_, 0.0);
  for (std::size_t i = 0; i < node_count_; ++i) {
    const double* row = &table_[i * coeff_count_];
    double s = 0.0;
    for (std::size_t k = 0; k < coeff_count_; ++k) s += row[k] * coefficients[k];
    values[i] = s;
  }
  return values;
}

}  // namespace yamabe
