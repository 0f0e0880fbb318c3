#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "yamabe/geometry.hpp"

namespace yamabe {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// `count`-point Gauss-Legendre rule on [lo, hi]; exact for polynomials of
/// degree <= 2*count - 1.
GaussLegendreRule gauss_legendre(int count, double lo = -1.0, double hi = 1.0);

enum class GridTag { sphere, ball, annulus };

/// Nodes and positive weights. Sphere grids carry the area element of the
/// sphere they live on (radius^{n-1} included); volume grids carry r^{n-1}.
/// Radially symmetric grids (dimension != 3) fold Vol(S^{n-1}) into the
/// weights and leave the angles at zero.
struct QuadratureGrid {
  std::vector<Point> nodes;
  std::vector<double> weights;
  GridTag tag = GridTag::sphere;
  int exactness_order = 0;
  int dimension = 3;
  bool radial_only = false;

  std::size_t size() const { return nodes.size(); }
  double measure() const;

  /// sum_i w_i f(node_i), pairwise-reduced.
  template <class F>
  double integrate(F&& f) const {
    std::vector<double> terms(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) terms[i] = weights[i] * f(nodes[i]);
    return reduce(terms);
  }

  static double reduce(std::span<const double> terms);
};

/// Gauss-Legendre in cos(polar) x uniform azimuth (2*order points) on the
/// unit S^2. Exact for spherical harmonics of degree <= 2*order - 1.
QuadratureGrid sphere_quadrature(int order);

/// Grid on one boundary sphere of `domain` (ball or annulus).
QuadratureGrid boundary_quadrature(const Domain& domain, const BoundaryComponent& component,
                                   int order);

/// Tensor product of sphere_quadrature with Gauss-Legendre in radius weighted
/// by r^{n-1} (dimension 3); radial Gauss-Legendre times Vol(S^{n-1})
/// otherwise.
QuadratureGrid radial_volume_quadrature(const Domain& domain, int order);

struct DomainGrids {
  QuadratureGrid volume;
  std::vector<QuadratureGrid> boundary;  // matches Domain::boundary_components()
  int order = 0;
};

DomainGrids make_domain_grids(const Domain& domain, int order);

/// Real spherical harmonics, unit L2(S^2) norm, flat index l*l + l + m.
///   m > 0: sqrt(2) Pbar_l^m(cos t) cos(m p)
///   m < 0: sqrt(2) Pbar_l^|m|(cos t) sin(|m| p)
/// Pbar carries no Condon-Shortley phase. In dimensions other than 3 only
/// the constant harmonic Vol(S^{n-1})^{-1/2} is available (l_max = 0).
class SphericalHarmonicBasis {
 public:
  explicit SphericalHarmonicBasis(int l_max, int dimension = 3);

  int l_max() const { return l_max_; }
  int dimension() const { return dimension_; }
  std::size_t size() const { return static_cast<std::size_t>((l_max_ + 1) * (l_max_ + 1)); }

  static std::size_t index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }
  static std::pair<int, int> degree_order(std::size_t index);

  /// Values at (polar, azimuth); `values` must hold size() entries.
  void evaluate(double polar, double azimuth, std::span<double> values) const;

  /// Values plus the polar derivative and (1/sin t) times the azimuthal
  /// derivative; both are finite on the poles.
  void evaluate_with_derivatives(double polar, double azimuth, std::span<double> values,
                                 std::span<double> d_polar,
                                 std::span<double> d_azimuth_over_sin) const;

 private:
  int l_max_;
  int dimension_;
};

/// Analysis/synthesis between node values on a sphere grid and coefficients.
class SphericalTransform {
 public:
  /// Throws PreconditionError naming the required order when the grid cannot
  /// integrate products of degree 2*l_max exactly.
  SphericalTransform(const SphericalHarmonicBasis& basis, const QuadratureGrid& grid);

  static int required_order(int l_max) { return l_max + 1; }

  std::vector<double> analyze(std::span<const double> node_values) const;
  std::vector<double> synthesize(std::span<const double> coefficients) const;

  std::size_t nodes() const { return node_count_; }
  std::size_t coefficients() const { return coeff_count_; }

  /// Basis value for coefficient k at node i.
  double basis_value(std::size_t node, std::size_t k) const { return table_[node * coeff_count_ + k]; }
  /// Angular (unit sphere) weight of node i.
  double angular_weight(std::size_t node) const { return angular_weights_[node]; }

 private:
  std::size_t node_count_;
  std::size_t coeff_count_;
  std::vector<double> table_;
  std::vector<double> angular_weights_;
};

}  // namespace yamabe
