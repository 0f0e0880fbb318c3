#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "yamabe/boundary_trace.hpp"
#include "yamabe/discretization.hpp"
#include "yamabe/geometry.hpp"

namespace yamabe {

/// Value, gradient and flat Laplacian of a function at a point. The gradient
/// is given in the orthonormal frame (e_r, e_polar, e_azimuth); radially
/// symmetric data fills only the first slot.
struct FieldSample {
  double value = 0.0;
  Vec3 gradient{0.0, 0.0, 0.0};
  double laplacian = 0.0;
};

using SampleFunction = std::function<FieldSample(const Point&)>;

/// Rotates a Cartesian gradient into the (e_r, e_polar, e_azimuth) frame at p.
Vec3 spherical_components(const Point& p, const Vec3& cartesian_gradient);

/// A positive function u defining the metric u^{4/(n-2)} g on a model domain.
/// Immutable; copies share the underlying representation.
class ConformalFactor {
 public:
  enum class Representation { closed_form, radial_table, harmonic_coeffs };

  /// Closed form with exact derivatives supplied by `sampler`.
  static ConformalFactor closed_form(std::string expression_id, std::vector<double> parameters,
                                     int dimension, SampleFunction sampler);

  /// Radial profile tabulated on strictly increasing radii (at least five).
  /// Values and derivatives between and at nodes come from the local
  /// five-point interpolant, i.e. fourth-order finite differences.
  static ConformalFactor radial_table(int dimension, std::vector<double> radii,
                                      std::vector<double> values);

  /// Harmonic extension of `trace` into its domain.
  static ConformalFactor harmonic(const BoundaryTrace& trace);

  Representation representation() const;
  int dimension() const;
  const std::string& expression_id() const;
  const std::vector<double>& parameters() const;
  /// Non-null only for harmonic_coeffs.
  const BoundaryTrace* trace() const;

  FieldSample sample(const Point& p) const;
  double value(const Point& p) const { return sample(p).value; }
  /// Derivative along the outward normal of a round boundary sphere.
  double normal_derivative(const Point& p, double orientation) const {
    return orientation * sample(p).gradient[0];
  }

  struct Impl;

 private:
  explicit ConformalFactor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

ConformalFactor constant_factor(int dimension, double c);

/// u = 1 + m / (2 |x|^{n-2}), harmonic on R^n minus the origin.
ConformalFactor schwarzschild_factor(int dimension, double mass);

/// u = c0 + slope . x in R^3.
ConformalFactor affine_factor(double c0, const Vec3& slope);

/// Positivity of a factor at the nodes of a grid set.
struct PositivityReport {
  bool positive = true;
  double min_value = 0.0;
  Point worst{};
};

PositivityReport check_positivity(const ConformalFactor& u, const DomainGrids& grids);

}  // namespace yamabe
