#pragma once

#include <array>
#include <vector>

namespace yamabe {

using Vec3 = std::array<double, 3>;

/// Spherical coordinates of a point. In dimensions other than 3 only the
/// radius is meaningful; grids there are radially symmetric.
struct Point {
  double radius = 0.0;
  double polar = 0.0;
  double azimuth = 0.0;
};

Vec3 to_cartesian(const Point& p);
Point from_cartesian(const Vec3& x);

/// Vol(S^{n-1}) = 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_area(int n);

/// Compactly supported bump in the polar angle:
///   phi(t) = amplitude * exp(1 - 1 / (1 - s^2)),  s = (t - center) / width,
/// for |s| < 1 and zero elsewhere. Its maximum is `amplitude` at `center`.
struct BumpProfile {
  double amplitude = 0.0;
  double width = 0.3;
  double center = 1.5707963267948966;

  double value(double polar) const;
  double first_derivative(double polar) const;
  double second_derivative(double polar) const;
};

enum class DomainKind { ball, annulus, bump_ball };
enum class BoundaryTag { outer, inner };

/// A round boundary sphere. `orientation` is the sign of the outward normal
/// relative to the radial direction: +1 on the outer sphere, -1 on the inner
/// sphere of an annulus (its outward normal points toward the origin).
struct BoundaryComponent {
  BoundaryTag tag = BoundaryTag::outer;
  double radius = 1.0;
  double orientation = 1.0;
};

class Domain {
 public:
  static Domain ball(int n, double radius = 1.0);
  static Domain annulus(int n, double inner_radius, double outer_radius);
  static Domain bump_ball(const BumpProfile& profile);

  DomainKind kind() const { return kind_; }
  int dimension() const { return n_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  const BumpProfile& profile() const { return profile_; }

  /// Outer sphere first, then the inner sphere for an annulus.
  const std::vector<BoundaryComponent>& boundary_components() const { return components_; }

  /// Full angular discretization exists only in dimension 3.
  bool angular() const { return n_ == 3; }

 private:
  Domain(DomainKind kind, int n, double inner, double outer, BumpProfile profile);

  DomainKind kind_;
  int n_;
  double inner_;
  double outer_;
  BumpProfile profile_;
  std::vector<BoundaryComponent> components_;
};

}  // namespace yamabe
