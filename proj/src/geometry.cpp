#include "yamabe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

Vec3 to_cartesian(const Point& p) {
  const double s = std::sin(p.polar);
  return {p.radius * s * std::cos(p.azimuth), p.radius * s * std::sin(p.azimuth),
          p.radius * std::cos(p.polar)};
}

Point from_cartesian(const Vec3& x) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (r == 0.0) return {};
  return {r, std::acos(std::clamp(x[2] / r, -1.0, 1.0)), std::atan2(x[1], x[0])};
}

double unit_sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

namespace {

// psi(s) = exp(1 - 1/(1 - s^2)); returns psi, dpsi/ds, d2psi/ds2.
std::array<double, 3> bump_core(double s) {
  const double q = 1.0 - s * s;
  if (q <= 0.0) return {0.0, 0.0, 0.0};
  const double psi = std::exp(1.0 - 1.0 / q);
  // d/ds(-1/q) = -2s/q^2
  const double g = -2.0 * s / (q * q);
  // d/ds(g) = -2/q^2 - 8 s^2 / q^3
  const double dg = -2.0 / (q * q) - 8.0 * s * s / (q * q * q);
  return {psi, psi * g, psi * (g * g + dg)};
}

}  // namespace

double BumpProfile::value(double polar) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * bump_core((polar - center) / width)[0];
}

double BumpProfile::first_derivative(double polar) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * bump_core((polar - center) / width)[1] / width;
}

double BumpProfile::second_derivative(double polar) const {
  if (amplitude == 0.0) return 0.0;
  return amplitude * bump_core((polar - center) / width)[2] / (width * width);
}

Domain::Domain(DomainKind kind, int n, double inner, double outer, BumpProfile profile)
    : kind_(kind), n_(n), inner_(inner), outer_(outer), profile_(profile) {
  if (n < 3) throw PreconditionError("domain dimension must be >= 3, got " + std::to_string(n));
  if (!(outer > 0.0)) throw PreconditionError("outer radius must be positive");
  components_.push_back({BoundaryTag::outer, outer, 1.0});
  if (kind == DomainKind::annulus) {
    if (!(inner > 0.0) || !(inner < outer))
      throw PreconditionError("annulus radii must satisfy 0 < r_in < r_out");
    components_.push_back({BoundaryTag::inner, inner, -1.0});
  }
}

Domain Domain::ball(int n, double radius) {
  return Domain(DomainKind::ball, n, 0.0, radius, BumpProfile{});
}

Domain Domain::annulus(int n, double inner_radius, double outer_radius) {
  return Domain(DomainKind::annulus, n, inner_radius, outer_radius, BumpProfile{});
}

Domain Domain::bump_ball(const BumpProfile& profile) {
  if (!(profile.amplitude >= 0.0)) throw PreconditionError("bump amplitude must be >= 0");
  if (!(profile.width > 0.0)) throw PreconditionError("bump width must be positive");
  return Domain(DomainKind::bump_ball, 3, 0.0, 1.0, profile);
}

}  // namespace yamabe
