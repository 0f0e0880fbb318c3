#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "yamabe/geometry.hpp"

namespace yamabe {

/// A function on the boundary of a ball or annulus, one spherical-harmonic
/// coefficient vector per boundary component (outer first). Coefficients are
/// taken against the unit-normalized harmonics of the *unit* sphere, so the
/// trace on a sphere of radius rho is f(w) = sum_k c_k Y_k(w).
class BoundaryTrace {
 public:
  BoundaryTrace(const Domain& domain, int l_max);

  /// Trace equal to `value` on every component.
  static BoundaryTrace constant(const Domain& domain, double value, int l_max = 0);

  const Domain& domain() const { return domain_; }
  int l_max() const { return l_max_; }
  std::size_t components() const { return coeffs_.size(); }
  std::size_t modes() const { return static_cast<std::size_t>((l_max_ + 1) * (l_max_ + 1)); }

  std::span<double> coefficients(std::size_t component) { return coeffs_.at(component); }
  std::span<const double> coefficients(std::size_t component) const { return coeffs_.at(component); }

  double& at(std::size_t component, int l, int m);
  double at(std::size_t component, int l, int m) const;

  /// Component-major concatenation of all coefficients.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  bool is_zero() const;

  /// Copy with coefficients padded or truncated to `l_max`.
  BoundaryTrace resized(int l_max) const;

 private:
  Domain domain_;
  int l_max_;
  std::vector<std::vector<double>> coeffs_;
};

/// Value and first two radial derivatives of one radial mode function.
struct RadialValue {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
  double f_over_r = 0.0;  // finite at r = 0 for the ball
};

/// Per-degree radial solutions of the Laplace equation on a ball or annulus,
/// in the scaled basis p(r) = (r/r_out)^l and q(r) = (r_in/r)^{l+n-2} (both
/// bounded by 1 on the annulus). For the ball only p is used.
class RadialModes {
 public:
  explicit RadialModes(const Domain& domain);

  struct Amplitudes {
    double p = 0.0;
    double q = 0.0;
  };

  /// Amplitudes matching the outer trace `outer` and inner trace `inner`.
  Amplitudes solve(int l, double outer, double inner = 0.0) const;
  RadialValue evaluate(int l, const Amplitudes& a, double r) const;

  /// Symmetric K_l with  int |grad u|^2 = c^T K_l c  for one (l, m) mode,
  /// c = (outer, inner) coefficients. 1x1 for the ball (row-major 2x2 with
  /// zeros otherwise).
  std::array<double, 4> dirichlet_form(int l) const;

  /// Dirichlet-to-Neumann eigenvalues of degree l (one for the ball, two for
  /// the annulus, ascending).
  std::vector<double> steklov_eigenvalues(int l) const;

  bool is_ball() const { return ball_; }

 private:
  int n_;
  bool ball_;
  double r_in_;
  double r_out_;
};

}  // namespace yamabe
