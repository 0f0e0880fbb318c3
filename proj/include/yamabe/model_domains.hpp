#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "yamabe/conformal_factor.hpp"
#include "yamabe/geometry.hpp"

namespace yamabe {

// Conformal change laws for g_bar = u^{4/(n-2)} g. The pointwise forms throw
// DomainError when u <= 0; the span forms name the offending index.

double conformal_scalar_curvature(double r_base, double u, double laplacian_u, int n);
double conformal_mean_curvature(double h_base, double u, double normal_derivative_u, int n);

struct MeasureScales {
  double volume = 1.0;
  double area = 1.0;
};
MeasureScales conformal_measures(double u, int n);

std::vector<double> conformal_scalar_curvature(std::span<const double> r_base,
                                               std::span<const double> u,
                                               std::span<const double> laplacian_u, int n);
std::vector<double> conformal_mean_curvature(std::span<const double> h_base,
                                             std::span<const double> u,
                                             std::span<const double> normal_derivative_u, int n);

using ScalarField = std::function<double(const Point&)>;

/// Curvature and measure fields of a conformally flat metric w^{4/(n-2)} delta
/// on a ball or annulus. Scales are densities relative to the Euclidean
/// measures; mean_curvature is indexed like Domain::boundary_components().
struct MetricData {
  int dimension = 3;
  ScalarField scalar_curvature;
  std::vector<ScalarField> mean_curvature;
  ScalarField volume_scale;
  ScalarField area_scale;
  /// Flat data: R == 0 and both measure scales == 1 identically (known by
  /// construction); only the mean curvature may differ from the Euclidean one.
  bool euclidean_interior = false;
};

/// The flat metric: R = 0, H = (n-1)/rho on the outer sphere and -(n-1)/rho
/// on the inner one.
MetricData euclidean_metric(const Domain& domain);

/// Flat interior with prescribed constant mean curvature per component
/// (data for the boundary-curvature experiments).
MetricData with_boundary_curvature(const Domain& domain, std::span<const double> mean_curvature);

/// u^{4/(n-2)} delta, with R and H from the change laws and the factor's
/// own derivatives.
MetricData conformal_metric(const Domain& domain, const ConformalFactor& u);

/// c * g: R -> R / c, H -> H / sqrt(c), dV -> c^{n/2} dV, dA -> c^{(n-1)/2} dA.
MetricData rescaled_metric(const MetricData& metric, double c);

/// Second fundamental form and induced metric at a boundary point, in a
/// declared tangent frame. II is taken with respect to the outward normal, so
/// the unit sphere has II = induced metric.
struct SecondFundamentalForm {
  Eigen::MatrixXd second_form;
  Eigen::MatrixXd induced_metric;
};

/// Surface rho = base_radius + profile(polar) in R^3, frame
/// {profile' d_r + d_polar, d_azimuth}. Poles are excluded (the frame
/// degenerates there).
SecondFundamentalForm second_fundamental_form_revolution(const BumpProfile& profile, double polar,
                                                         double base_radius = 1.0);

/// Round sphere of the given radius in R^n in an orthonormal frame;
/// orientation -1 for spheres whose outward normal points at the origin.
SecondFundamentalForm round_sphere_form(int n, double radius, double orientation = 1.0);

/// Form after the conformal change u^{4/(n-2)} (II_bar = u^{2/(n-2)}
/// (II + (2/(n-2)) (du/dnu / u) g), g_bar = u^{4/(n-2)} g).
SecondFundamentalForm conformal_second_fundamental_form(const SecondFundamentalForm& sff,
                                                        double u, double normal_derivative_u,
                                                        int n);

/// Principal curvatures (eigenvalues of the shape operator), ascending.
std::vector<double> principal_curvatures(const SecondFundamentalForm& sff);

/// Frobenius norm of the trace-free part of II in an orthonormal frame of
/// the induced metric. Zero exactly at umbilic points.
double umbilicity_defect(const SecondFundamentalForm& sff);

}  // namespace yamabe
