#pragma once

#include <utility>
#include <vector>

#include "yamabe/conformal_factor.hpp"
#include "yamabe/energy.hpp"
#include "yamabe/geometry.hpp"

namespace yamabe {

// --- Schwarzschild annulus -------------------------------------------------
//
// g_{r,m} = (1 + m / (2 |x|^{n-2}))^{4/(n-2)} delta on r <= |x| <= 1.
//
// `exact` evaluates the mean curvatures and energy that follow from the
// conformal change laws. `published` evaluates the commonly quoted closed
// forms, whose inner-sphere term reads (m/r^{n-1} - u) where the change law
// gives (m/r^{n-1} - u/r); the two agree on the outer sphere only.

enum class SchwarzschildVariant { exact, published };

struct SchwarzschildParams {
  int n = 3;
  double r = 0.5;
  double m = 0.0;
};

struct MeanCurvaturePair {
  double inner = 0.0;
  double outer = 0.0;
};

MeanCurvaturePair schwarzschild_mean_curvatures(const SchwarzschildParams& p,
                                                SchwarzschildVariant v = SchwarzschildVariant::exact);

double schwarzschild_energy(const SchwarzschildParams& p,
                            SchwarzschildVariant v = SchwarzschildVariant::exact);

/// 2(n-1)(1 - r^{n-2}) Vol(S^{n-1})^{1/(n-1)} / (1 + r^{n-1})^{(n-2)/(n-1)}.
double euclidean_annulus_energy(int n, double r);

/// m -> infinity limit of schwarzschild_energy. For `exact` this equals
/// euclidean_annulus_energy (inversion in the sphere of radius sqrt(r) maps
/// g_{r,m} to a multiple of g_{r,4r^{n-2}/m}).
double schwarzschild_energy_limit(int n, double r,
                                  SchwarzschildVariant v = SchwarzschildVariant::exact);

/// E(g_{r,m}) by quadrature of the definition: conformal change laws applied
/// to the factor, then yamabe_energy.
EnergyReport schwarzschild_pipeline_energy(const SchwarzschildParams& p, int order = 8);

struct ThresholdReport {
  double m0 = 0.0;
  double euclidean_energy = 0.0;
  double probe_min = 0.0;
  double probe_max = 0.0;
  int probes = 0;
  /// E(g_{r,m}) > E(delta) at every probed m > m0.
  bool certified = false;
};

/// Smallest m0 such that E(g_{r,m}) > E(delta|A) for every probed m in
/// [m0, probe_max], from a log grid on [1e-8, probe_max] refined by
/// bisection to `tol`. NotFoundError when E(g_{r,m}) <= E(delta) at the top
/// of the probe range.
ThresholdReport find_m0(int n, double r, double tol,
                        SchwarzschildVariant v = SchwarzschildVariant::exact,
                        double probe_max = 1e8);

// --- Escobar family ----------------------------------------------------------
//
// u_a(x) = [2/(n-2) (1 - |a|^2) / (1 + |a|^2 |x|^2 - 2 x.a)]^{(n-2)/2},
// harmonic in the unit ball with du/dnu + (n-2)/2 u = ((n-2)/2)^2 u^{n/(n-2)}
// on the sphere.

struct EscobarSample {
  double value = 0.0;
  std::vector<double> gradient;  // Cartesian
  double laplacian = 0.0;
};

double escobar_solution(const std::vector<double>& a, const std::vector<double>& x);
EscobarSample escobar_sample(const std::vector<double>& a, const std::vector<double>& x);

/// u_a as a closed-form factor in R^3.
ConformalFactor escobar_factor(const Vec3& a);

struct EscobarResidual {
  double interior = 0.0;  // max |lap u_a|
  double boundary = 0.0;  // max boundary-equation residual
};

/// Residuals on the nodes of an order-`order` grid of the unit ball (the S^2
/// grid embedded in the first three coordinates when n > 3).
EscobarResidual escobar_residual(const std::vector<double>& a, int order = 12);

/// Q_delta(u_a) on the unit ball of R^3 by quadrature.
double escobar_quotient(const Vec3& a, int order = 48);

// --- bump ball ---------------------------------------------------------------

struct BumpDemo {
  double max_defect = 0.0;
  double argmax = 0.0;
  std::vector<std::pair<double, double>> profile;  // (polar angle, defect)
};

/// Umbilicity defect of r = 1 + phi(polar) sampled at `samples` polar angles
/// strictly inside (0, pi).
BumpDemo bump_ball_demo(double amplitude, double width, int samples = 181);

}  // namespace yamabe
