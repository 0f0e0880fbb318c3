#pragma once

#include <vector>

#include "yamabe/boundary_trace.hpp"
#include "yamabe/conformal_factor.hpp"

namespace yamabe {

/// Harmonic function on a ball or annulus with the given boundary trace.
ConformalFactor harmonic_extension(const BoundaryTrace& trace);

/// Dirichlet energy of the harmonic extension, summed mode by mode from the
/// closed-form per-degree quadratic forms.
double dirichlet_energy(const BoundaryTrace& trace);

struct SteklovEigenvalue {
  double value = 0.0;
  long multiplicity = 0;
  int degree = 0;
};

struct SteklovSpectrum {
  std::vector<SteklovEigenvalue> eigenvalues;  // ascending
  int l_max = 0;
  /// Every eigenvalue below this value appears in `eigenvalues`.
  double certified_below = 0.0;
};

/// Dimension of degree-l spherical harmonics on S^{n-1}.
long harmonic_multiplicity(int n, int l);

/// Dirichlet-to-Neumann eigenvalues of degrees 0..l_max. Relies on the lowest
/// eigenvalue of each degree increasing with the degree.
SteklovSpectrum steklov_spectrum(const Domain& domain, int l_max);

enum class Nondegeneracy { non_degenerate, degenerate, inconclusive };

struct NondegeneracyReport {
  Nondegeneracy verdict = Nondegeneracy::inconclusive;
  double target = 0.0;    // H / (n - 1)
  double distance = 0.0;  // to the nearest computed eigenvalue
};

/// Constant-H scalar-flat metrics are non-degenerate when H = 0 or
/// H/(n-1) is not a Steklov eigenvalue. Targets at or above the certified
/// range are inconclusive.
NondegeneracyReport nondegeneracy_check(double mean_curvature, const SteklovSpectrum& spectrum,
                                        int n, double tol = 1e-9);

const char* to_string(Nondegeneracy v);

}  // namespace yamabe
