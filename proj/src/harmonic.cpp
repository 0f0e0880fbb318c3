#include "yamabe/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yamabe/discretization.hpp"
#include "yamabe/errors.hpp"

namespace yamabe {

ConformalFactor harmonic_extension(const BoundaryTrace& trace) {
  return ConformalFactor::harmonic(trace);
}

double dirichlet_energy(const BoundaryTrace& trace) {
  const RadialModes modes(trace.domain());
  const bool annulus = trace.components() > 1;
  std::vector<double> terms(trace.modes());
  std::array<double, 4> k{};
  int cached = -1;
  for (std::size_t i = 0; i < trace.modes(); ++i) {
    const int l = SphericalHarmonicBasis::degree_order(i).first;
    if (l != cached) {
      k = modes.dirichlet_form(l);
      cached = l;
    }
    const double a = trace.coefficients(0)[i];
    const double b = annulus ? trace.coefficients(1)[i] : 0.0;
    terms[i] = k[0] * a * a + 2.0 * k[1] * a * b + k[3] * b * b;
  }
  return std::max(0.0, QuadratureGrid::reduce(terms));
}

long harmonic_multiplicity(int n, int l) {
  if (n < 2 || l < 0) throw PreconditionError("harmonic multiplicity needs n >= 2 and l >= 0");
  // Homogeneous polynomials of degree l minus those of degree l - 2.
  auto binom = [](int top, int k) {
    if (k < 0 || top < k) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (top - k + i) / i;
    return b;
  };
  return std::lround(binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1));
}

SteklovSpectrum steklov_spectrum(const Domain& domain, int l_max) {
  if (l_max < 0) throw PreconditionError("l_max must be >= 0");
  const RadialModes modes(domain);
  const int n = domain.dimension();
  SteklovSpectrum s;
  s.l_max = l_max;
  for (int l = 0; l <= l_max; ++l)
    for (double v : modes.steklov_eigenvalues(l))
      s.eigenvalues.push_back({v, harmonic_multiplicity(n, l), l});
  std::stable_sort(s.eigenvalues.begin(), s.eigenvalues.end(),
                   [](const SteklovEigenvalue& a, const SteklovEigenvalue& b) { return a.value < b.value; });
  s.certified_below = modes.steklov_eigenvalues(l_max + 1).front();
  return s;
}

NondegeneracyReport nondegeneracy_check(double mean_curvature, const SteklovSpectrum& spectrum,
                                        int n, double tol) {
  if (n < 3) throw PreconditionError("dimension must be >= 3");
  if (!(tol >= 0.0)) throw PreconditionError("tolerance must be nonnegative");
  NondegeneracyReport r;
  r.target = mean_curvature / (n - 1);
  r.distance = std::numeric_limits<double>::infinity();
  for (const auto& e : spectrum.eigenvalues) r.distance = std::min(r.distance, std::abs(e.value - r.target));
  if (mean_curvature == 0.0)
    r.verdict = Nondegeneracy::non_degenerate;
  else if (r.distance <= tol)
    r.verdict = Nondegeneracy::degenerate;
  else if (r.target < spectrum.certified_below - tol)
    r.verdict = Nondegeneracy::non_degenerate;
  else
    r.verdict = Nondegeneracy::inconclusive;
  return r;
}

const char* to_string(Nondegeneracy v) {
  switch (v) {
    case Nondegeneracy::non_degenerate: return "non_degenerate";
    case Nondegeneracy::degenerate: return "degenerate";
    case Nondegeneracy::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace yamabe
