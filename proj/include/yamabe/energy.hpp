#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yamabe/boundary_trace.hpp"
#include "yamabe/conformal_factor.hpp"
#include "yamabe/discretization.hpp"
#include "yamabe/model_domains.hpp"

namespace yamabe {

struct EnergyReport {
  double numerator_interior = 0.0;  // int R dV
  double numerator_boundary = 0.0;  // 2 int H dA
  double boundary_volume = 0.0;
  double energy = 0.0;
};

/// E(g) = (int R dV + 2 int H dA) / Vol(dM)^{(n-2)/(n-1)} by quadrature.
EnergyReport yamabe_energy(const MetricData& metric, const DomainGrids& grids);

/// Pieces of Q_g(phi): value = (dirichlet + interior + boundary) /
/// boundary_norm^{(n-2)/(n-1)} with boundary_norm = int |phi|^tau dA.
struct QuotientParts {
  double dirichlet = 0.0;  // 4(n-1)/(n-2) int |grad phi|^2 dV
  double interior = 0.0;   // int R phi^2 dV
  double boundary = 0.0;   // 2 int H phi^2 dA
  double boundary_norm = 0.0;
  double value = 0.0;
};

/// Q_g of the harmonic extension of `phi`. With a Euclidean interior the
/// gradient term is the closed-form Dirichlet energy; otherwise it is
/// integrated on the volume grid.
QuotientParts boundary_quotient(const MetricData& metric, const BoundaryTrace& phi,
                                const DomainGrids& grids);

/// Q_g of an arbitrary function given by value and gradient samples.
QuotientParts boundary_quotient(const MetricData& metric, const SampleFunction& phi,
                                const DomainGrids& grids);

/// Node values of a trace on each boundary grid.
std::vector<std::vector<double>> trace_values(const BoundaryTrace& phi, const DomainGrids& grids);

/// ||H^-||_{L^{n-1}(dM, g)} with H^- = max(-H, 0).
double negative_part_norm(const MetricData& metric, const DomainGrids& grids);

/// Discrete CR data on a (2n+1)-dimensional manifold: quadrature weights
/// dV_theta and Webster curvature R_theta, optionally a conformal factor u and
/// its horizontal gradient norm.
struct CRData {
  int n = 1;
  std::vector<double> weight;
  std::vector<double> curvature;
  std::optional<std::vector<double>> u;
  std::optional<std::vector<double>> grad_norm;
};

/// Reads columns weight, R and optionally u, grad_norm (header row required).
CRData load_cr_csv(const std::string& path, int n);
CRData parse_cr_csv(const std::string& text, int n);

/// E(theta) = int R dV / Vol^{n/(n+1)}.
double cr_energy(const CRData& data);

/// int ((2 + 2/n) |grad u|^2 + R u^2) dV / (int u^{2+2/n} dV)^{n/(n+1)}.
double cr_quotient(const CRData& data);

}  // namespace yamabe
