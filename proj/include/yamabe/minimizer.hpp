#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "yamabe/boundary_trace.hpp"
#include "yamabe/conformal_factor.hpp"
#include "yamabe/discretization.hpp"
#include "yamabe/model_domains.hpp"

namespace yamabe {

struct MinimizerConfig {
  int l_max = 8;
  /// Boundary/volume quadrature order; 0 picks 2 * l_max + 2.
  int quadrature_order = 0;
  bool backtracking = true;
  double initial_step = 1e-2;
  double armijo_c1 = 1e-4;
  int max_halvings = 60;
  double grad_tol = 1e-8;
  int max_iters = 5000;
  std::uint64_t seed = 0;
  double divergence_floor = -1e6;
};

struct MinimizerResult {
  BoundaryTrace trace;
  double energy = 0.0;
  int iterations = 0;
  std::vector<double> energy_history;
  std::vector<double> grad_norm_history;
  bool converged = false;
  /// Trace and extension positive at every quadrature node.
  bool positive = false;
  /// Set when the line search could not decrease Q any further.
  bool stalled = false;
};

/// Q_g over flattened trace coefficients (component-major) for a metric with
/// Euclidean interior. Boundary integrals use the given grids; the gradient
/// term uses the closed-form Dirichlet energy of the harmonic extension.
class QuotientObjective {
 public:
  QuotientObjective(const Domain& domain, const MetricData& metric, int l_max,
                    const DomainGrids& grids);

  std::size_t size() const { return size_; }
  int dimension() const { return n_; }
  double value(const std::vector<double>& x) const;
  /// Returns Q and writes its full gradient.
  double value_and_gradient(const std::vector<double>& x, std::vector<double>& grad) const;
  /// int |phi|^tau dA and its gradient (the normalization constraint).
  double constraint(const std::vector<double>& x, std::vector<double>* grad = nullptr) const;
  double boundary_volume() const { return boundary_volume_; }

 private:
  struct Parts {
    double numerator = 0.0;
    double denominator = 0.0;
  };
  Parts evaluate(const std::vector<double>& x, std::vector<double>* d_num,
                 std::vector<double>* d_den) const;

  int n_;
  std::size_t modes_;
  std::size_t components_;
  std::size_t size_;
  std::vector<std::array<double, 4>> dirichlet_;  // per flat mode index
  struct ComponentTable {
    std::size_t nodes = 0;
    std::vector<double> basis;      // nodes x modes
    std::vector<double> area;       // w * dA_scale
    std::vector<double> curvature;  // H
  };
  std::vector<ComponentTable> tables_;
  double boundary_volume_ = 0.0;
};

/// Projected gradient descent on Q_g over traces of degree <= l_max with
/// int |phi|^tau dA held at Vol(dM) by exact rescaling.
MinimizerResult minimize_quotient(const Domain& domain, const MetricData& metric,
                                  const BoundaryTrace& init, const MinimizerConfig& config);

/// 1 + amplitude * N(0, 1) perturbations on every non-constant mode
/// (every component), deterministic in `seed`.
BoundaryTrace random_trace(const Domain& domain, int l_max, std::uint64_t seed,
                           double amplitude = 0.1);

/// Independent runs from random_trace(seed_i) with seeds config.seed + i,
/// executed concurrently.
std::vector<MinimizerResult> minimize_multistart(const Domain& domain, const MetricData& metric,
                                                 const MinimizerConfig& config, int starts,
                                                 double amplitude = 0.1);

void write_history_csv(const MinimizerResult& result, std::ostream& out);

struct EulerLagrangeResidual {
  double interior = 0.0;   // max |-(4(n-1)/(n-2)) lap u + R u|
  double boundary = 0.0;   // max |2(n-1)/(n-2) du/dnu + H u - c u^{n/(n-2)}|
  double constant = 0.0;   // best-fit c
  double mean_curvature_spread = 0.0;  // max |H_bar - mean H_bar|
  double mean_curvature = 0.0;         // area-weighted mean of H_bar
};

/// Residuals of the Euler-Lagrange system for u on the nodes of `grids`.
EulerLagrangeResidual euler_lagrange_residual(const Domain& domain, const MetricData& metric,
                                              const SampleFunction& u, const DomainGrids& grids);
EulerLagrangeResidual euler_lagrange_residual(const Domain& domain, const MetricData& metric,
                                              const BoundaryTrace& trace, const DomainGrids& grids);

struct RatioReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double spread = 0.0;  // max / min - 1
};

/// Ratio of two positive harmonic extensions over every grid node.
RatioReport uniqueness_experiment(const BoundaryTrace& a, const BoundaryTrace& b,
                                  const DomainGrids& grids);

}  // namespace yamabe
