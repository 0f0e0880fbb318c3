#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yamabe/discretization.hpp"
#include "yamabe/model_domains.hpp"

namespace yamabe {

struct Hypothesis {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

/// Verdict of a sufficient-condition check. Failing hypotheses give
/// "inconclusive", never a negative answer.
struct TheoremReport {
  std::string theorem;
  std::vector<Hypothesis> hypotheses;
  std::string branch;
  std::string conclusion;
};

/// {theorem, hypotheses: [{name, value, bound, satisfied}], branch, conclusion}
std::string to_json(const TheoremReport& report, int indent = 2);

/// Summarized data of a pair (g, h) for the comparison theorem: g is the
/// type II Yamabe metric, h the candidate.
struct Theorem1Input {
  int n = 3;
  double gamma = 1.0;            // Vol(M, h) / Vol(M, g)
  double area_constant = 1.0;    // C with dA_g <= C^{(n-1)/2} dA_h
  double mean_curvature_g = 1.0;
  double mean_curvature_h = 1.0;
  double metric_ratio_sup = 1.0;  // sup of H_h h relative to H_g g
  bool area_equality = false;     // dA_g = (H_h/H_g)^{(n-1)/2} dA_h
};

/// Bound on C: min{gamma^{-2/(n-1)}, (H_h/H_g)^{(2n-3)/(n-2)} gamma^{2/(n-2)}}.
double theorem1_area_bound(const Theorem1Input& in);

TheoremReport check_theorem1(const Theorem1Input& in);

/// Equal-volume corollary. density_margin is the sup over dM of
/// sqrt(det g|dM) H_g^e - sqrt(det h|dM) H_h^e, e = (n-1)(2n-3)/(2(n-2)).
/// Its conclusion is Theorem 1's with gamma = 1 and
/// C = (H_h/H_g)^{(2n-3)/(n-2)}, so the metric ratio is needed as well.
TheoremReport check_corollary_volume(int n, bool volume_equal, double mean_curvature_g,
                                     double mean_curvature_h, double density_margin,
                                     double metric_ratio_sup);

/// Uniqueness of scalar-flat metrics with nonpositive constant mean
/// curvature of the same sign. H samples are the values of each metric's
/// mean curvature at boundary nodes (all components).
struct NonpositiveReport {
  bool applicable = false;
  bool scalar_flat = false;
  bool constant_h = false;
  bool constant_hbar = false;
  bool same_sign = false;
  double mean_curvature_h = 0.0;
  double mean_curvature_hbar = 0.0;
  std::string conclusion;  // unique_up_to_rescaling | not_applicable
};

NonpositiveReport check_nonpositive_uniqueness(double scalar_curvature_max_abs,
                                               const std::vector<double>& h_values,
                                               const std::vector<double>& hbar_values,
                                               double tol = 1e-10);

struct CherrierResult {
  double lhs = 0.0;
  bool satisfied = false;  // lhs < 1
};

/// (sigma/tau) sup v' (C^2 mu)^{tau/2} with sigma = 2n/(n-2), tau = 2(n-1)/(n-2).
CherrierResult cherrier_condition(int n, double sup_v_prime, double c_bound, double mu);

/// Constant-v' test on the unit ball (v = n - 1, v' = c): the constant test
/// function phi0, the Beckner bound on C(n-1, tau, g0), the resulting upper
/// bound on mu and the chain value, which does not depend on c.
struct CherrierBallBound {
  int n = 0;
  double c = 1.0;
  double phi0 = 0.0;
  double beckner_bound = 0.0;
  double mu_upper = 0.0;
  double value = 0.0;        // chain evaluated step by step
  double closed_form = 0.0;  // Gamma-function form
  std::optional<double> reference_bound;  // displayed constants for n = 4, 5, 6
  bool below_one = false;
  bool within_reference = true;
};

CherrierBallBound cherrier_ball_bound(int n, double c = 1.0);

/// Displayed upper bounds: 3/pi, (2^10/(3^6 pi^2))^{1/3}, (3 5^4/(2^9 pi^3))^{1/4}.
std::optional<double> cherrier_reference_bound(int n);

/// CR comparison theorem: gamma with dV_{phi* theta} = gamma dV_Theta,
/// constant R_theta, R_Theta > 0, and the sup of R_theta dtheta relative to
/// R_Theta dTheta.
TheoremReport check_cr_theorem(double gamma, double r_theta, double r_Theta, double ratio_sup);

/// Theorem 1 input for two conformally flat metrics on one model domain.
/// H must be constant on dM for both (within tol), else PreconditionError.
Theorem1Input summarize_theorem1(const MetricData& g, const MetricData& h, const DomainGrids& grids,
                                 double tol = 1e-8);

}  // namespace yamabe
