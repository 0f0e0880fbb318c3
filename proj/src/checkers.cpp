#include "yamabe/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "yamabe/errors.hpp"
#include "yamabe/parallel.hpp"

namespace yamabe {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream msg;
    msg << name << " must be positive (got " << v << ")";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

std::string to_json(const TheoremReport& report, int indent) {
  nlohmann::json hyps = nlohmann::json::array();
  for (const auto& h : report.hypotheses)
    hyps.push_back({{"name", h.name}, {"value", h.value}, {"bound", h.bound}, {"satisfied", h.satisfied}});
  const nlohmann::json j = {{"theorem", report.theorem},
                            {"hypotheses", hyps},
                            {"branch", report.branch},
                            {"conclusion", report.conclusion}};
  return j.dump(indent);
}

double theorem1_area_bound(const Theorem1Input& in) {
  const int n = in.n;
  return std::min(std::pow(in.gamma, -2.0 / (n - 1)),
                  std::pow(in.mean_curvature_h / in.mean_curvature_g, (2.0 * n - 3) / (n - 2)) *
                      std::pow(in.gamma, 2.0 / (n - 2)));
}

TheoremReport check_theorem1(const Theorem1Input& in) {
  if (in.n < 3) throw PreconditionError("dimension must be >= 3");
  require_positive(in.gamma, "gamma");
  require_positive(in.area_constant, "C");
  require_positive(in.mean_curvature_g, "H_g");
  require_positive(in.mean_curvature_h, "H_h");
  require_positive(in.metric_ratio_sup, "metric ratio sup");

  TheoremReport r;
  r.theorem = "comparison_theorem";
  const double bound = theorem1_area_bound(in);
  const bool c_ok = in.area_constant <= bound;
  r.hypotheses.push_back({"area_constant_bound", in.area_constant, bound, c_ok});
  r.hypotheses.push_back({"area_equality", in.area_equality ? 1.0 : 0.0, 1.0, in.area_equality});
  const bool weak = in.metric_ratio_sup <= 1.0;
  const bool strict = in.metric_ratio_sup < 1.0;
  r.hypotheses.push_back({"H_h h <= H_g g", in.metric_ratio_sup, 1.0, weak});
  r.hypotheses.push_back({"H_h h < H_g g", in.metric_ratio_sup, 1.0, strict});

  r.branch = c_ok ? "C_bound" : (in.area_equality ? "area_equality" : "none");
  const bool area = c_ok || in.area_equality;
  if (area && strict)
    r.conclusion = "unique_type_II_yamabe";
  else if (area && weak)
    r.conclusion = "type_II_yamabe";
  else
    r.conclusion = "inconclusive";
  return r;
}

TheoremReport check_corollary_volume(int n, bool volume_equal, double mean_curvature_g,
                                     double mean_curvature_h, double density_margin,
                                     double metric_ratio_sup) {
  if (!volume_equal) throw PreconditionError("the equal-volume corollary needs Vol(M, h) = Vol(M, g)");
  if (n < 3) throw PreconditionError("dimension must be >= 3");
  require_positive(mean_curvature_g, "H_g");
  require_positive(mean_curvature_h, "H_h");
  require_positive(metric_ratio_sup, "metric ratio sup");

  TheoremReport r;
  r.theorem = "equal_volume_corollary";
  const bool ordered = mean_curvature_g >= mean_curvature_h;
  const bool density = density_margin <= 0.0;
  r.hypotheses.push_back({"H_g >= H_h", mean_curvature_g, mean_curvature_h, ordered});
  r.hypotheses.push_back({"density_condition", density_margin, 0.0, density});
  if (!ordered || !density) {
    const bool weak = metric_ratio_sup <= 1.0;
    r.hypotheses.push_back({"H_h h <= H_g g", metric_ratio_sup, 1.0, weak});
    r.hypotheses.push_back({"H_h h < H_g g", metric_ratio_sup, 1.0, metric_ratio_sup < 1.0});
    r.branch = "none";
    r.conclusion = "inconclusive";
    return r;
  }
  Theorem1Input in;
  in.n = n;
  in.gamma = 1.0;
  in.mean_curvature_g = mean_curvature_g;
  in.mean_curvature_h = mean_curvature_h;
  in.area_constant = std::pow(mean_curvature_h / mean_curvature_g, (2.0 * n - 3) / (n - 2));
  in.metric_ratio_sup = metric_ratio_sup;
  const TheoremReport t = check_theorem1(in);
  r.hypotheses.insert(r.hypotheses.end(), t.hypotheses.begin(), t.hypotheses.end());
  r.branch = t.branch;
  r.conclusion = t.conclusion;
  return r;
}

NonpositiveReport check_nonpositive_uniqueness(double scalar_curvature_max_abs,
                                               const std::vector<double>& h_values,
                                               const std::vector<double>& hbar_values, double tol) {
  NonpositiveReport r;
  if (h_values.empty() || hbar_values.empty()) {
    r.conclusion = "not_applicable";
    return r;
  }
  auto constant = [tol](const std::vector<double>& v, double& mean) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    mean = 0.5 * (*lo + *hi);
    return *hi - *lo <= tol;
  };
  r.scalar_flat = std::abs(scalar_curvature_max_abs) <= tol;
  r.constant_h = constant(h_values, r.mean_curvature_h);
  r.constant_hbar = constant(hbar_values, r.mean_curvature_hbar);
  const bool both_zero = std::abs(r.mean_curvature_h) <= tol && std::abs(r.mean_curvature_hbar) <= tol;
  const bool both_negative = r.mean_curvature_h < -tol && r.mean_curvature_hbar < -tol;
  r.same_sign = both_zero || both_negative;
  r.applicable = r.scalar_flat && r.constant_h && r.constant_hbar && r.same_sign;
  r.conclusion = r.applicable ? "unique_up_to_rescaling" : "not_applicable";
  return r;
}

CherrierResult cherrier_condition(int n, double sup_v_prime, double c_bound, double mu) {
  if (n < 3) throw PreconditionError("dimension must be >= 3");
  require_positive(sup_v_prime, "sup v'");
  require_positive(c_bound, "C(n-1, tau, g0)");
  require_positive(mu, "mu");
  const double sigma = 2.0 * n / (n - 2);
  const double tau = 2.0 * (n - 1) / (n - 2);
  CherrierResult r;
  r.lhs = sigma / tau * sup_v_prime * std::pow(c_bound * c_bound * mu, tau / 2.0);
  r.satisfied = r.lhs < 1.0;
  return r;
}

std::optional<double> cherrier_reference_bound(int n) {
  const double pi = std::numbers::pi;
  switch (n) {
    case 4: return 3.0 / pi;
    case 5: return std::cbrt(std::pow(2.0, 10) / (std::pow(3.0, 6) * pi * pi));
    case 6: return std::pow(3.0 * std::pow(5.0, 4) / (std::pow(2.0, 9) * pi * pi * pi), 0.25);
    default: return std::nullopt;
  }
}

CherrierBallBound cherrier_ball_bound(int n, double c) {
  if (n < 3) throw PreconditionError("dimension must be >= 3");
  require_positive(c, "c");
  const double sigma = 2.0 * n / (n - 2);
  const double tau = 2.0 * (n - 1) / (n - 2);
  const double area = unit_sphere_area(n);
  const double k = (n - 2.0) / (2.0 * (n - 1));

  CherrierBallBound b;
  b.n = n;
  b.c = c;
  // Gamma(phi0) = k (sigma/tau) c int phi0^tau dA = 1
  b.phi0 = std::pow(k * sigma / tau * c * area, -1.0 / tau);
  // phi0 is constant: no gradient term, v = n - 1 on the sphere.
  b.mu_upper = k * (n - 1) * b.phi0 * b.phi0 * area;
  b.beckner_bound = 2.0 / (n - 2) * std::pow(area, -1.0 / (n - 1));
  b.value = sigma / tau * c * std::pow(b.mu_upper, tau / 2.0) * std::pow(b.beckner_bound, tau);
  b.closed_form = 2.0 * (n - 1) / (n - 2) * std::pow(2.0 / (n - 2), (n - 1.0) / (n - 2)) *
                  std::pow(std::tgamma(0.5 * n), 1.0 / (n - 2)) /
                  (std::pow(2.0, 1.0 / (n - 2)) * std::pow(std::numbers::pi, n / (2.0 * (n - 2))));
  b.reference_bound = cherrier_reference_bound(n);
  b.below_one = b.value < 1.0;
  b.within_reference = !b.reference_bound || b.value <= *b.reference_bound;
  return b;
}

TheoremReport check_cr_theorem(double gamma, double r_theta, double r_Theta, double ratio_sup) {
  if (!(r_Theta > 0.0)) throw PreconditionError("the CR comparison theorem needs R_Theta > 0");
  require_positive(gamma, "gamma");
  if (!std::isfinite(r_theta)) throw PreconditionError("R_theta must be finite");
  if (!(ratio_sup >= 0.0) || !std::isfinite(ratio_sup))
    throw PreconditionError("ratio sup must be a nonnegative number");
  TheoremReport r;
  r.theorem = "cr_comparison_theorem";
  r.hypotheses.push_back({"volume_normalization", gamma, 0.0, true});
  r.hypotheses.push_back({"R_Theta > 0", r_Theta, 0.0, true});
  const bool weak = ratio_sup <= 1.0;
  const bool strict = ratio_sup < 1.0;
  r.hypotheses.push_back({"R_theta dtheta <= R_Theta dTheta", ratio_sup, 1.0, weak});
  r.hypotheses.push_back({"R_theta dtheta < R_Theta dTheta", ratio_sup, 1.0, strict});
  r.branch = strict ? "strict" : (weak ? "weak" : "none");
  r.conclusion = strict ? "unique_cr_yamabe" : (weak ? "cr_yamabe" : "inconclusive");
  return r;
}

Theorem1Input summarize_theorem1(const MetricData& g, const MetricData& h, const DomainGrids& grids,
                                 double tol) {
  if (g.dimension != h.dimension) throw PreconditionError("metrics live in different dimensions");
  if (g.mean_curvature.size() != grids.boundary.size() ||
      h.mean_curvature.size() != grids.boundary.size())
    throw PreconditionError("metrics and grids disagree on the boundary components");
  const int n = g.dimension;
  Theorem1Input in;
  in.n = n;

  std::vector<double> vg(grids.volume.size()), vh(grids.volume.size());
  parallel_for(vg.size(), [&](std::size_t i) {
    vg[i] = grids.volume.weights[i] * g.volume_scale(grids.volume.nodes[i]);
    vh[i] = grids.volume.weights[i] * h.volume_scale(grids.volume.nodes[i]);
  });
  in.gamma = pairwise_sum(vh) / pairwise_sum(vg);

  auto constant_h = [&](const MetricData& m, const char* name) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t c = 0; c < grids.boundary.size(); ++c)
      for (const auto& p : grids.boundary[c].nodes) {
        const double v = m.mean_curvature[c](p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    if (hi - lo > tol * std::max(1.0, std::abs(hi)))
      throw PreconditionError(std::string(name) + " is not constant on the boundary");
    const double mean = 0.5 * (lo + hi);
    if (!(mean > 0.0)) throw PreconditionError(std::string(name) + " must be a positive constant");
    return mean;
  };
  in.mean_curvature_g = constant_h(g, "H_g");
  in.mean_curvature_h = constant_h(h, "H_h");

  const double ratio_h = in.mean_curvature_h / in.mean_curvature_g;
  const double target = std::pow(ratio_h, 0.5 * (n - 1));
  double c_sup = 0.0;
  bool equality = true;
  double metric_sup = 0.0;
  for (const auto& bg : grids.boundary)
    for (const auto& p : bg.nodes) {
      const double q = g.area_scale(p) / h.area_scale(p);
      c_sup = std::max(c_sup, std::pow(q, 2.0 / (n - 1)));
      equality = equality && std::abs(q - target) <= tol * target;
      metric_sup = std::max(metric_sup, ratio_h * std::pow(h.volume_scale(p) / g.volume_scale(p), 2.0 / n));
    }
  for (const auto& p : grids.volume.nodes)
    metric_sup = std::max(metric_sup, ratio_h * std::pow(h.volume_scale(p) / g.volume_scale(p), 2.0 / n));
  in.area_constant = c_sup;
  in.area_equality = equality;
  in.metric_ratio_sup = metric_sup;
  return in;
}

}  // namespace yamabe
