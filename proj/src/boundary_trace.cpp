#include "yamabe/boundary_trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "yamabe/discretization.hpp"
#include "yamabe/errors.hpp"

namespace yamabe {

BoundaryTrace::BoundaryTrace(const Domain& domain, int l_max) : domain_(domain), l_max_(l_max) {
  if (domain.kind() == DomainKind::bump_ball)
    throw PreconditionError("boundary traces are defined on balls and annuli only");
  if (l_max < 0) throw PreconditionError("l_max must be >= 0");
  if (!domain.angular() && l_max != 0)
    throw PreconditionError("dimension != 3 supports radial traces only (l_max = 0)");
  coeffs_.assign(domain.boundary_components().size(), std::vector<double>(modes(), 0.0));
}

BoundaryTrace BoundaryTrace::constant(const Domain& domain, double value, int l_max) {
  BoundaryTrace t(domain, l_max);
  const double y00 = 1.0 / std::sqrt(domain.angular() ? 4.0 * std::numbers::pi : unit_sphere_area(domain.dimension()));
  for (std::size_t c = 0; c < t.components(); ++c) t.at(c, 0, 0) = value / y00;
  return t;
}

double& BoundaryTrace::at(std::size_t component, int l, int m) {
  if (l < 0 || l > l_max_ || m < -l || m > l) throw PreconditionError("trace index out of range");
  return coeffs_.at(component)[SphericalHarmonicBasis::index(l, m)];
}

double BoundaryTrace::at(std::size_t component, int l, int m) const {
  if (l < 0 || l > l_max_ || m < -l || m > l) throw PreconditionError("trace index out of range");
  return coeffs_.at(component)[SphericalHarmonicBasis::index(l, m)];
}

std::vector<double> BoundaryTrace::flatten() const {
  std::vector<double> flat;
  flat.reserve(coeffs_.size() * modes());
  for (const auto& c : coeffs_) flat.insert(flat.end(), c.begin(), c.end());
  return flat;
}

void BoundaryTrace::assign(std::span<const double> flat) {
  if (flat.size() != coeffs_.size() * modes())
    throw PreconditionError("trace assignment: coefficient count mismatch");
  for (std::size_t c = 0; c < coeffs_.size(); ++c)
    std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(c * modes()), modes(), coeffs_[c].begin());
}

bool BoundaryTrace::is_zero() const {
  for (const auto& c : coeffs_)
    for (double v : c)
      if (v != 0.0) return false;
  return true;
}

BoundaryTrace BoundaryTrace::resized(int l_max) const {
  BoundaryTrace out(domain_, l_max);
  const std::size_t keep = std::min(modes(), out.modes());
  for (std::size_t c = 0; c < coeffs_.size(); ++c)
    std::copy_n(coeffs_[c].begin(), keep, out.coeffs_[c].begin());
  return out;
}

// --- radial modes ----------------------------------------------------------

RadialModes::RadialModes(const Domain& domain)
    : n_(domain.dimension()),
      ball_(domain.kind() == DomainKind::ball),
      r_in_(domain.inner_radius()),
      r_out_(domain.outer_radius()) {
  if (domain.kind() == DomainKind::bump_ball)
    throw PreconditionError("radial modes exist on balls and annuli only");
}

RadialModes::Amplitudes RadialModes::solve(int l, double outer, double inner) const {
  if (ball_) return {outer, 0.0};
  const double rho = r_in_ / r_out_;
  const double pl = std::pow(rho, l);
  const double qk = std::pow(rho, l + n_ - 2);
  const double det = 1.0 - pl * qk;
  if (!(det > 0.0)) throw Error("singular radial interpolation system");
  return {(outer - qk * inner) / det, (inner - pl * outer) / det};
}

RadialValue RadialModes::evaluate(int l, const Amplitudes& a, double r) const {
  RadialValue v;
  if (r == 0.0) {
    if (!ball_) throw PreconditionError("r = 0 is outside the annulus");
    v.f = l == 0 ? a.p : 0.0;
    v.df = l == 1 ? a.p / r_out_ : 0.0;
    v.d2f = l == 2 ? 2.0 * a.p / (r_out_ * r_out_) : 0.0;
    v.f_over_r = l == 1 ? a.p / r_out_ : 0.0;
    return v;
  }
  const double p = std::pow(r / r_out_, l);
  v.f = a.p * p;
  v.df = a.p * l * p / r;
  v.d2f = a.p * l * (l - 1.0) * p / (r * r);
  if (!ball_) {
    const double k = l + n_ - 2.0;
    const double q = std::pow(r_in_ / r, k);
    v.f += a.q * q;
    v.df -= a.q * k * q / r;
    v.d2f += a.q * k * (k + 1.0) * q / (r * r);
  }
  v.f_over_r = v.f / r;
  return v;
}

std::array<double, 4> RadialModes::dirichlet_form(int l) const {
  if (ball_) return {std::pow(r_out_, n_ - 2) * l, 0.0, 0.0, 0.0};
  // Columns of the Dirichlet-to-Neumann map on (outer, inner) traces, with
  // outward normals (+d/dr outside, -d/dr inside).
  std::array<double, 4> dtn{};
  for (int j = 0; j < 2; ++j) {
    const Amplitudes a = j == 0 ? solve(l, 1.0, 0.0) : solve(l, 0.0, 1.0);
    dtn[0 * 2 + j] = evaluate(l, a, r_out_).df;
    dtn[1 * 2 + j] = -evaluate(l, a, r_in_).df;
  }
  const double w_out = std::pow(r_out_, n_ - 1);
  const double w_in = std::pow(r_in_, n_ - 1);
  const double k00 = w_out * dtn[0];
  const double k11 = w_in * dtn[3];
  const double k01 = 0.5 * (w_out * dtn[1] + w_in * dtn[2]);
  return {k00, k01, k01, k11};
}

std::vector<double> RadialModes::steklov_eigenvalues(int l) const {
  if (ball_) return {static_cast<double>(l) / r_out_};
  const auto k = dirichlet_form(l);
  // Generalized problem K v = lambda W v with W the boundary area weights.
  const double s_out = 1.0 / std::sqrt(std::pow(r_out_, n_ - 1));
  const double s_in = 1.0 / std::sqrt(std::pow(r_in_, n_ - 1));
  const double a = k[0] * s_out * s_out;
  const double b = k[1] * s_out * s_in;
  const double d = k[3] * s_in * s_in;
  const double mean = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), b);
  double lo = mean - rad;
  // degree 0 carries the constants; cancellation can leave -1e-17
  if (lo < 0.0 && lo > -1e-12 * (std::abs(mean) + 1.0)) lo = 0.0;
  return {lo, mean + rad};
}

}  // namespace yamabe
