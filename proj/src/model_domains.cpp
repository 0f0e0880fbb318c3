#include "yamabe/model_domains.hpp"

#include <cmath>
#include <sstream>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

void require_positive(double u, const char* what) {
  if (!(u > 0.0)) {
    std::ostringstream msg;
    msg << what << ": conformal factor value " << u << " is not positive";
    throw DomainError(msg.str());
  }
}

void require_dimension(int n) {
  if (n < 3) throw PreconditionError("dimension must be >= 3");
}

template <class F>
std::vector<double> pointwise(std::span<const double> base, std::span<const double> u,
                              std::span<const double> deriv, const char* what, F&& f) {
  if (base.size() != u.size() || deriv.size() != u.size())
    throw PreconditionError(std::string(what) + ": field sizes differ");
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      std::ostringstream msg;
      msg << what << ": conformal factor value " << u[i] << " at node " << i << " is not positive";
      throw DomainError(msg.str());
    }
    out[i] = f(base[i], u[i], deriv[i]);
  }
  return out;
}

}  // namespace

double conformal_scalar_curvature(double r_base, double u, double laplacian_u, int n) {
  require_dimension(n);
  require_positive(u, "scalar curvature");
  const double k = 4.0 * (n - 1) / (n - 2);
  return std::pow(u, -(n + 2.0) / (n - 2)) * (-k * laplacian_u + r_base * u);
}

double conformal_mean_curvature(double h_base, double u, double normal_derivative_u, int n) {
  require_dimension(n);
  require_positive(u, "mean curvature");
  const double k = 2.0 * (n - 1) / (n - 2);
  return std::pow(u, -static_cast<double>(n) / (n - 2)) * (k * normal_derivative_u + h_base * u);
}

MeasureScales conformal_measures(double u, int n) {
  require_dimension(n);
  require_positive(u, "measures");
  return {std::pow(u, 2.0 * n / (n - 2)), std::pow(u, 2.0 * (n - 1) / (n - 2))};
}

std::vector<double> conformal_scalar_curvature(std::span<const double> r_base,
                                               std::span<const double> u,
                                               std::span<const double> laplacian_u, int n) {
  require_dimension(n);
  return pointwise(r_base, u, laplacian_u, "scalar curvature",
                   [n](double r, double v, double lap) { return conformal_scalar_curvature(r, v, lap, n); });
}

std::vector<double> conformal_mean_curvature(std::span<const double> h_base,
                                             std::span<const double> u,
                                             std::span<const double> normal_derivative_u, int n) {
  require_dimension(n);
  return pointwise(h_base, u, normal_derivative_u, "mean curvature",
                   [n](double h, double v, double dn) { return conformal_mean_curvature(h, v, dn, n); });
}

// --- metric data -----------------------------------------------------------

MetricData euclidean_metric(const Domain& domain) {
  if (domain.kind() == DomainKind::bump_ball)
    throw PreconditionError("metric data is available on balls and annuli only");
  const int n = domain.dimension();
  MetricData m;
  m.dimension = n;
  m.scalar_curvature = [](const Point&) { return 0.0; };
  for (const auto& c : domain.boundary_components()) {
    const double h = c.orientation * (n - 1) / c.radius;
    m.mean_curvature.push_back([h](const Point&) { return h; });
  }
  m.volume_scale = [](const Point&) { return 1.0; };
  m.area_scale = [](const Point&) { return 1.0; };
  m.euclidean_interior = true;
  return m;
}

MetricData with_boundary_curvature(const Domain& domain, std::span<const double> mean_curvature) {
  MetricData m = euclidean_metric(domain);
  if (mean_curvature.size() != m.mean_curvature.size())
    throw PreconditionError("one mean curvature value per boundary component is required");
  for (std::size_t c = 0; c < mean_curvature.size(); ++c) {
    const double h = mean_curvature[c];
    m.mean_curvature[c] = [h](const Point&) { return h; };
  }
  return m;
}

MetricData conformal_metric(const Domain& domain, const ConformalFactor& u) {
  const MetricData base = euclidean_metric(domain);
  const int n = domain.dimension();
  if (u.dimension() != n) throw PreconditionError("conformal factor dimension differs from domain");
  MetricData m;
  m.dimension = n;
  m.scalar_curvature = [u, n](const Point& p) {
    const FieldSample s = u.sample(p);
    return conformal_scalar_curvature(0.0, s.value, s.laplacian, n);
  };
  const auto& comps = domain.boundary_components();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const double orientation = comps[c].orientation;
    const double h0 = orientation * (n - 1) / comps[c].radius;
    m.mean_curvature.push_back([u, n, orientation, h0](const Point& p) {
      const FieldSample s = u.sample(p);
      return conformal_mean_curvature(h0, s.value, orientation * s.gradient[0], n);
    });
  }
  m.volume_scale = [u, n](const Point& p) { return conformal_measures(u.value(p), n).volume; };
  m.area_scale = [u, n](const Point& p) { return conformal_measures(u.value(p), n).area; };
  return m;
}

MetricData rescaled_metric(const MetricData& metric, double c) {
  if (!(c > 0.0)) throw PreconditionError("rescaling constant must be positive");
  const int n = metric.dimension;
  MetricData m = metric;
  m.euclidean_interior = metric.euclidean_interior && c == 1.0;
  m.scalar_curvature = [f = metric.scalar_curvature, c](const Point& p) { return f(p) / c; };
  for (auto& h : m.mean_curvature)
    h = [f = h, s = 1.0 / std::sqrt(c)](const Point& p) { return s * f(p); };
  m.volume_scale = [f = metric.volume_scale, s = std::pow(c, 0.5 * n)](const Point& p) {
    return s * f(p);
  };
  m.area_scale = [f = metric.area_scale, s = std::pow(c, 0.5 * (n - 1))](const Point& p) {
    return s * f(p);
  };
  return m;
}

// --- second fundamental forms ----------------------------------------------

SecondFundamentalForm second_fundamental_form_revolution(const BumpProfile& profile, double polar,
                                                         double base_radius) {
  const double s = std::sin(polar), c = std::cos(polar);
  if (!(s > 1e-12)) throw PreconditionError("surface-of-revolution frame degenerates at the poles");
  const double rho = base_radius + profile.value(polar);
  const double d1 = profile.first_derivative(polar);
  const double d2 = profile.second_derivative(polar);
  const double w = std::hypot(rho, d1);

  SecondFundamentalForm f;
  f.induced_metric = Eigen::MatrixXd::Zero(2, 2);
  f.induced_metric(0, 0) = rho * rho + d1 * d1;
  f.induced_metric(1, 1) = rho * rho * s * s;
  f.second_form = Eigen::MatrixXd::Zero(2, 2);
  f.second_form(0, 0) = (rho * rho + 2.0 * d1 * d1 - rho * d2) / w;
  f.second_form(1, 1) = rho * s * (rho * s - d1 * c) / w;
  return f;
}

SecondFundamentalForm round_sphere_form(int n, double radius, double orientation) {
  require_dimension(n);
  if (!(radius > 0.0)) throw PreconditionError("sphere radius must be positive");
  SecondFundamentalForm f;
  f.induced_metric = Eigen::MatrixXd::Identity(n - 1, n - 1);
  f.second_form = (orientation / radius) * f.induced_metric;
  return f;
}

SecondFundamentalForm conformal_second_fundamental_form(const SecondFundamentalForm& sff,
                                                        double u, double normal_derivative_u,
                                                        int n) {
  require_dimension(n);
  require_positive(u, "second fundamental form");
  SecondFundamentalForm out;
  out.induced_metric = std::pow(u, 4.0 / (n - 2)) * sff.induced_metric;
  out.second_form = std::pow(u, 2.0 / (n - 2)) *
                    (sff.second_form + (2.0 / (n - 2)) * (normal_derivative_u / u) * sff.induced_metric);
  return out;
}

namespace {

// Shape operator in an orthonormal frame: L^{-1} II L^{-T} with g = L L^T.
Eigen::MatrixXd orthonormal_shape(const SecondFundamentalForm& sff) {
  const Eigen::LLT<Eigen::MatrixXd> llt(sff.induced_metric);
  if (llt.info() != Eigen::Success) throw DomainError("induced metric is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  const Eigen::MatrixXd a = l.triangularView<Eigen::Lower>().solve(sff.second_form);
  Eigen::MatrixXd shape = l.triangularView<Eigen::Lower>().solve(a.transpose()).transpose();
  return 0.5 * (shape + shape.transpose());
}

}  // namespace

std::vector<double> principal_curvatures(const SecondFundamentalForm& sff) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(orthonormal_shape(sff),
                                                          Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double umbilicity_defect(const SecondFundamentalForm& sff) {
  Eigen::MatrixXd a = orthonormal_shape(sff);
  const double mean = a.trace() / static_cast<double>(a.rows());
  a.diagonal().array() -= mean;
  return a.norm();
}

}  // namespace yamabe
