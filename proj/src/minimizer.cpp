#include "yamabe/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "yamabe/energy.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/harmonic.hpp"
#include "yamabe/parallel.hpp"

namespace yamabe {

namespace {

double tau(int n) { return 2.0 * (n - 1) / (n - 2); }

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = a[i] * b[i];
  return pairwise_sum(t);
}

void require_flat(const MetricData& metric, const DomainGrids& grids) {
  if (metric.euclidean_interior) return;
  for (const auto& p : grids.volume.nodes) {
    const double r = metric.scalar_curvature(p);
    if (std::abs(r) > 1e-10) {
      std::ostringstream msg;
      msg << "minimization over harmonic traces needs a scalar-flat metric; R = " << r
          << " at r = " << p.radius;
      throw PreconditionError(msg.str());
    }
  }
  throw PreconditionError(
      "minimization needs flat interior data (R = 0, unit measure scales); a scalar-flat "
      "conformal metric w^{4/(n-2)} delta has the same type II constant as delta");
}

int effective_order(const MinimizerConfig& c) {
  return c.quadrature_order > 0 ? c.quadrature_order : 2 * c.l_max + 2;
}

}  // namespace

// --- objective -------------------------------------------------------------

QuotientObjective::QuotientObjective(const Domain& domain, const MetricData& metric, int l_max,
                                     const DomainGrids& grids)
    : n_(domain.dimension()),
      modes_(static_cast<std::size_t>((l_max + 1) * (l_max + 1))),
      components_(domain.boundary_components().size()),
      size_(modes_ * components_) {
  require_flat(metric, grids);
  if (grids.boundary.size() != components_)
    throw PreconditionError("grids do not match the domain's boundary components");
  const RadialModes radial(domain);
  dirichlet_.resize(modes_);
  for (std::size_t k = 0; k < modes_; ++k)
    dirichlet_[k] = radial.dirichlet_form(SphericalHarmonicBasis::degree_order(k).first);

  const SphericalHarmonicBasis basis(l_max, n_);
  for (std::size_t c = 0; c < components_; ++c) {
    const auto& g = grids.boundary[c];
    const SphericalTransform transform(basis, g);
    ComponentTable t;
    t.nodes = g.size();
    t.basis.resize(t.nodes * modes_);
    t.area.resize(t.nodes);
    t.curvature.resize(t.nodes);
    for (std::size_t i = 0; i < t.nodes; ++i) {
      for (std::size_t k = 0; k < modes_; ++k) t.basis[i * modes_ + k] = transform.basis_value(i, k);
      t.area[i] = g.weights[i] * metric.area_scale(g.nodes[i]);
      t.curvature[i] = metric.mean_curvature[c](g.nodes[i]);
    }
    boundary_volume_ += pairwise_sum(t.area);
    tables_.push_back(std::move(t));
  }
}

QuotientObjective::Parts QuotientObjective::evaluate(const std::vector<double>& x,
                                                     std::vector<double>* d_num,
                                                     std::vector<double>* d_den) const {
  if (x.size() != size_) throw PreconditionError("objective: coefficient count mismatch");
  const double k = 4.0 * (n_ - 1) / (n_ - 2);
  const double t = tau(n_);
  Parts p;
  if (d_num) d_num->assign(size_, 0.0);
  if (d_den) d_den->assign(size_, 0.0);

  std::vector<double> dir(modes_);
  for (std::size_t m = 0; m < modes_; ++m) {
    const auto& K = dirichlet_[m];
    const double a = x[m];
    const double b = components_ > 1 ? x[modes_ + m] : 0.0;
    dir[m] = K[0] * a * a + 2.0 * K[1] * a * b + K[3] * b * b;
    if (d_num) {
      (*d_num)[m] += 2.0 * k * (K[0] * a + K[1] * b);
      if (components_ > 1) (*d_num)[modes_ + m] += 2.0 * k * (K[1] * a + K[3] * b);
    }
  }
  std::vector<double> num_terms{k * pairwise_sum(dir)};
  std::vector<double> den_terms;

  for (std::size_t c = 0; c < components_; ++c) {
    const auto& tb = tables_[c];
    const double* xc = x.data() + c * modes_;
    std::vector<double> curv(tb.nodes), norm(tb.nodes), f(tb.nodes);
    for (std::size_t i = 0; i < tb.nodes; ++i) {
      const double* row = tb.basis.data() + i * modes_;
      double v = 0.0;
      for (std::size_t m = 0; m < modes_; ++m) v += row[m] * xc[m];
      f[i] = v;
      curv[i] = 2.0 * tb.area[i] * tb.curvature[i] * v * v;
      norm[i] = tb.area[i] * std::pow(std::abs(v), t);
    }
    num_terms.push_back(pairwise_sum(curv));
    den_terms.push_back(pairwise_sum(norm));
    if (d_num || d_den) {
      for (std::size_t i = 0; i < tb.nodes; ++i) {
        const double* row = tb.basis.data() + i * modes_;
        const double v = f[i];
        const double gn = 4.0 * tb.area[i] * tb.curvature[i] * v;
        const double gd = t * tb.area[i] * std::pow(std::abs(v), t - 2.0) * v;
        for (std::size_t m = 0; m < modes_; ++m) {
          if (d_num) (*d_num)[c * modes_ + m] += gn * row[m];
          if (d_den) (*d_den)[c * modes_ + m] += gd * row[m];
        }
      }
    }
  }
  p.numerator = pairwise_sum(num_terms);
  p.denominator = pairwise_sum(den_terms);
  return p;
}

double QuotientObjective::value(const std::vector<double>& x) const {
  const Parts p = evaluate(x, nullptr, nullptr);
  if (!(p.denominator > 0.0)) throw DomainError("trace vanishes on the boundary");
  return p.numerator / std::pow(p.denominator, (n_ - 2.0) / (n_ - 1.0));
}

double QuotientObjective::value_and_gradient(const std::vector<double>& x,
                                             std::vector<double>& grad) const {
  std::vector<double> dn, dd;
  const Parts p = evaluate(x, &dn, &dd);
  if (!(p.denominator > 0.0)) throw DomainError("trace vanishes on the boundary");
  const double beta = (n_ - 2.0) / (n_ - 1.0);
  const double db = std::pow(p.denominator, beta);
  const double q = p.numerator / db;
  grad.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) grad[i] = dn[i] / db - beta * q / p.denominator * dd[i];
  return q;
}

double QuotientObjective::constraint(const std::vector<double>& x, std::vector<double>* grad) const {
  return evaluate(x, nullptr, grad).denominator;
}

// --- descent ---------------------------------------------------------------

namespace {

void normalize(const QuotientObjective& obj, std::vector<double>& x) {
  const double d = obj.constraint(x);
  if (!(d > 0.0)) throw DomainError("trace vanishes on the boundary");
  const double s = std::pow(obj.boundary_volume() / d, 1.0 / tau(obj.dimension()));
  for (double& v : x) v *= s;
}

// Gradient with the component along grad(constraint) removed.
double project(const QuotientObjective& obj, const std::vector<double>& x, std::vector<double>& g) {
  std::vector<double> p;
  obj.constraint(x, &p);
  const double pp = dot(p, p);
  if (pp > 0.0) {
    const double s = dot(g, p) / pp;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= s * p[i];
  }
  return std::sqrt(dot(g, g));
}

bool positive_at_nodes(const BoundaryTrace& trace, const DomainGrids& grids) {
  for (const auto& values : trace_values(trace, grids))
    for (double v : values)
      if (!(v > 0.0)) return false;
  const ConformalFactor u = harmonic_extension(trace);
  std::vector<double> vol(grids.volume.size());
  parallel_for(vol.size(), [&](std::size_t i) { vol[i] = u.value(grids.volume.nodes[i]); });
  return std::all_of(vol.begin(), vol.end(), [](double v) { return v > 0.0; });
}

}  // namespace

MinimizerResult minimize_quotient(const Domain& domain, const MetricData& metric,
                                  const BoundaryTrace& init, const MinimizerConfig& config) {
  if (config.l_max < 0) throw PreconditionError("l_max must be >= 0");
  if (!(config.grad_tol > 0.0)) throw PreconditionError("grad_tol must be positive");
  if (config.max_iters < 1) throw PreconditionError("max_iters must be >= 1");
  if (!(config.initial_step > 0.0)) throw PreconditionError("initial step must be positive");
  if (init.is_zero()) throw PreconditionError("initial trace is identically zero");
  if (init.components() != domain.boundary_components().size())
    throw PreconditionError("initial trace does not live on this domain");

  const DomainGrids grids = make_domain_grids(domain, effective_order(config));
  const QuotientObjective obj(domain, metric, config.l_max, grids);

  BoundaryTrace trace = init.resized(config.l_max);
  std::vector<double> x = trace.flatten();
  normalize(obj, x);

  MinimizerResult result{trace, 0.0, 0, {}, {}, false, false, false};
  std::vector<double> g, y;
  double step = config.initial_step;
  double q = obj.value_and_gradient(x, g);
  for (int iter = 0;; ++iter) {
    const double gnorm = project(obj, x, g);
    result.energy_history.push_back(q);
    result.grad_norm_history.push_back(gnorm);
    result.iterations = iter;
    if (gnorm <= config.grad_tol) {
      result.converged = true;
      break;
    }
    if (iter >= config.max_iters) break;

    bool accepted = false;
    double qy = q;
    for (int h = 0; h <= config.max_halvings; ++h) {
      y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= step * g[i];
      normalize(obj, y);
      qy = obj.value(y);
      if (!config.backtracking || qy <= q - config.armijo_c1 * step * gnorm * gnorm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      result.stalled = true;
      break;
    }
    if (qy < config.divergence_floor) {
      std::ostringstream msg;
      msg << "quotient fell to " << qy << " below the divergence floor "
          << config.divergence_floor << "; Y_II = -infinity suspected";
      throw DivergenceError(msg.str());
    }
    x.swap(y);
    q = obj.value_and_gradient(x, g);
    if (config.backtracking) step *= 2.0;
  }
  trace.assign(x);
  result.trace = trace;
  result.energy = q;
  result.positive = positive_at_nodes(trace, grids);
  return result;
}

BoundaryTrace random_trace(const Domain& domain, int l_max, std::uint64_t seed, double amplitude) {
  BoundaryTrace t = BoundaryTrace::constant(domain, 1.0, l_max);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t c = 0; c < t.components(); ++c) {
    auto coeffs = t.coefficients(c);
    for (std::size_t k = 1; k < coeffs.size(); ++k) coeffs[k] = amplitude * normal(rng);
  }
  return t;
}

std::vector<MinimizerResult> minimize_multistart(const Domain& domain, const MetricData& metric,
                                                 const MinimizerConfig& config, int starts,
                                                 double amplitude) {
  if (starts < 1) throw PreconditionError("multistart needs at least one start");
  std::vector<std::optional<MinimizerResult>> slots(static_cast<std::size_t>(starts));
  std::vector<std::exception_ptr> errors(slots.size());
  auto run = [&](std::size_t i) {
    try {
      MinimizerConfig c = config;
      c.seed = config.seed + i;
      slots[i] = minimize_quotient(domain, metric, random_trace(domain, c.l_max, c.seed, amplitude), c);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(thread_limit(), slots.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < slots.size(); i += workers) run(i);
    });
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<MinimizerResult> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void write_history_csv(const MinimizerResult& result, std::ostream& out) {
  out << "iter,energy,grad_norm\n" << std::setprecision(17);
  for (std::size_t i = 0; i < result.energy_history.size(); ++i)
    out << i << ',' << result.energy_history[i] << ',' << result.grad_norm_history[i] << '\n';
}

// --- Euler-Lagrange residuals ----------------------------------------------

EulerLagrangeResidual euler_lagrange_residual(const Domain& domain, const MetricData& metric,
                                              const SampleFunction& u, const DomainGrids& grids) {
  if (!metric.euclidean_interior)
    throw PreconditionError("Euler-Lagrange residuals are evaluated for flat interior data");
  const int n = domain.dimension();
  const double k = 4.0 * (n - 1) / (n - 2);
  const double t = tau(n);
  const double e = static_cast<double>(n) / (n - 2);
  const auto& comps = domain.boundary_components();
  if (grids.boundary.size() != comps.size())
    throw PreconditionError("grids do not match the domain's boundary components");

  EulerLagrangeResidual r;
  std::vector<double> interior(grids.volume.size());
  parallel_for(interior.size(), [&](std::size_t i) {
    interior[i] = std::abs(k * u(grids.volume.nodes[i]).laplacian);
  });
  for (double v : interior) r.interior = std::max(r.interior, v);

  struct Node {
    double u, lhs, w;
  };
  std::vector<Node> nodes;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& g = grids.boundary[c];
    for (std::size_t i = 0; i < g.size(); ++i) {
      const FieldSample s = u(g.nodes[i]);
      if (!(s.value > 0.0)) {
        std::ostringstream msg;
        msg << "function value " << s.value << " at boundary node " << i << " of component " << c
            << " is not positive";
        throw DomainError(msg.str());
      }
      const double h = metric.mean_curvature[c](g.nodes[i]);
      nodes.push_back({s.value, 0.5 * k * comps[c].orientation * s.gradient[0] + h * s.value,
                       g.weights[i]});
    }
  }
  std::vector<double> num(nodes.size()), den(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    num[i] = nodes[i].w * nodes[i].u * nodes[i].lhs;
    den[i] = nodes[i].w * std::pow(nodes[i].u, t);
  }
  r.constant = pairwise_sum(num) / pairwise_sum(den);
  r.mean_curvature = r.constant;
  for (const auto& nd : nodes) {
    const double ue = std::pow(nd.u, e);
    r.boundary = std::max(r.boundary, std::abs(nd.lhs - r.constant * ue));
    r.mean_curvature_spread = std::max(r.mean_curvature_spread, std::abs(nd.lhs / ue - r.constant));
  }
  return r;
}

EulerLagrangeResidual euler_lagrange_residual(const Domain& domain, const MetricData& metric,
                                              const BoundaryTrace& trace, const DomainGrids& grids) {
  const ConformalFactor u = harmonic_extension(trace);
  return euler_lagrange_residual(domain, metric, [u](const Point& p) { return u.sample(p); }, grids);
}

RatioReport uniqueness_experiment(const BoundaryTrace& a, const BoundaryTrace& b,
                                  const DomainGrids& grids) {
  const ConformalFactor ua = harmonic_extension(a);
  const ConformalFactor ub = harmonic_extension(b);
  RatioReport r;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = -std::numeric_limits<double>::infinity();
  auto visit = [&](const QuadratureGrid& g) {
    for (const auto& p : g.nodes) {
      const double va = ua.value(p), vb = ub.value(p);
      if (!(va > 0.0) || !(vb > 0.0)) {
        std::ostringstream msg;
        msg << "extension is not positive at r = " << p.radius << ", polar = " << p.polar
            << ", azimuth = " << p.azimuth;
        throw DomainError(msg.str());
      }
      r.min_ratio = std::min(r.min_ratio, va / vb);
      r.max_ratio = std::max(r.max_ratio, va / vb);
    }
  };
  visit(grids.volume);
  for (const auto& g : grids.boundary) visit(g);
  r.spread = r.max_ratio / r.min_ratio - 1.0;
  return r;
}

}  // namespace yamabe
