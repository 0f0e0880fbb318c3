#include "yamabe/energy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "yamabe/errors.hpp"
#include "yamabe/harmonic.hpp"
#include "yamabe/parallel.hpp"

namespace yamabe {

namespace {

double denominator_exponent(int n) { return (n - 2.0) / (n - 1.0); }
double tau(int n) { return 2.0 * (n - 1) / (n - 2); }

void check_grids(const MetricData& metric, const DomainGrids& grids) {
  if (grids.boundary.size() != metric.mean_curvature.size())
    throw PreconditionError("metric and grids disagree on the number of boundary components");
}

// sum_i w_i f(node_i) with nodes evaluated in parallel.
template <class F>
double parallel_integrate(const QuadratureGrid& g, F&& f) {
  std::vector<double> terms(g.size());
  parallel_for(g.size(), [&](std::size_t i) { terms[i] = g.weights[i] * f(g.nodes[i]); });
  return pairwise_sum(terms);
}

// Boundary terms of Q from node values of phi on each component.
void add_boundary_terms(const MetricData& metric, const DomainGrids& grids,
                        const std::vector<std::vector<double>>& values, QuotientParts& q) {
  const double t = tau(metric.dimension);
  for (std::size_t c = 0; c < grids.boundary.size(); ++c) {
    const auto& g = grids.boundary[c];
    std::vector<double> curv(g.size()), norm(g.size());
    parallel_for(g.size(), [&](std::size_t i) {
      const double v = values[c][i];
      const double da = g.weights[i] * metric.area_scale(g.nodes[i]);
      curv[i] = da * metric.mean_curvature[c](g.nodes[i]) * v * v;
      norm[i] = da * std::pow(std::abs(v), t);
    });
    q.boundary += 2.0 * pairwise_sum(curv);
    q.boundary_norm += pairwise_sum(norm);
  }
}

void finish(int n, QuotientParts& q) {
  if (!(q.boundary_norm > 0.0))
    throw DomainError("test function vanishes on the boundary (zero quotient denominator)");
  q.value = (q.dirichlet + q.interior + q.boundary) / std::pow(q.boundary_norm, denominator_exponent(n));
}

}  // namespace

EnergyReport yamabe_energy(const MetricData& metric, const DomainGrids& grids) {
  check_grids(metric, grids);
  const int n = metric.dimension;
  EnergyReport r;
  if (!metric.euclidean_interior) {
    r.numerator_interior = parallel_integrate(grids.volume, [&](const Point& p) {
      return metric.scalar_curvature(p) * metric.volume_scale(p);
    });
  }
  for (std::size_t c = 0; c < grids.boundary.size(); ++c) {
    const auto& g = grids.boundary[c];
    r.numerator_boundary += 2.0 * parallel_integrate(g, [&](const Point& p) {
      return metric.mean_curvature[c](p) * metric.area_scale(p);
    });
    r.boundary_volume += parallel_integrate(g, [&](const Point& p) { return metric.area_scale(p); });
  }
  if (!(r.boundary_volume > 0.0)) throw DomainError("boundary volume is zero");
  r.energy = (r.numerator_interior + r.numerator_boundary) /
             std::pow(r.boundary_volume, denominator_exponent(n));
  return r;
}

std::vector<std::vector<double>> trace_values(const BoundaryTrace& phi, const DomainGrids& grids) {
  if (grids.boundary.size() != phi.components())
    throw PreconditionError("trace and grids disagree on the number of boundary components");
  const SphericalHarmonicBasis basis(phi.l_max(), phi.domain().dimension());
  std::vector<std::vector<double>> values;
  for (std::size_t c = 0; c < phi.components(); ++c) {
    const SphericalTransform transform(basis, grids.boundary[c]);
    values.push_back(transform.synthesize(phi.coefficients(c)));
  }
  return values;
}

QuotientParts boundary_quotient(const MetricData& metric, const BoundaryTrace& phi,
                                const DomainGrids& grids) {
  check_grids(metric, grids);
  if (phi.is_zero()) throw DomainError("test function vanishes on the boundary");
  const int n = metric.dimension;
  if (!metric.euclidean_interior) {
    const ConformalFactor u = harmonic_extension(phi);
    return boundary_quotient(metric, [u](const Point& p) { return u.sample(p); }, grids);
  }
  QuotientParts q;
  q.dirichlet = 4.0 * (n - 1) / (n - 2) * dirichlet_energy(phi);
  add_boundary_terms(metric, grids, trace_values(phi, grids), q);
  finish(n, q);
  return q;
}

QuotientParts boundary_quotient(const MetricData& metric, const SampleFunction& phi,
                                const DomainGrids& grids) {
  check_grids(metric, grids);
  const int n = metric.dimension;
  const double k = 4.0 * (n - 1) / (n - 2);
  QuotientParts q;
  const auto& vol = grids.volume;
  std::vector<double> grad(vol.size()), curv(vol.size());
  parallel_for(vol.size(), [&](std::size_t i) {
    const Point& p = vol.nodes[i];
    const FieldSample s = phi(p);
    const double g2 = s.gradient[0] * s.gradient[0] + s.gradient[1] * s.gradient[1] +
                      s.gradient[2] * s.gradient[2];
    if (metric.euclidean_interior) {
      grad[i] = vol.weights[i] * g2;
      curv[i] = 0.0;
    } else {
      const double dv = metric.volume_scale(p);
      grad[i] = vol.weights[i] * std::pow(dv, (n - 2.0) / n) * g2;
      curv[i] = vol.weights[i] * dv * metric.scalar_curvature(p) * s.value * s.value;
    }
  });
  q.dirichlet = k * pairwise_sum(grad);
  q.interior = pairwise_sum(curv);
  std::vector<std::vector<double>> values;
  for (const auto& g : grids.boundary) {
    std::vector<double> v(g.size());
    parallel_for(g.size(), [&](std::size_t i) { v[i] = phi(g.nodes[i]).value; });
    values.push_back(std::move(v));
  }
  add_boundary_terms(metric, grids, values, q);
  finish(n, q);
  return q;
}

double negative_part_norm(const MetricData& metric, const DomainGrids& grids) {
  check_grids(metric, grids);
  const int n = metric.dimension;
  double sum = 0.0;
  for (std::size_t c = 0; c < grids.boundary.size(); ++c) {
    sum += parallel_integrate(grids.boundary[c], [&](const Point& p) {
      const double h = metric.mean_curvature[c](p);
      return h < 0.0 ? std::pow(-h, n - 1) * metric.area_scale(p) : 0.0;
    });
  }
  return std::pow(sum, 1.0 / (n - 1));
}

// --- CR functionals --------------------------------------------------------

namespace {

void check_cr(const CRData& d) {
  if (d.n < 1) throw PreconditionError("CR dimension parameter n must be >= 1");
  if (d.weight.empty()) throw PreconditionError("CR data is empty");
  if (d.curvature.size() != d.weight.size())
    throw PreconditionError("CR data: weight and R columns differ in length");
  for (double w : d.weight)
    if (!(w > 0.0)) throw DomainError("CR data: quadrature weights must be positive");
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

CRData parse_cr_csv(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("CR csv: missing header row");
  const auto header = split_csv_line(line);
  int iw = -1, ir = -1, iu = -1, ig = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto& h = header[i];
    const int idx = static_cast<int>(i);
    if (h == "weight") iw = idx;
    else if (h == "R") ir = idx;
    else if (h == "u") iu = idx;
    else if (h == "grad_norm") ig = idx;
  }
  if (iw < 0 || ir < 0) throw IoError("CR csv: header must name columns weight and R");
  CRData d;
  d.n = n;
  if (iu >= 0) d.u.emplace();
  if (ig >= 0) d.grad_norm.emplace();
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    auto field = [&](int col) {
      if (col >= static_cast<int>(cells.size()))
        throw IoError("CR csv: row " + std::to_string(row) + " has too few columns");
      try {
        std::size_t used = 0;
        const double v = std::stod(cells[static_cast<std::size_t>(col)], &used);
        if (used != cells[static_cast<std::size_t>(col)].size()) throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        throw IoError("CR csv: row " + std::to_string(row) + ": '" +
                      cells[static_cast<std::size_t>(col)] + "' is not a number");
      }
    };
    d.weight.push_back(field(iw));
    d.curvature.push_back(field(ir));
    if (iu >= 0) d.u->push_back(field(iu));
    if (ig >= 0) d.grad_norm->push_back(field(ig));
  }
  check_cr(d);
  return d;
}

CRData load_cr_csv(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_cr_csv(buf.str(), n);
}

double cr_energy(const CRData& data) {
  check_cr(data);
  std::vector<double> num(data.weight.size());
  for (std::size_t i = 0; i < num.size(); ++i) num[i] = data.weight[i] * data.curvature[i];
  const double vol = pairwise_sum(data.weight);
  return pairwise_sum(num) / std::pow(vol, data.n / (data.n + 1.0));
}

double cr_quotient(const CRData& data) {
  check_cr(data);
  if (!data.u || !data.grad_norm)
    throw PreconditionError("CR quotient needs u and grad_norm columns");
  const auto& u = *data.u;
  const auto& g = *data.grad_norm;
  if (u.size() != data.weight.size() || g.size() != data.weight.size())
    throw PreconditionError("CR data: u/grad_norm columns differ in length");
  const double n = data.n;
  const double p = 2.0 + 2.0 / n;
  std::vector<double> num(u.size()), den(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0))
      throw DomainError("CR data: u = " + std::to_string(u[i]) + " at node " + std::to_string(i) +
                        " is not positive");
    num[i] = data.weight[i] * (p * g[i] * g[i] + data.curvature[i] * u[i] * u[i]);
    den[i] = data.weight[i] * std::pow(u[i], p);
  }
  return pairwise_sum(num) / std::pow(pairwise_sum(den), n / (n + 1.0));
}

}  // namespace yamabe
