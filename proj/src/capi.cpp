#include "yamabe_lab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "yamabe/checkers.hpp"
#include "yamabe/energy.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/harmonic.hpp"
#include "yamabe/minimizer.hpp"
#include "yamabe/worked_examples.hpp"

using namespace yamabe;
using nlohmann::json;

struct yl_domain {
  Domain domain;
};

struct yl_metric {
  Domain domain;
  MetricData metric;
};

struct yl_trace {
  BoundaryTrace trace;
};

struct yl_result {
  MinimizerResult result;
};

namespace {

thread_local std::string last_error;

class NullArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
void need(const T* p, const char* name) {
  if (p == nullptr) throw NullArgument(std::string(name) + " is null");
}

template <class F>
yl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return YL_OK;
  } catch (const DomainError& e) {
    last_error = e.what();
    return YL_ERR_DOMAIN;
  } catch (const PreconditionError& e) {
    last_error = e.what();
    return YL_ERR_PRECONDITION;
  } catch (const DivergenceError& e) {
    last_error = e.what();
    return YL_ERR_DIVERGENCE;
  } catch (const NotFoundError& e) {
    last_error = e.what();
    return YL_ERR_NOT_FOUND;
  } catch (const IoError& e) {
    last_error = e.what();
    return YL_ERR_IO;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return YL_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    last_error = e.what();
    return YL_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return YL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return YL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return YL_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SchwarzschildVariant variant(yl_variant v) {
  switch (v) {
    case YL_VARIANT_EXACT: return SchwarzschildVariant::exact;
    case YL_VARIANT_PUBLISHED: return SchwarzschildVariant::published;
  }
  throw std::invalid_argument("unknown variant");
}

void fill(const EnergyReport& e, yl_energy_report* out) {
  *out = {e.numerator_interior, e.numerator_boundary, e.boundary_volume, e.energy};
}

yl_metric* make_metric(const Domain& d, MetricData m) { return new yl_metric{d, std::move(m)}; }

Theorem1Input to_input(const yl_theorem1_input& in) {
  return {in.n, in.gamma, in.area_constant, in.mean_curvature_g, in.mean_curvature_h,
          in.metric_ratio_sup, in.area_equality != 0};
}

}  // namespace

extern "C" {

const char* yl_version(void) { return "1.0.0"; }

const char* yl_last_error(void) { return last_error.c_str(); }

const char* yl_status_name(yl_status status) {
  switch (status) {
    case YL_OK: return "ok";
    case YL_ERR_DOMAIN: return "domain_error";
    case YL_ERR_PRECONDITION: return "precondition_error";
    case YL_ERR_DIVERGENCE: return "divergence";
    case YL_ERR_NOT_FOUND: return "not_found";
    case YL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case YL_ERR_IO: return "io_error";
    case YL_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

void yl_free_string(char* s) { std::free(s); }

// --- domains ---

yl_status yl_domain_ball(int n, double radius, yl_domain** out) {
  return guarded([&] {
    need(out, "out");
    *out = new yl_domain{Domain::ball(n, radius)};
  });
}

yl_status yl_domain_annulus(int n, double inner_radius, double outer_radius, yl_domain** out) {
  return guarded([&] {
    need(out, "out");
    *out = new yl_domain{Domain::annulus(n, inner_radius, outer_radius)};
  });
}

void yl_domain_free(yl_domain* d) { delete d; }

int yl_domain_dimension(const yl_domain* d) { return d ? d->domain.dimension() : 0; }

size_t yl_domain_components(const yl_domain* d) {
  return d ? d->domain.boundary_components().size() : 0;
}

// --- metrics ---

yl_status yl_metric_euclidean(const yl_domain* d, yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = make_metric(d->domain, euclidean_metric(d->domain));
  });
}

yl_status yl_metric_boundary_curvature(const yl_domain* d, const double* mean_curvature,
                                       size_t count, yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(mean_curvature, "mean_curvature");
    need(out, "out");
    *out = make_metric(d->domain,
                       with_boundary_curvature(d->domain, std::span<const double>(mean_curvature, count)));
  });
}

yl_status yl_metric_constant(const yl_domain* d, double c, yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = make_metric(d->domain,
                       conformal_metric(d->domain, constant_factor(d->domain.dimension(), c)));
  });
}

yl_status yl_metric_schwarzschild(const yl_domain* d, double mass, yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = make_metric(d->domain,
                       conformal_metric(d->domain, schwarzschild_factor(d->domain.dimension(), mass)));
  });
}

yl_status yl_metric_affine(const yl_domain* d, double c0, const double slope[3], yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(slope, "slope");
    need(out, "out");
    *out = make_metric(d->domain,
                       conformal_metric(d->domain, affine_factor(c0, {slope[0], slope[1], slope[2]})));
  });
}

yl_status yl_metric_escobar(const yl_domain* d, const double a[3], yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(a, "a");
    need(out, "out");
    *out = make_metric(d->domain, conformal_metric(d->domain, escobar_factor({a[0], a[1], a[2]})));
  });
}

yl_status yl_metric_harmonic(const yl_trace* t, yl_metric** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    const Domain& d = t->trace.domain();
    *out = make_metric(d, conformal_metric(d, harmonic_extension(t->trace)));
  });
}

yl_status yl_metric_radial_table(const yl_domain* d, const double* radii, const double* values,
                                 size_t count, yl_metric** out) {
  return guarded([&] {
    need(d, "domain");
    need(radii, "radii");
    need(values, "values");
    need(out, "out");
    auto u = ConformalFactor::radial_table(d->domain.dimension(),
                                           std::vector<double>(radii, radii + count),
                                           std::vector<double>(values, values + count));
    *out = make_metric(d->domain, conformal_metric(d->domain, u));
  });
}

yl_status yl_metric_rescaled(const yl_metric* g, double c, yl_metric** out) {
  return guarded([&] {
    need(g, "metric");
    need(out, "out");
    *out = make_metric(g->domain, rescaled_metric(g->metric, c));
  });
}

void yl_metric_free(yl_metric* g) { delete g; }

// --- traces ---

yl_status yl_trace_new(const yl_domain* d, int l_max, yl_trace** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = new yl_trace{BoundaryTrace(d->domain, l_max)};
  });
}

yl_status yl_trace_constant(const yl_domain* d, double value, int l_max, yl_trace** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = new yl_trace{BoundaryTrace::constant(d->domain, value, l_max)};
  });
}

yl_status yl_trace_random(const yl_domain* d, int l_max, uint64_t seed, double amplitude,
                          yl_trace** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    *out = new yl_trace{random_trace(d->domain, l_max, seed, amplitude)};
  });
}

void yl_trace_free(yl_trace* t) { delete t; }

int yl_trace_l_max(const yl_trace* t) { return t ? t->trace.l_max() : -1; }

yl_status yl_trace_set(yl_trace* t, size_t component, int l, int m, double value) {
  return guarded([&] {
    need(t, "trace");
    t->trace.at(component, l, m) = value;
  });
}

yl_status yl_trace_get(const yl_trace* t, size_t component, int l, int m, double* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = t->trace.at(component, l, m);
  });
}

yl_status yl_trace_extension_value(const yl_trace* t, double r, double polar, double azimuth,
                                   double* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = harmonic_extension(t->trace).value({r, polar, azimuth});
  });
}

yl_status yl_trace_dirichlet_energy(const yl_trace* t, double* out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = dirichlet_energy(t->trace);
  });
}

// --- energies ---

yl_status yl_energy(const yl_metric* g, int order, yl_energy_report* out) {
  return guarded([&] {
    need(g, "metric");
    need(out, "out");
    fill(yamabe_energy(g->metric, make_domain_grids(g->domain, order)), out);
  });
}

yl_status yl_quotient(const yl_metric* g, const yl_trace* phi, int order, yl_quotient_report* out) {
  return guarded([&] {
    need(g, "metric");
    need(phi, "trace");
    need(out, "out");
    const auto q = boundary_quotient(g->metric, phi->trace, make_domain_grids(g->domain, order));
    *out = {q.dirichlet, q.interior, q.boundary, q.boundary_norm, q.value};
  });
}

yl_status yl_negative_part_norm(const yl_metric* g, int order, double* out) {
  return guarded([&] {
    need(g, "metric");
    need(out, "out");
    *out = negative_part_norm(g->metric, make_domain_grids(g->domain, order));
  });
}

yl_status yl_cr_energy_file(const char* path, int n, yl_cr_report* out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    const CRData data = load_cr_csv(path, n);
    out->energy = cr_energy(data);
    out->quotient = data.u ? cr_quotient(data) : std::numeric_limits<double>::quiet_NaN();
    out->nodes = data.weight.size();
  });
}

// --- minimizer ---

void yl_minimizer_config_default(yl_minimizer_config* out) {
  if (out == nullptr) return;
  const MinimizerConfig c;
  *out = {c.l_max,     c.quadrature_order, c.backtracking ? 1 : 0, c.initial_step,
          c.armijo_c1, c.max_halvings,     c.grad_tol,             c.max_iters,
          c.seed,      c.divergence_floor};
}

yl_status yl_minimize(const yl_metric* g, const yl_trace* init, const yl_minimizer_config* config,
                      yl_result** out) {
  return guarded([&] {
    need(g, "metric");
    need(init, "init");
    need(out, "out");
    MinimizerConfig c;
    if (config != nullptr) {
      c.l_max = config->l_max;
      c.quadrature_order = config->quadrature_order;
      c.backtracking = config->backtracking != 0;
      c.initial_step = config->initial_step;
      c.armijo_c1 = config->armijo_c1;
      c.max_halvings = config->max_halvings;
      c.grad_tol = config->grad_tol;
      c.max_iters = config->max_iters;
      c.seed = config->seed;
      c.divergence_floor = config->divergence_floor;
    }
    *out = new yl_result{minimize_quotient(g->domain, g->metric, init->trace, c)};
  });
}

void yl_result_free(yl_result* r) { delete r; }

yl_status yl_result_summary_get(const yl_result* r, yl_result_summary* out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    const auto& m = r->result;
    *out = {m.energy,          m.iterations, m.converged ? 1 : 0, m.positive ? 1 : 0,
            m.stalled ? 1 : 0, m.grad_norm_history.empty() ? 0.0 : m.grad_norm_history.back()};
  });
}

size_t yl_result_history_length(const yl_result* r) {
  return r ? r->result.energy_history.size() : 0;
}

yl_status yl_result_history(const yl_result* r, size_t i, double* energy, double* grad_norm) {
  return guarded([&] {
    need(r, "result");
    if (energy) *energy = r->result.energy_history.at(i);
    if (grad_norm) *grad_norm = r->result.grad_norm_history.at(i);
  });
}

yl_status yl_result_trace(const yl_result* r, yl_trace** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    *out = new yl_trace{r->result.trace};
  });
}

yl_status yl_euler_lagrange(const yl_metric* g, const yl_trace* t, int order,
                            yl_residual_report* out) {
  return guarded([&] {
    need(g, "metric");
    need(t, "trace");
    need(out, "out");
    const auto e = euler_lagrange_residual(g->domain, g->metric, t->trace,
                                           make_domain_grids(g->domain, order));
    *out = {e.interior, e.boundary, e.constant, e.mean_curvature, e.mean_curvature_spread};
  });
}

yl_status yl_extension_ratio(const yl_trace* a, const yl_trace* b, int order, yl_ratio_report* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const auto r = uniqueness_experiment(a->trace, b->trace,
                                         make_domain_grids(a->trace.domain(), order));
    *out = {r.min_ratio, r.max_ratio, r.spread};
  });
}

// --- spectra and checkers ---

yl_status yl_steklov_json(const yl_domain* d, int l_max, int has_h, double h, double tol,
                          char** out) {
  return guarded([&] {
    need(d, "domain");
    need(out, "out");
    const SteklovSpectrum s = steklov_spectrum(d->domain, l_max);
    json eig = json::array();
    for (const auto& e : s.eigenvalues)
      eig.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}, {"degree", e.degree}});
    json j = {{"l_max", s.l_max}, {"certified_below", s.certified_below}, {"eigenvalues", eig}};
    if (has_h) {
      const auto rep = nondegeneracy_check(h, s, d->domain.dimension(), tol);
      j["mean_curvature"] = h;
      j["target"] = rep.target;
      j["distance"] = rep.distance;
      j["verdict"] = to_string(rep.verdict);
      j["degenerate"] = rep.verdict == Nondegeneracy::degenerate;
    }
    *out = copy_string(j.dump());
  });
}

yl_status yl_check_theorem1_json(const yl_theorem1_input* in, char** out) {
  return guarded([&] {
    need(in, "input");
    need(out, "out");
    *out = copy_string(to_json(check_theorem1(to_input(*in)), -1));
  });
}

yl_status yl_theorem1_area_bound(const yl_theorem1_input* in, double* out) {
  return guarded([&] {
    need(in, "input");
    need(out, "out");
    *out = theorem1_area_bound(to_input(*in));
  });
}

yl_status yl_summarize_theorem1(const yl_metric* g, const yl_metric* h, int order, double tol,
                                yl_theorem1_input* out) {
  return guarded([&] {
    need(g, "g");
    need(h, "h");
    need(out, "out");
    const Theorem1Input s = summarize_theorem1(g->metric, h->metric, make_domain_grids(g->domain, order), tol);
    *out = {s.n, s.gamma, s.area_constant, s.mean_curvature_g, s.mean_curvature_h,
            s.metric_ratio_sup, s.area_equality ? 1 : 0};
  });
}

yl_status yl_check_corollary_json(int n, int volume_equal, double mean_curvature_g,
                                  double mean_curvature_h, double density_margin,
                                  double metric_ratio_sup, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = copy_string(to_json(check_corollary_volume(n, volume_equal != 0, mean_curvature_g,
                                                      mean_curvature_h, density_margin,
                                                      metric_ratio_sup),
                               -1));
  });
}

yl_status yl_check_nonpositive_json(double scalar_curvature_max_abs, const double* h,
                                    size_t h_count, const double* hbar, size_t hbar_count,
                                    double tol, char** out) {
  return guarded([&] {
    need(h, "h");
    need(hbar, "hbar");
    need(out, "out");
    const auto r = check_nonpositive_uniqueness(scalar_curvature_max_abs,
                                                std::vector<double>(h, h + h_count),
                                                std::vector<double>(hbar, hbar + hbar_count), tol);
    const json j = {{"applicable", r.applicable},
                    {"scalar_flat", r.scalar_flat},
                    {"constant_h", r.constant_h},
                    {"constant_hbar", r.constant_hbar},
                    {"same_sign", r.same_sign},
                    {"mean_curvature_h", r.mean_curvature_h},
                    {"mean_curvature_hbar", r.mean_curvature_hbar},
                    {"conclusion", r.conclusion}};
    *out = copy_string(j.dump());
  });
}

yl_status yl_cherrier_json(int n, double c, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto b = cherrier_ball_bound(n, c);
    json j = {{"n", b.n},
              {"c", b.c},
              {"phi0", b.phi0},
              {"beckner_bound", b.beckner_bound},
              {"mu_upper", b.mu_upper},
              {"value", b.value},
              {"closed_form", b.closed_form},
              {"reference_bound", nullptr},
              {"satisfied", b.below_one},
              {"within_reference", b.within_reference}};
    if (b.reference_bound) j["reference_bound"] = *b.reference_bound;
    *out = copy_string(j.dump());
  });
}

yl_status yl_cherrier_condition(int n, double sup_v_prime, double c_bound, double mu, double* lhs,
                                int* satisfied) {
  return guarded([&] {
    const auto r = cherrier_condition(n, sup_v_prime, c_bound, mu);
    if (lhs) *lhs = r.lhs;
    if (satisfied) *satisfied = r.satisfied ? 1 : 0;
  });
}

yl_status yl_check_cr_json(double gamma, double r_theta, double r_Theta, double ratio_sup,
                           char** out) {
  return guarded([&] {
    need(out, "out");
    *out = copy_string(to_json(check_cr_theorem(gamma, r_theta, r_Theta, ratio_sup), -1));
  });
}

// --- worked examples ---

yl_status yl_schwarzschild_mean_curvatures(int n, double r, double m, yl_variant v, double* inner,
                                           double* outer) {
  return guarded([&] {
    const auto h = schwarzschild_mean_curvatures({n, r, m}, variant(v));
    if (inner) *inner = h.inner;
    if (outer) *outer = h.outer;
  });
}

yl_status yl_schwarzschild_energy(int n, double r, double m, yl_variant v, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = schwarzschild_energy({n, r, m}, variant(v));
  });
}

yl_status yl_euclidean_annulus_energy(int n, double r, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = euclidean_annulus_energy(n, r);
  });
}

yl_status yl_schwarzschild_energy_limit(int n, double r, yl_variant v, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = schwarzschild_energy_limit(n, r, variant(v));
  });
}

yl_status yl_schwarzschild_pipeline_energy(int n, double r, double m, int order,
                                           yl_energy_report* out) {
  return guarded([&] {
    need(out, "out");
    fill(schwarzschild_pipeline_energy({n, r, m}, order), out);
  });
}

yl_status yl_find_m0(int n, double r, double tol, yl_variant v, double probe_max,
                     yl_threshold_report* out) {
  return guarded([&] {
    need(out, "out");
    const auto t = find_m0(n, r, tol, variant(v), probe_max);
    *out = {t.m0, t.euclidean_energy, t.probe_min, t.probe_max, t.probes, t.certified ? 1 : 0};
  });
}

yl_status yl_escobar_solution(int n, const double* a, const double* x, double* out) {
  return guarded([&] {
    need(a, "a");
    need(x, "x");
    need(out, "out");
    if (n < 0) throw std::invalid_argument("negative dimension");
    const auto un = static_cast<std::size_t>(n);
    *out = escobar_solution(std::vector<double>(a, a + un), std::vector<double>(x, x + un));
  });
}

yl_status yl_escobar_residual(int n, const double* a, int order, double* interior,
                              double* boundary) {
  return guarded([&] {
    need(a, "a");
    if (n < 0) throw std::invalid_argument("negative dimension");
    const auto r = escobar_residual(std::vector<double>(a, a + n), order);
    if (interior) *interior = r.interior;
    if (boundary) *boundary = r.boundary;
  });
}

yl_status yl_escobar_quotient(const double a[3], int order, double* out) {
  return guarded([&] {
    need(a, "a");
    need(out, "out");
    *out = escobar_quotient({a[0], a[1], a[2]}, order);
  });
}

yl_status yl_bump_demo_json(double amplitude, double width, int samples, char** out) {
  return guarded([&] {
    need(out, "out");
    const auto d = bump_ball_demo(amplitude, width, samples);
    json profile = json::array();
    for (const auto& [polar, defect] : d.profile) profile.push_back({polar, defect});
    const json j = {{"amplitude", amplitude},
                    {"width", width},
                    {"max_defect", d.max_defect},
                    {"argmax", d.argmax},
                    {"profile", profile}};
    *out = copy_string(j.dump());
  });
}

}  // extern "C"
