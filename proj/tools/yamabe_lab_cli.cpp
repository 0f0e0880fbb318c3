// yamabe-lab: command-line front end over the C API.
//
// Exit codes: 0 success, 1 domain/precondition/search failure, 2 usage
// error, 3 internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "yamabe_lab.h"

using nlohmann::json;

namespace {

constexpr const char* kSchema = "yamabe-lab/1";

struct ApiFailure {
  yl_status status;
  std::string message;
};

void check(yl_status s) {
  if (s != YL_OK) throw ApiFailure{s, yl_last_error()};
}

struct UsageFailure {
  std::string message;
};

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DomainPtr = std::unique_ptr<yl_domain, Deleter<yl_domain, yl_domain_free>>;
using MetricPtr = std::unique_ptr<yl_metric, Deleter<yl_metric, yl_metric_free>>;
using TracePtr = std::unique_ptr<yl_trace, Deleter<yl_trace, yl_trace_free>>;
using ResultPtr = std::unique_ptr<yl_result, Deleter<yl_result, yl_result_free>>;

json take_json(char* s) {
  json j = json::parse(s);
  yl_free_string(s);
  return j;
}

// A report is a JSON object plus an optional table used by the csv format.
struct Report {
  json data = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, cell(j));
  }
}

std::string render(const Report& r, const std::string& command, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json j = {{"schema", kSchema}, {"command", command}};
    j.update(r.data);
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    if (!r.columns.empty()) {
      for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
      os << "\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << "\n";
      }
    } else {
      std::vector<std::pair<std::string, std::string>> kv;
      flatten(r.data, "", kv);
      os << "key,value\n";
      for (const auto& [k, v] : kv) os << k << "," << v << "\n";
    }
  } else {
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(r.data, "", kv);
    os << command << "\n";
    for (const auto& [k, v] : kv) os << "  " << k << ": " << v << "\n";
    if (!r.columns.empty()) {
      os << "\n";
      for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "  " : "") << r.columns[i];
      os << "\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "  " : "") << cell(row[i]);
        os << "\n";
      }
    }
  }
  return os.str();
}

// --- shared option groups ---

struct DomainOptions {
  std::string kind = "ball";
  int n = 3;
  double radius = 1.0;
  double inner = 0.5;
  double outer = 1.0;

  void add(CLI::App* app) {
    app->add_option("--domain", kind, "ball or annulus")->check(CLI::IsMember({"ball", "annulus"}));
    app->add_option("--n", n, "dimension (>= 3; angular modes only for n = 3)");
    app->add_option("--radius", radius, "ball radius");
    app->add_option("--r", inner, "annulus inner radius");
    app->add_option("--outer", outer, "annulus outer radius");
  }

  DomainPtr make() const {
    yl_domain* d = nullptr;
    if (kind == "ball")
      check(yl_domain_ball(n, radius, &d));
    else
      check(yl_domain_annulus(n, inner, outer, &d));
    return DomainPtr(d);
  }

  json describe() const {
    json j = {{"kind", kind}, {"n", n}};
    if (kind == "ball")
      j["radius"] = radius;
    else
      j["inner_radius"] = inner, j["outer_radius"] = outer;
    return j;
  }
};

// "component:l:m:value"
void apply_coefficients(yl_trace* t, const std::vector<std::string>& specs) {
  for (const auto& s : specs) {
    std::istringstream is(s);
    std::size_t component = 0;
    int l = 0, m = 0;
    double v = 0.0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(is >> component >> c1 >> l >> c2 >> m >> c3 >> v) || c1 != ':' || c2 != ':' || c3 != ':')
      throw UsageFailure{"coefficient '" + s + "' is not of the form component:l:m:value"};
    check(yl_trace_set(t, component, l, m, v));
  }
}

std::array<double, 3> vec3(const std::vector<double>& v, const char* name) {
  if (v.size() != 3) throw UsageFailure{std::string(name) + " needs three comma-separated values"};
  return {v[0], v[1], v[2]};
}

struct TraceOptions {
  std::string prefix;
  double constant = 1.0;
  int l_max = 0;
  std::vector<std::string> coefficients;

  void add(CLI::App* app, const std::string& name, const std::string& what) {
    prefix = name;
    app->add_option("--" + name + "-constant", constant, what + ": constant part");
    app->add_option("--" + name + "-lmax", l_max, what + ": harmonic degree cap");
    app->add_option("--" + name + "-coeff", coefficients,
                    what + ": coefficient component:l:m:value (unit-sphere harmonics, repeatable)");
  }

  int effective_lmax() const {
    int l = l_max;
    for (const auto& s : coefficients) {
      int comp = 0, deg = 0;
      char c = 0;
      std::istringstream is(s);
      if (is >> comp >> c >> deg) l = std::max(l, deg);
    }
    return l;
  }

  TracePtr make(const yl_domain* d) const {
    yl_trace* t = nullptr;
    check(yl_trace_constant(d, constant, effective_lmax(), &t));
    TracePtr owned(t);
    apply_coefficients(t, coefficients);
    return owned;
  }
};

struct MetricOptions {
  std::string factor = "euclidean";
  double c = 1.0;
  double m = 0.0;
  std::vector<double> slope{0.0, 0.0, 0.0};
  std::vector<double> a{0.0, 0.0, 0.0};
  std::vector<double> mean_curvature;
  double scale = 1.0;
  TraceOptions trace;

  void add(CLI::App* app) {
    app->add_option("--factor", factor,
                    "conformal factor u of u^{4/(n-2)} delta: euclidean, constant, schwarzschild, "
                    "affine, escobar, harmonic, curvature")
        ->check(CLI::IsMember(
            {"euclidean", "constant", "schwarzschild", "affine", "escobar", "harmonic", "curvature"}));
    app->add_option("--c", c, "constant factor value / affine offset");
    app->add_option("--m", m, "Schwarzschild mass");
    app->add_option("--slope", slope, "affine slope x,y,z")->delimiter(',');
    app->add_option("--a", a, "Escobar parameter x,y,z")->delimiter(',');
    app->add_option("--H", mean_curvature,
                    "constant boundary mean curvature per component (factor 'curvature')")
        ->delimiter(',');
    app->add_option("--scale", scale, "multiply the metric by this constant");
    trace.add(app, "u", "harmonic factor");
  }

  MetricPtr make(const yl_domain* d) const {
    yl_metric* g = nullptr;
    if (factor == "euclidean") {
      check(yl_metric_euclidean(d, &g));
    } else if (factor == "constant") {
      check(yl_metric_constant(d, c, &g));
    } else if (factor == "schwarzschild") {
      check(yl_metric_schwarzschild(d, m, &g));
    } else if (factor == "affine") {
      const auto s = vec3(slope, "--slope");
      check(yl_metric_affine(d, c, s.data(), &g));
    } else if (factor == "escobar") {
      const auto av = vec3(a, "--a");
      check(yl_metric_escobar(d, av.data(), &g));
    } else if (factor == "harmonic") {
      const TracePtr t = trace.make(d);
      check(yl_metric_harmonic(t.get(), &g));
    } else {
      if (mean_curvature.size() != yl_domain_components(d))
        throw UsageFailure{"--H needs one value per boundary component"};
      check(yl_metric_boundary_curvature(d, mean_curvature.data(), mean_curvature.size(), &g));
    }
    MetricPtr owned(g);
    if (scale != 1.0) {
      yl_metric* s = nullptr;
      check(yl_metric_rescaled(owned.get(), scale, &s));
      owned.reset(s);
    }
    return owned;
  }

  json describe() const {
    json j = {{"factor", factor}};
    if (factor == "constant") j["c"] = c;
    if (factor == "schwarzschild") j["m"] = m;
    if (factor == "affine") j["c"] = c, j["slope"] = slope;
    if (factor == "escobar") j["a"] = a;
    if (factor == "curvature") j["H"] = mean_curvature;
    if (factor == "harmonic") j["u_constant"] = trace.constant, j["u_coeff"] = trace.coefficients;
    if (scale != 1.0) j["scale"] = scale;
    return j;
  }
};

json energy_json(const yl_energy_report& e) {
  return {{"numerator_interior", e.numerator_interior},
          {"numerator_boundary", e.numerator_boundary},
          {"boundary_volume", e.boundary_volume},
          {"energy", e.energy}};
}

json quotient_json(const yl_quotient_report& q) {
  return {{"dirichlet", q.dirichlet},
          {"interior", q.interior},
          {"boundary", q.boundary},
          {"boundary_norm", q.boundary_norm},
          {"value", q.value}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"yamabe-lab: numerical laboratory for the type II Yamabe problem on model domains"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--output", output, "write the report to this path instead of stdout");
  app.add_option("--seed", seed, "seed for randomized initial data");

  std::string command;
  std::function<Report()> action;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  // energy
  DomainOptions e_dom;
  MetricOptions e_met;
  int e_order = 16;
  {
    auto* s = sub("energy",
                  "E(g) = (int R dV + 2 int H dA) / Vol(dM)^{(n-2)/(n-1)} of a conformally flat metric "
                  "by quadrature.\nCSV: key,value.");
    e_dom.add(s);
    e_met.add(s);
    s->add_option("--order", e_order, "quadrature order");
  }

  // quotient
  DomainOptions q_dom;
  MetricOptions q_met;
  TraceOptions q_phi;
  int q_order = 24;
  {
    auto* s = sub("quotient",
                  "Q_g(phi) of the harmonic extension of a boundary trace phi.\nCSV: key,value.");
    q_dom.add(s);
    q_met.add(s);
    q_phi.add(s, "phi", "trace phi");
    s->add_option("--order", q_order, "quadrature order");
  }

  // minimize
  DomainOptions mn_dom;
  std::vector<double> mn_h;
  int mn_lmax = 8, mn_iters = 5000, mn_order = 0, mn_starts = 1;
  double mn_tol = 1e-8, mn_amp = 0.3;
  std::string mn_init = "y10";
  {
    auto* s = sub("minimize",
                  "Projected gradient descent on Q over boundary traces of degree <= lmax, flat "
                  "interior, constant boundary mean curvature per component (Euclidean by default). "
                  "Reports the Euler-Lagrange residual of the result; with --starts > 1 also the "
                  "spread of the ratio of the extensions.\n"
                  "CSV: iteration,energy,grad_norm of the first start.");
    mn_dom.add(s);
    s->add_option("--H", mn_h, "boundary mean curvature per component")->delimiter(',');
    s->add_option("--lmax", mn_lmax, "harmonic degree cap");
    s->add_option("--order", mn_order, "quadrature order (0: 2 lmax + 2)");
    s->add_option("--max-iters", mn_iters, "iteration cap");
    s->add_option("--grad-tol", mn_tol, "projected gradient tolerance");
    s->add_option("--init", mn_init, "y10: 1 + amp Y_{1,0}; random: 1 + amp N(0,1) per mode; constant")
        ->check(CLI::IsMember({"y10", "random", "constant"}));
    s->add_option("--amplitude", mn_amp, "initial perturbation size");
    s->add_option("--starts", mn_starts, "independent random starts (seeds seed, seed+1, ...)");
  }

  // steklov
  DomainOptions st_dom;
  int st_lmax = 6;
  std::optional<double> st_h;
  double st_tol = 1e-9;
  {
    auto* s = sub("steklov",
                  "Steklov (Dirichlet-to-Neumann) spectrum with multiplicities; with --H, the "
                  "non-degeneracy verdict for constant mean curvature H (degenerate when H/(n-1) "
                  "is an eigenvalue).\nCSV: degree,value,multiplicity.");
    st_dom.add(s);
    s->add_option("--lmax", st_lmax, "highest degree");
    s->add_option("--H", st_h, "constant boundary mean curvature");
    s->add_option("--tol", st_tol, "eigenvalue match tolerance");
  }

  // check-thm1
  yl_theorem1_input t1{3, 1.0, 1.0, 1.0, 1.0, 1.0, 0};
  bool t1_eq = false;
  {
    auto* s = sub("check-thm1",
                  "Comparison theorem for type II Yamabe metrics: verdict for (M, h) given "
                  "gamma = Vol(h)/Vol(g), the area constant C, H_g, H_h and sup of H_h h relative "
                  "to H_g g.\nCSV: key,value.");
    s->add_option("--n", t1.n, "dimension");
    s->add_option("--gamma", t1.gamma, "volume ratio Vol(M,h)/Vol(M,g)");
    s->add_option("--C", t1.area_constant, "area constant C");
    s->add_option("--Hg", t1.mean_curvature_g, "constant mean curvature of g");
    s->add_option("--Hh", t1.mean_curvature_h, "constant mean curvature of h");
    s->add_option("--ratio-sup", t1.metric_ratio_sup, "sup of H_h h / (H_g g)");
    s->add_flag("--area-equality", t1_eq, "dA_g = (H_h/H_g)^{(n-1)/2} dA_h holds");
  }

  // check-corollary
  int co_n = 3;
  bool co_equal = false;
  double co_hg = 1.0, co_hh = 1.0, co_margin = 0.0, co_ratio = 1.0;
  {
    auto* s = sub("check-corollary",
                  "Equal-volume corollary of the comparison theorem.\nCSV: key,value.");
    s->add_option("--n", co_n, "dimension");
    s->add_flag("--volume-equal", co_equal, "Vol(M,g) = Vol(M,h)");
    s->add_option("--Hg", co_hg, "constant mean curvature of g");
    s->add_option("--Hh", co_hh, "constant mean curvature of h");
    s->add_option("--density-margin", co_margin,
                  "sup of sqrt(det g) H_g^e - sqrt(det h) H_h^e, e = (n-1)(2n-3)/(2(n-2))");
    s->add_option("--ratio-sup", co_ratio, "sup of H_h h / (H_g g)");
  }

  // check-nonpositive
  double np_r = 0.0, np_tol = 1e-10;
  std::vector<double> np_h, np_hbar;
  {
    auto* s = sub("check-nonpositive",
                  "Uniqueness up to rescaling of scalar-flat metrics with constant mean curvatures "
                  "of the same nonpositive sign.\nCSV: key,value.");
    s->add_option("--R-max", np_r, "max |R| over the manifold");
    s->add_option("--h-values", np_h, "mean curvature samples of the first metric")->delimiter(',')->required();
    s->add_option("--hbar-values", np_hbar, "mean curvature samples of the second metric")
        ->delimiter(',')
        ->required();
    s->add_option("--tol", np_tol, "constancy tolerance");
  }

  // cherrier
  int ch_n = 4;
  double ch_c = 1.0;
  std::optional<double> ch_v, ch_C, ch_mu;
  {
    auto* s = sub("cherrier",
                  "Constant-v' test on the unit ball: chain phi0 -> mu bound -> Beckner constant "
                  "-> (sigma/tau) c (C^2 mu)^{tau/2}, compared with 1 and the displayed constants "
                  "for n = 4, 5, 6. With --sup-v-prime, --C-bound and --mu evaluates the general "
                  "condition.\nCSV: key,value.");
    s->add_option("--n", ch_n, "dimension");
    s->add_option("--c", ch_c, "constant value of v'");
    s->add_option("--sup-v-prime", ch_v, "sup v'");
    s->add_option("--C-bound", ch_C, "trace-inequality constant");
    s->add_option("--mu", ch_mu, "mu");
  }

  // annulus
  int an_n = 3, an_order = 16;
  double an_r = 0.5, an_tol = 1e-10, an_probe = 1e8;
  std::vector<double> an_m{1.0};
  {
    auto* s = sub("annulus",
                  "Schwarzschild annulus g_{r,m} = (1 + m/(2|x|^{n-2}))^{4/(n-2)} delta on r <= |x| <= 1: "
                  "energy from the conformal change laws (closed form and quadrature), the commonly "
                  "published closed forms, E(delta) and the m -> infinity limits, and the threshold "
                  "m0 beyond which E(g_{r,m}) > E(delta).\n"
                  "CSV: m,energy,pipeline_energy,published_energy,euclid_energy,limit,published_limit.");
    s->add_option("--n", an_n, "dimension");
    s->add_option("--r", an_r, "inner radius");
    s->add_option("--m", an_m, "mass values (comma separated sweep)")->delimiter(',');
    s->add_option("--order", an_order, "quadrature order of the pipeline");
    s->add_option("--tol", an_tol, "threshold bisection tolerance");
    s->add_option("--probe-max", an_probe, "largest probed mass");
  }

  // escobar
  int es_n = 3, es_order = 12, es_q_order = 48;
  std::vector<double> es_a;
  {
    auto* s = sub("escobar",
                  "Escobar family u_a on the unit ball: interior and boundary-equation residuals "
                  "and, for n = 3, the quotient Q_delta(u_a), which is the same for every a.\n"
                  "CSV: a,interior_residual,boundary_residual,quotient.");
    s->add_option("--n", es_n, "dimension");
    s->add_option("--a", es_a,
                  "parameter points, each given as n values (comma separated, concatenated); "
                  "default 0, 0.3 e1, 0.6 e1, 0.9 e1")
        ->delimiter(',');
    s->add_option("--order", es_order, "residual grid order");
    s->add_option("--quotient-order", es_q_order, "quotient quadrature order");
  }

  // bump
  double bu_amp = 0.2, bu_width = 0.3;
  int bu_samples = 181;
  {
    auto* s = sub("bump",
                  "Umbilicity defect along the boundary of the bump ball r = 1 + phi(polar).\n"
                  "CSV: polar,defect.");
    s->add_option("--amplitude", bu_amp, "bump height");
    s->add_option("--width", bu_width, "bump half-width in polar angle");
    s->add_option("--samples", bu_samples, "polar samples in (0, pi)");
  }

  // cr-energy
  std::string cr_path;
  int cr_n = 1;
  {
    auto* s = sub("cr-energy",
                  "CR energy int R dV / Vol^{n/(n+1)} and, with a u column, the CR quotient, from "
                  "a CSV with header columns weight,R[,u,grad_norm].\nCSV: key,value.");
    s->add_option("--csv", cr_path, "input CSV")->required();
    s->add_option("--n", cr_n, "CR dimension n (manifold of dimension 2n+1)");
  }

  // check-cr
  double cc_gamma = 1.0, cc_rt = 1.0, cc_rT = 1.0, cc_ratio = 1.0;
  {
    auto* s = sub("check-cr",
                  "CR comparison theorem for contact forms with constant Webster curvature.\n"
                  "CSV: key,value.");
    s->add_option("--gamma", cc_gamma, "volume ratio");
    s->add_option("--R-theta", cc_rt, "constant Webster curvature of theta");
    s->add_option("--R-Theta", cc_rT, "Webster curvature of Theta (> 0)");
    s->add_option("--ratio-sup", cc_ratio, "sup of R_theta dtheta relative to R_Theta dTheta");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  Report rep;
  try {
    if (command == "energy") {
      const DomainPtr d = e_dom.make();
      const MetricPtr g = e_met.make(d.get());
      yl_energy_report e{};
      check(yl_energy(g.get(), e_order, &e));
      double neg = 0.0;
      check(yl_negative_part_norm(g.get(), e_order, &neg));
      rep.data = {{"domain", e_dom.describe()}, {"metric", e_met.describe()}, {"order", e_order}};
      rep.data.update(energy_json(e));
      rep.data["negative_mean_curvature_norm"] = neg;
    } else if (command == "quotient") {
      const DomainPtr d = q_dom.make();
      const MetricPtr g = q_met.make(d.get());
      const TracePtr phi = q_phi.make(d.get());
      yl_quotient_report q{};
      check(yl_quotient(g.get(), phi.get(), q_order, &q));
      rep.data = {{"domain", q_dom.describe()}, {"metric", q_met.describe()}, {"order", q_order}};
      rep.data.update(quotient_json(q));
    } else if (command == "minimize") {
      const DomainPtr d = mn_dom.make();
      MetricPtr g;
      {
        yl_metric* m = nullptr;
        if (mn_h.empty()) {
          check(yl_metric_euclidean(d.get(), &m));
        } else {
          if (mn_h.size() != yl_domain_components(d.get()))
            throw UsageFailure{"--H needs one value per boundary component"};
          check(yl_metric_boundary_curvature(d.get(), mn_h.data(), mn_h.size(), &m));
        }
        g.reset(m);
      }
      yl_minimizer_config cfg;
      yl_minimizer_config_default(&cfg);
      cfg.l_max = mn_lmax;
      cfg.quadrature_order = mn_order;
      cfg.max_iters = mn_iters;
      cfg.grad_tol = mn_tol;
      cfg.seed = seed;
      const int order = mn_order > 0 ? mn_order : 2 * mn_lmax + 2;
      if (mn_starts < 1) throw UsageFailure{"--starts must be >= 1"};

      std::vector<TracePtr> finals;
      json runs = json::array();
      for (int i = 0; i < mn_starts; ++i) {
        yl_trace* t0 = nullptr;
        if (mn_init == "random" || i > 0) {
          check(yl_trace_random(d.get(), mn_lmax, seed + static_cast<std::uint64_t>(i), mn_amp, &t0));
        } else {
          check(yl_trace_constant(d.get(), 1.0, mn_lmax, &t0));
          if (mn_init == "y10" && mn_lmax >= 1)
            for (std::size_t c = 0; c < yl_domain_components(d.get()); ++c)
              check(yl_trace_set(t0, c, 1, 0, mn_amp));
        }
        const TracePtr init(t0);
        yl_result* r = nullptr;
        check(yl_minimize(g.get(), init.get(), &cfg, &r));
        const ResultPtr res(r);
        yl_result_summary sum{};
        check(yl_result_summary_get(res.get(), &sum));
        yl_trace* tf = nullptr;
        check(yl_result_trace(res.get(), &tf));
        finals.emplace_back(tf);
        json run = {{"seed", seed + static_cast<std::uint64_t>(i)},
                    {"energy", sum.energy},
                    {"iterations", sum.iterations},
                    {"converged", sum.converged != 0},
                    {"positive", sum.positive != 0},
                    {"stalled", sum.stalled != 0},
                    {"final_grad_norm", sum.final_grad_norm}};
        if (mn_dom.n == 3 || mn_lmax == 0) {
          yl_residual_report el{};
          check(yl_euler_lagrange(g.get(), tf, order, &el));
          run["euler_lagrange"] = {{"interior", el.interior},
                                   {"boundary", el.boundary},
                                   {"constant", el.constant},
                                   {"mean_curvature", el.mean_curvature},
                                   {"mean_curvature_spread", el.mean_curvature_spread}};
        }
        runs.push_back(run);
        if (i == 0) {
          rep.columns = {"iteration", "energy", "grad_norm"};
          for (std::size_t k = 0; k < yl_result_history_length(res.get()); ++k) {
            double e = 0.0, gn = 0.0;
            check(yl_result_history(res.get(), k, &e, &gn));
            rep.rows.push_back({static_cast<std::uint64_t>(k), e, gn});
          }
        }
      }
      rep.data = {{"domain", mn_dom.describe()},
                  {"lmax", mn_lmax},
                  {"order", order},
                  {"init", mn_init},
                  {"amplitude", mn_amp},
                  {"runs", runs}};
      if (!mn_h.empty()) rep.data["H"] = mn_h;
      if (mn_starts > 1) {
        double spread = 0.0;
        for (int i = 1; i < mn_starts; ++i) {
          yl_ratio_report rr{};
          check(yl_extension_ratio(finals[0].get(), finals[static_cast<std::size_t>(i)].get(), order, &rr));
          spread = std::max(spread, rr.spread);
        }
        rep.data["ratio_spread"] = spread;
      }
    } else if (command == "steklov") {
      const DomainPtr d = st_dom.make();
      char* s = nullptr;
      check(yl_steklov_json(d.get(), st_lmax, st_h.has_value(), st_h.value_or(0.0), st_tol, &s));
      rep.data = {{"domain", st_dom.describe()}};
      rep.data.update(take_json(s));
      rep.columns = {"degree", "value", "multiplicity"};
      for (const auto& e : rep.data["eigenvalues"]) rep.rows.push_back({e["degree"], e["value"], e["multiplicity"]});
    } else if (command == "check-thm1") {
      t1.area_equality = t1_eq ? 1 : 0;
      char* s = nullptr;
      check(yl_check_theorem1_json(&t1, &s));
      rep.data = take_json(s);
      rep.data["input"] = {{"n", t1.n},
                           {"gamma", t1.gamma},
                           {"C", t1.area_constant},
                           {"Hg", t1.mean_curvature_g},
                           {"Hh", t1.mean_curvature_h},
                           {"ratio_sup", t1.metric_ratio_sup},
                           {"area_equality", t1_eq}};
    } else if (command == "check-corollary") {
      char* s = nullptr;
      check(yl_check_corollary_json(co_n, co_equal, co_hg, co_hh, co_margin, co_ratio, &s));
      rep.data = take_json(s);
    } else if (command == "check-nonpositive") {
      char* s = nullptr;
      check(yl_check_nonpositive_json(np_r, np_h.data(), np_h.size(), np_hbar.data(), np_hbar.size(),
                                      np_tol, &s));
      rep.data = take_json(s);
    } else if (command == "cherrier") {
      char* s = nullptr;
      check(yl_cherrier_json(ch_n, ch_c, &s));
      rep.data = take_json(s);
      if (ch_v || ch_C || ch_mu) {
        if (!(ch_v && ch_C && ch_mu))
          throw UsageFailure{"--sup-v-prime, --C-bound and --mu go together"};
        double lhs = 0.0;
        int ok = 0;
        check(yl_cherrier_condition(ch_n, *ch_v, *ch_C, *ch_mu, &lhs, &ok));
        rep.data["condition"] = {{"sup_v_prime", *ch_v}, {"C", *ch_C}, {"mu", *ch_mu},
                                 {"lhs", lhs}, {"satisfied", ok != 0}};
      }
    } else if (command == "annulus") {
      double e_delta = 0.0, limit = 0.0, pub_limit = 0.0;
      check(yl_euclidean_annulus_energy(an_n, an_r, &e_delta));
      check(yl_schwarzschild_energy_limit(an_n, an_r, YL_VARIANT_EXACT, &limit));
      check(yl_schwarzschild_energy_limit(an_n, an_r, YL_VARIANT_PUBLISHED, &pub_limit));
      yl_domain* dp = nullptr;
      check(yl_domain_annulus(an_n, an_r, 1.0, &dp));
      const DomainPtr d(dp);
      yl_metric* gp = nullptr;
      check(yl_metric_euclidean(d.get(), &gp));
      const MetricPtr flat(gp);
      yl_energy_report eq{};
      check(yl_energy(flat.get(), an_order, &eq));

      json sweep = json::array();
      rep.columns = {"m", "energy", "pipeline_energy", "published_energy", "euclid_energy", "limit",
                     "published_limit"};
      for (double m : an_m) {
        double e = 0.0, pe = 0.0, hi = 0.0, ho = 0.0, phi = 0.0, pho = 0.0;
        check(yl_schwarzschild_energy(an_n, an_r, m, YL_VARIANT_EXACT, &e));
        check(yl_schwarzschild_energy(an_n, an_r, m, YL_VARIANT_PUBLISHED, &pe));
        check(yl_schwarzschild_mean_curvatures(an_n, an_r, m, YL_VARIANT_EXACT, &hi, &ho));
        check(yl_schwarzschild_mean_curvatures(an_n, an_r, m, YL_VARIANT_PUBLISHED, &phi, &pho));
        yl_energy_report pipe{};
        check(yl_schwarzschild_pipeline_energy(an_n, an_r, m, an_order, &pipe));
        sweep.push_back({{"m", m},
                         {"energy", e},
                         {"pipeline_energy", pipe.energy},
                         {"published_energy", pe},
                         {"mean_curvature_inner", hi},
                         {"mean_curvature_outer", ho},
                         {"published_mean_curvature_inner", phi},
                         {"published_mean_curvature_outer", pho},
                         {"exceeds_euclid", e > e_delta}});
        rep.rows.push_back({m, e, pipe.energy, pe, e_delta, limit, pub_limit});
      }
      rep.data = {{"n", an_n},
                  {"r", an_r},
                  {"order", an_order},
                  {"euclid_energy", e_delta},
                  {"euclid_energy_quadrature", eq.energy},
                  {"limit", limit},
                  {"published_limit", pub_limit}};
      if (sweep.size() == 1) rep.data.update(sweep.front());
      else rep.data["sweep"] = sweep;

      json thresholds = json::object();
      for (auto [name, v] : {std::pair{"exact", YL_VARIANT_EXACT}, std::pair{"published", YL_VARIANT_PUBLISHED}}) {
        yl_threshold_report t{};
        const yl_status st = yl_find_m0(an_n, an_r, an_tol, v, an_probe, &t);
        if (st == YL_OK) {
          thresholds[name] = {{"found", true},       {"m0", t.m0},
                              {"probe_min", t.probe_min}, {"probe_max", t.probe_max},
                              {"probes", t.probes},  {"certified", t.certified != 0}};
        } else if (st == YL_ERR_NOT_FOUND) {
          thresholds[name] = {{"found", false}, {"reason", yl_last_error()}};
        } else {
          check(st);
        }
      }
      rep.data["threshold"] = thresholds;
    } else if (command == "escobar") {
      const auto n = static_cast<std::size_t>(std::max(es_n, 0));
      std::vector<std::vector<double>> points;
      if (es_a.empty()) {
        for (double s : {0.0, 0.3, 0.6, 0.9}) {
          std::vector<double> p(n, 0.0);
          if (n > 0) p[0] = s;
          points.push_back(p);
        }
      } else {
        if (n == 0 || es_a.size() % n != 0) throw UsageFailure{"--a needs a multiple of n values"};
        for (std::size_t i = 0; i < es_a.size(); i += n)
          points.emplace_back(es_a.begin() + static_cast<std::ptrdiff_t>(i),
                              es_a.begin() + static_cast<std::ptrdiff_t>(i + n));
      }
      json members = json::array();
      double qmin = INFINITY, qmax = -INFINITY;
      rep.columns = {"a", "interior_residual", "boundary_residual", "quotient"};
      for (const auto& a : points) {
        double ri = 0.0, rb = 0.0;
        check(yl_escobar_residual(es_n, a.data(), es_order, &ri, &rb));
        json m = {{"a", a}, {"interior_residual", ri}, {"boundary_residual", rb}};
        json q = nullptr;
        if (es_n == 3) {
          double qv = 0.0;
          check(yl_escobar_quotient(a.data(), es_q_order, &qv));
          q = qv;
          qmin = std::min(qmin, qv);
          qmax = std::max(qmax, qv);
        }
        m["quotient"] = q;
        members.push_back(m);
        std::string label;
        for (std::size_t i = 0; i < a.size(); ++i) label += (i ? " " : "") + cell(json(a[i]));
        rep.rows.push_back({label, ri, rb, q});
      }
      rep.data = {{"n", es_n}, {"order", es_order}, {"members", members}};
      if (es_n == 3) {
        rep.data["quotient_order"] = es_q_order;
        rep.data["quotient_spread"] = qmax - qmin;
        rep.data["reference"] = 8.0 * std::sqrt(std::acos(-1.0));
      }
    } else if (command == "bump") {
      char* s = nullptr;
      check(yl_bump_demo_json(bu_amp, bu_width, bu_samples, &s));
      rep.data = take_json(s);
      rep.columns = {"polar", "defect"};
      for (const auto& p : rep.data["profile"]) rep.rows.push_back({p[0], p[1]});
    } else if (command == "cr-energy") {
      yl_cr_report c{};
      check(yl_cr_energy_file(cr_path.c_str(), cr_n, &c));
      rep.data = {{"n", cr_n}, {"nodes", c.nodes}, {"energy", c.energy}};
      rep.data["quotient"] = std::isnan(c.quotient) ? json(nullptr) : json(c.quotient);
    } else if (command == "check-cr") {
      char* s = nullptr;
      check(yl_check_cr_json(cc_gamma, cc_rt, cc_rT, cc_ratio, &s));
      rep.data = take_json(s);
    }
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return 2;
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << yl_status_name(e.status) << ": " << e.message << "\n";
    if (e.status == YL_ERR_INVALID_ARGUMENT) return 2;
    if (e.status == YL_ERR_INTERNAL) return 3;
    return 1;
  }

  const std::string text = render(rep, command, format);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "error: cannot write " << output << "\n";
      return 1;
    }
  }
  return 0;
}
