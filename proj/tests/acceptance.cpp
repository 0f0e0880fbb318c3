// Acceptance gate: one PASS/FAIL line per criterion at the pinned
// tolerances. Criteria 2-4 are known failures (the quoted Schwarzschild
// closed forms disagree with the conformal change laws); they are evaluated
// as stated and do not count toward the exit status. Any other failure does.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtn_oracle.hpp"
#include "gradient_check.hpp"
#include "properties.hpp"
#include "yamabe/checkers.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/harmonic.hpp"
#include "yamabe/minimizer.hpp"
#include "yamabe/model_domains.hpp"
#include "yamabe/worked_examples.hpp"

using namespace yamabe;
using testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;
const std::set<int> kKnownFailures{2, 3, 4};

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> info;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Euclidean annulus energy through the CLI: closed form vs quadrature.
Outcome criterion1() {
  const Timer t;
  const std::string cmd = std::string(YAMABE_LAB_CLI) + " annulus --n 3 --r 0.5 --m 0";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {false, "could not start the CLI", {}};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  const double secs = t.seconds();
  if (status != 0) return {false, fmt("CLI exited with status %d", status), {}};
  const auto j = nlohmann::json::parse(out);
  const double closed = j.at("euclid_energy").get<double>();
  const double quad = j.at("euclid_energy_quadrature").get<double>();
  const double target = 8 * kPi / std::sqrt(5 * kPi);
  const double err = rel_err(closed, quad);
  const bool pass = err < 1e-10 && rel_err(closed, target) < 1e-12 && secs < 1.0;
  return {pass, fmt("closed %.15f quadrature %.15f rel_err %.2e, 8pi/sqrt(5pi) %.15f, %.3f s", closed,
                    quad, err, target, secs),
          {}};
}

// 2. 27-point Schwarzschild grid: quoted closed form vs pipeline.
Outcome criterion2() {
  const Timer t;
  double e_pub = 0, e_exact = 0, h_pub = 0, h_exact = 0;
  for (int n : {3, 4, 5})
    for (double r : {0.3, 0.5, 0.7})
      for (double m : {0.5, 1.0, 2.0}) {
        const SchwarzschildParams p{n, r, m};
        const double pipe = schwarzschild_pipeline_energy(p).energy;
        e_pub = std::max(e_pub, rel_err(schwarzschild_energy(p, SchwarzschildVariant::published), pipe));
        e_exact = std::max(e_exact, rel_err(schwarzschild_energy(p), pipe));
        const double ui = 1.0 + m / (2.0 * std::pow(r, n - 2)), uo = 1.0 + m / 2.0;
        const double hi = conformal_mean_curvature(-(n - 1) / r, ui, (n - 2) * m / (2.0 * std::pow(r, n - 1)), n);
        const double ho = conformal_mean_curvature(n - 1.0, uo, -(n - 2) * m / 2.0, n);
        const auto pub = schwarzschild_mean_curvatures(p, SchwarzschildVariant::published);
        const auto ex = schwarzschild_mean_curvatures(p);
        h_pub = std::max({h_pub, std::abs(pub.inner - hi), std::abs(pub.outer - ho)});
        h_exact = std::max({h_exact, std::abs(ex.inner - hi), std::abs(ex.outer - ho)});
      }
  const double secs = t.seconds();
  return {e_pub < 1e-10 && h_pub < 1e-12 && secs < 5.0,
          fmt("quoted closed form vs pipeline: max rel_err %.3e, max |dH| %.3e, %.3f s", e_pub, h_pub, secs),
          {fmt("change-law closed form vs pipeline: max rel_err %.3e, max |dH| %.3e", e_exact, h_exact)}};
}

// 3. E(g_{0.5, 1e6}) against the quoted limit.
Outcome criterion3() {
  const double lim = schwarzschild_energy_limit(3, 0.5, SchwarzschildVariant::published);
  const double e = schwarzschild_pipeline_energy({3, 0.5, 1e6}).energy;
  const double err = std::abs(e - lim) / lim;
  const double e_pub = schwarzschild_energy({3, 0.5, 1e6}, SchwarzschildVariant::published);
  return {err < 1e-4, fmt("E(g_{0.5,1e6}) %.10f, quoted limit %.10f, rel_err %.3e", e, lim, err),
          {fmt("quoted closed form at m = 1e6: %.10f, rel_err %.3e against the quoted limit", e_pub,
               std::abs(e_pub - lim) / lim),
           fmt("change-law limit E(delta) = %.10f, rel_err %.3e", schwarzschild_energy_limit(3, 0.5),
               rel_err(e, schwarzschild_energy_limit(3, 0.5)))}};
}

// 4. E(g_{0.5,m}) > E(delta) for every probed m >= 1.
Outcome criterion4() {
  const double euclid = euclidean_annulus_energy(3, 0.5);
  int probes = 0, above = 0, above_pub = 0;
  double worst = INFINITY;
  for (int k = 0; k <= 160; ++k) {
    const double m = std::pow(10.0, k / 20.0);
    const double e = schwarzschild_pipeline_energy({3, 0.5, m}).energy;
    ++probes;
    if (e > euclid) ++above;
    if (schwarzschild_energy({3, 0.5, m}, SchwarzschildVariant::published) > euclid) ++above_pub;
    worst = std::min(worst, e - euclid);
  }
  return {above == probes,
          fmt("%d of %d probes in [1, 1e8] exceed E(delta) = %.10f; min E - E(delta) = %.6f", above, probes,
              euclid, worst),
          {fmt("quoted closed form exceeds E(delta) at %d of %d probes", above_pub, probes)}};
}

// 5. Cherrier constants.
Outcome criterion5() {
  bool pass = true;
  std::ostringstream d;
  for (int n : {4, 5, 6}) {
    const auto b = cherrier_ball_bound(n);
    const double ref = *b.reference_bound;
    pass = pass && b.value < 1.0 && b.value <= ref;
    d << fmt("n=%d %.10f <= %.10f; ", n, b.value, ref);
  }
  const auto b5 = cherrier_ball_bound(5);
  const double diff = std::abs(b5.closed_form - *b5.reference_bound);
  pass = pass && diff < 1e-4;
  d << fmt("n=5 |closed form - displayed| %.2e", diff);
  return {pass, d.str(), {}};
}

// 6. Minimizer on B^3 and gradient check.
Outcome criterion6() {
  const Timer t;
  const Domain d = Domain::ball(3);
  MinimizerConfig cfg;
  cfg.l_max = 8;
  BoundaryTrace init = BoundaryTrace::constant(d, 1.0, cfg.l_max);
  init.at(0, 1, 0) = 0.3;
  const auto r = minimize_quotient(d, euclidean_metric(d), init, cfg);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, testing::gradient_fd_error(i));
  const double secs = t.seconds();
  const double gap = std::abs(r.energy - 8 * std::sqrt(kPi));
  return {gap < 1e-3 && worst < 1e-6 && secs < 30.0,
          fmt("energy %.10f, |E - 8 sqrt(pi)| %.2e, worst gradient rel_err %.2e, %.2f s", r.energy, gap, worst,
              secs),
          {fmt("%d iterations, final projected gradient %.2e", r.iterations, r.grad_norm_history.back())}};
}

// 7. Escobar family.
Outcome criterion7() {
  double res = 0.0, lo = INFINITY, hi = -INFINITY;
  for (double a : {0.0, 0.3, 0.6}) {
    const auto r = escobar_residual({a, 0, 0});
    res = std::max({res, r.boundary, r.interior});
    const double q = escobar_quotient({a, 0, 0});
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {res < 1e-9 && hi - lo < 1e-6,
          fmt("max residual %.2e, Q in [%.12f, %.12f], spread %.2e (8 sqrt(pi) = %.12f)", res, lo, hi, hi - lo,
              8 * std::sqrt(kPi)),
          {}};
}

// 8. Steklov spectrum of the unit ball.
Outcome criterion8() {
  const int L = 6;
  const auto s = steklov_spectrum(Domain::ball(3), L);
  bool exact = s.eigenvalues.size() == static_cast<std::size_t>(L + 1);
  for (int l = 0; exact && l <= L; ++l) {
    const auto& e = s.eigenvalues[static_cast<std::size_t>(l)];
    exact = e.value == static_cast<double>(l) && e.multiplicity == 2 * l + 1;
  }
  const auto ev = testing::ball_dtn_eigenvalues(L);
  double worst = 0.0;
  Eigen::Index i = 0;
  for (int l = 0; l <= L; ++l)
    for (int m = 0; m < 2 * l + 1; ++m, ++i) worst = std::max(worst, std::abs(ev[i] - l));
  const auto v = nondegeneracy_check(2.0, s, 3);
  return {exact && worst < 1e-10 && v.verdict == Nondegeneracy::degenerate,
          fmt("closed form exact: %s, brute-force DtN max error %.2e, H = 2 verdict %s", exact ? "yes" : "no", worst,
              to_string(v.verdict)),
          {}};
}

// 9. Uniqueness experiment on the H = 0 annulus.
Outcome criterion9() {
  const Domain d = Domain::annulus(3, 0.5, 1.0);
  const std::vector<double> h{0.0, 0.0};
  const auto g = with_boundary_curvature(d, h);
  MinimizerConfig cfg;
  cfg.l_max = 2;
  cfg.max_iters = 2000;
  cfg.seed = 11;
  const auto runs = minimize_multistart(d, g, cfg, 2, 0.2);
  const auto ratio = uniqueness_experiment(runs[0].trace, runs[1].trace, make_domain_grids(d, 8));
  return {ratio.spread < 1e-6,
          fmt("ratio_spread %.3e (energies %.3e, %.3e)", ratio.spread, runs[0].energy, runs[1].energy), {}};
}

// 10. Invariance suite.
Outcome criterion10() {
  const double tol = 1e-8;
  const std::pair<const char*, std::function<testing::PropertyResult(int, double)>> props[] = {
      {"E(cg)=E(g)", testing::energy_scale_invariance},
      {"Q(t phi)=Q(phi)", testing::quotient_scale_invariance},
      {"harmonic replacement", testing::harmonic_replacement},
      {"conformal covariance", testing::conformal_covariance}};
  bool pass = true;
  std::ostringstream d;
  for (const auto& [name, f] : props) {
    const auto r = f(50, tol);
    pass = pass && r.passed == 50;
    d << fmt("%s %d/50 (worst %.1e); ", name, r.passed, r.worst);
  }
  return {pass, d.str(), {}};
}

// 11. Checker golden cases and monotonicity.
Outcome criterion11() {
  int total = 0, ok = 0;
  auto expect = [&](bool b) {
    ++total;
    if (b) ++ok;
  };
  auto thm = [](double c, double ratio) {
    Theorem1Input in;
    in.n = 3;
    in.mean_curvature_g = 2.0;
    in.mean_curvature_h = 1.0;
    in.metric_ratio_sup = ratio;
    in.area_constant = c;
    return check_theorem1(in).conclusion;
  };
  expect(check_theorem1(Theorem1Input{}).conclusion == "type_II_yamabe");
  expect(thm(0.1, 0.4) == "unique_type_II_yamabe");
  expect(thm(0.2, 0.4) == "inconclusive");
  expect(check_nonpositive_uniqueness(0.0, {0.0}, {0.0}).applicable);
  expect(check_nonpositive_uniqueness(0.0, {-1.0}, {-3.0}).applicable);
  expect(!check_nonpositive_uniqueness(0.0, {-1.0}, {0.0}).applicable);
  expect(check_cr_theorem(1.0, 1.0, 1.0, 1.0).conclusion == "cr_yamabe");
  expect(check_cr_theorem(1.0, 1.0, 1.0, 0.9).conclusion == "unique_cr_yamabe");
  expect(check_cr_theorem(1.0, 1.0, 1.0, 1.1).conclusion == "inconclusive");
  try {
    check_cr_theorem(1.0, 1.0, 0.0, 0.9);
    expect(false);
  } catch (const PreconditionError&) {
    expect(true);
  }

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.05, 2.0), shrink(0.01, 1.0);
  int mono = 0, flips = 0;
  for (int i = 0; i < 100; ++i) {
    Theorem1Input in;
    in.n = 3 + static_cast<int>(rng() % 4);
    in.gamma = u(rng);
    in.mean_curvature_g = u(rng);
    in.mean_curvature_h = u(rng);
    in.area_constant = 0.2 * u(rng);
    in.metric_ratio_sup = 0.6 * u(rng);
    const auto base = check_theorem1(in).conclusion;
    auto c = in;
    c.area_constant *= shrink(rng);
    auto q = in;
    q.metric_ratio_sup *= shrink(rng);
    ++mono;
    if (base == "inconclusive") continue;
    for (const auto& v : {check_theorem1(c).conclusion, check_theorem1(q).conclusion})
      if (v == "inconclusive" || (base == "unique_type_II_yamabe" && v != base)) ++flips;
  }
  return {ok == total && flips == 0,
          fmt("golden %d/%d, monotonicity: %d perturbations, %d flips", ok, total, mono, flips), {}};
}

}  // namespace

int main() {
  const std::pair<int, std::function<Outcome()>> criteria[] = {
      {1, criterion1}, {2, criterion2}, {3, criterion3},  {4, criterion4},   {5, criterion5},   {6, criterion6},
      {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}, {11, criterion11}};
  int unexpected = 0, passed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what(), {}};
    }
    const bool known = kKnownFailures.count(id) > 0;
    if (o.pass) ++passed;
    if (!o.pass && !known) ++unexpected;
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : (known ? "FAIL (known)" : "FAIL"), o.detail.c_str());
    for (const auto& line : o.info) std::printf("              info: %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 11 criteria pass; %d unexpected failures\n", passed, unexpected);
  return unexpected;
}
