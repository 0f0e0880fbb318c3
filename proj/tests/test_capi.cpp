#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "yamabe_lab.h"

namespace {

const double kPi = std::numbers::pi;

nlohmann::json take_json(char* s) {
  REQUIRE(s != nullptr);
  auto j = nlohmann::json::parse(s);
  yl_free_string(s);
  return j;
}

}  // namespace

TEST_CASE("status names and last error") {
  CHECK(std::string(yl_version()) == "1.0.0");
  CHECK(std::string(yl_status_name(YL_OK)) == "ok");
  CHECK(std::string(yl_status_name(YL_ERR_NOT_FOUND)) == "not_found");

  yl_domain* d = nullptr;
  CHECK(yl_domain_annulus(3, 0.8, 0.5, &d) == YL_ERR_PRECONDITION);
  CHECK(d == nullptr);
  CHECK(std::strlen(yl_last_error()) > 0);
  CHECK(yl_domain_ball(3, 1.0, nullptr) == YL_ERR_INVALID_ARGUMENT);
  REQUIRE(yl_domain_ball(3, 1.0, &d) == YL_OK);
  CHECK(std::string(yl_last_error()).empty());
  CHECK(yl_domain_dimension(d) == 3);
  CHECK(yl_domain_components(d) == 1);
  yl_domain_free(d);
  yl_domain_free(nullptr);
}

TEST_CASE("energies through handles") {
  yl_domain* a = nullptr;
  REQUIRE(yl_domain_annulus(3, 0.5, 1.0, &a) == YL_OK);
  CHECK(yl_domain_components(a) == 2);
  yl_metric* g = nullptr;
  REQUIRE(yl_metric_euclidean(a, &g) == YL_OK);
  yl_energy_report e{};
  REQUIRE(yl_energy(g, 8, &e) == YL_OK);
  CHECK(e.energy == doctest::Approx(8 * kPi / std::sqrt(5 * kPi)).epsilon(1e-14));

  yl_metric* c = nullptr;
  REQUIRE(yl_metric_rescaled(g, 3.0, &c) == YL_OK);
  yl_energy_report ec{};
  REQUIRE(yl_energy(c, 8, &ec) == YL_OK);
  CHECK(ec.energy == doctest::Approx(e.energy).epsilon(1e-13));

  yl_trace* t = nullptr;
  REQUIRE(yl_trace_constant(a, 1.0, 2, &t) == YL_OK);
  CHECK(yl_trace_l_max(t) == 2);
  REQUIRE(yl_trace_set(t, 1, 1, -1, 0.05) == YL_OK);
  double v = 0.0;
  REQUIRE(yl_trace_get(t, 1, 1, -1, &v) == YL_OK);
  CHECK(v == 0.05);
  CHECK(yl_trace_set(t, 2, 0, 0, 1.0) == YL_ERR_INVALID_ARGUMENT);
  CHECK(yl_trace_set(t, 0, 3, 0, 1.0) == YL_ERR_PRECONDITION);

  yl_quotient_report q{};
  REQUIRE(yl_quotient(g, t, 8, &q) == YL_OK);
  yl_metric* conf = nullptr;
  REQUIRE(yl_metric_harmonic(t, &conf) == YL_OK);
  yl_energy_report ef{};
  REQUIRE(yl_energy(conf, 16, &ef) == YL_OK);
  CHECK(ef.energy == doctest::Approx(q.value).epsilon(1e-10));

  double neg = 0.0;
  REQUIRE(yl_negative_part_norm(g, 6, &neg) == YL_OK);
  CHECK(neg == doctest::Approx(4 * std::sqrt(kPi)));

  yl_trace* z = nullptr;
  REQUIRE(yl_trace_new(a, 1, &z) == YL_OK);
  CHECK(yl_quotient(g, z, 8, &q) == YL_ERR_DOMAIN);

  const double h[2] = {1.0, 2.0};
  yl_metric* hm = nullptr;
  CHECK(yl_metric_boundary_curvature(a, h, 1, &hm) == YL_ERR_PRECONDITION);
  REQUIRE(yl_metric_boundary_curvature(a, h, 2, &hm) == YL_OK);

  for (yl_metric* m : {g, c, conf, hm}) yl_metric_free(m);
  yl_trace_free(t);
  yl_trace_free(z);
  yl_domain_free(a);
}

TEST_CASE("minimizer through handles") {
  yl_domain* b = nullptr;
  REQUIRE(yl_domain_ball(3, 1.0, &b) == YL_OK);
  yl_metric* g = nullptr;
  REQUIRE(yl_metric_euclidean(b, &g) == YL_OK);
  yl_trace* init = nullptr;
  REQUIRE(yl_trace_random(b, 2, 3, 0.1, &init) == YL_OK);
  yl_minimizer_config cfg;
  yl_minimizer_config_default(&cfg);
  CHECK(cfg.l_max == 8);
  cfg.l_max = 2;
  cfg.max_iters = 200;
  yl_result* r = nullptr;
  REQUIRE(yl_minimize(g, init, &cfg, &r) == YL_OK);
  yl_result_summary s{};
  REQUIRE(yl_result_summary_get(r, &s) == YL_OK);
  CHECK(std::abs(s.energy - 8 * std::sqrt(kPi)) < 1e-3);
  CHECK(yl_result_history_length(r) == static_cast<size_t>(s.iterations) + 1);
  double e0 = 0.0, g0 = 0.0;
  REQUIRE(yl_result_history(r, 0, &e0, &g0) == YL_OK);
  CHECK(e0 >= s.energy);
  CHECK(yl_result_history(r, 100000, &e0, &g0) == YL_ERR_INVALID_ARGUMENT);
  yl_trace* out = nullptr;
  REQUIRE(yl_result_trace(r, &out) == YL_OK);
  yl_residual_report el{};
  REQUIRE(yl_euler_lagrange(g, out, 8, &el) == YL_OK);
  CHECK(el.constant > 0.0);
  yl_ratio_report ratio{};
  REQUIRE(yl_extension_ratio(out, out, 6, &ratio) == YL_OK);
  CHECK(ratio.spread == 0.0);

  cfg.divergence_floor = 100.0;
  yl_result* r2 = nullptr;
  CHECK(yl_minimize(g, init, &cfg, &r2) == YL_ERR_DIVERGENCE);
  CHECK(r2 == nullptr);

  yl_result_free(r);
  yl_trace_free(out);
  yl_trace_free(init);
  yl_metric_free(g);
  yl_domain_free(b);
}

TEST_CASE("JSON reports") {
  yl_domain* b = nullptr;
  REQUIRE(yl_domain_ball(3, 1.0, &b) == YL_OK);
  char* s = nullptr;
  REQUIRE(yl_steklov_json(b, 4, 1, 2.0, 1e-10, &s) == YL_OK);
  auto j = take_json(s);
  CHECK(j.at("verdict") == "degenerate");
  CHECK(j.at("eigenvalues").size() == 5);
  CHECK(j.at("eigenvalues")[3].at("multiplicity") == 7);
  yl_domain_free(b);

  yl_theorem1_input in{3, 1.0, 0.1, 2.0, 1.0, 0.4, 0};
  double bound = 0.0;
  REQUIRE(yl_theorem1_area_bound(&in, &bound) == YL_OK);
  CHECK(bound == doctest::Approx(0.125));
  REQUIRE(yl_check_theorem1_json(&in, &s) == YL_OK);
  CHECK(take_json(s).at("conclusion") == "unique_type_II_yamabe");
  in.area_constant = 0.2;
  REQUIRE(yl_check_theorem1_json(&in, &s) == YL_OK);
  CHECK(take_json(s).at("conclusion") == "inconclusive");

  REQUIRE(yl_check_corollary_json(3, 1, 2.0, 1.0, -0.5, 0.5, &s) == YL_OK);
  CHECK(take_json(s).at("conclusion") == "unique_type_II_yamabe");
  CHECK(yl_check_corollary_json(3, 0, 2.0, 1.0, -0.5, 0.5, &s) == YL_ERR_PRECONDITION);

  const double hh[1] = {-1.0}, hb[1] = {-3.0};
  REQUIRE(yl_check_nonpositive_json(0.0, hh, 1, hb, 1, 1e-10, &s) == YL_OK);
  CHECK(take_json(s).at("applicable") == true);

  REQUIRE(yl_cherrier_json(5, 1.0, &s) == YL_OK);
  j = take_json(s);
  CHECK(j.at("satisfied") == true);
  CHECK(std::abs(j.at("value").get<double>() - j.at("reference_bound").get<double>()) < 1e-4);
  double lhs = 0.0;
  int ok = 1;
  REQUIRE(yl_cherrier_condition(4, 0.75, 1.0, 1.0, &lhs, &ok) == YL_OK);
  CHECK(lhs == 1.0);
  CHECK(ok == 0);

  REQUIRE(yl_check_cr_json(1.0, 2.0, 2.0, 0.9, &s) == YL_OK);
  CHECK(take_json(s).at("conclusion") == "unique_cr_yamabe");
  CHECK(yl_check_cr_json(1.0, 2.0, 0.0, 0.9, &s) == YL_ERR_PRECONDITION);

  REQUIRE(yl_bump_demo_json(0.1, 0.3, 91, &s) == YL_OK);
  j = take_json(s);
  CHECK(j.at("profile").size() == 91);
  CHECK(j.at("max_defect").get<double>() > 0.0);
}

TEST_CASE("worked examples through the C API") {
  double in = 0.0, out = 0.0;
  REQUIRE(yl_schwarzschild_mean_curvatures(3, 0.5, 1.0, YL_VARIANT_PUBLISHED, &in, &out) == YL_OK);
  CHECK(in == doctest::Approx(0.5));
  double e = 0.0, euc = 0.0;
  REQUIRE(yl_euclidean_annulus_energy(3, 0.5, &euc) == YL_OK);
  REQUIRE(yl_schwarzschild_energy(3, 0.5, 0.0, YL_VARIANT_EXACT, &e) == YL_OK);
  CHECK(e == doctest::Approx(euc).epsilon(1e-15));
  yl_energy_report pipe{};
  REQUIRE(yl_schwarzschild_pipeline_energy(4, 0.5, 1.0, 8, &pipe) == YL_OK);
  REQUIRE(yl_schwarzschild_energy(4, 0.5, 1.0, YL_VARIANT_EXACT, &e) == YL_OK);
  CHECK(pipe.energy == doctest::Approx(e).epsilon(1e-12));

  yl_threshold_report t{};
  REQUIRE(yl_find_m0(3, 0.5, 1e-10, YL_VARIANT_PUBLISHED, 1e8, &t) == YL_OK);
  CHECK(t.certified == 1);
  CHECK(yl_find_m0(3, 0.5, 1e-10, YL_VARIANT_EXACT, 1e8, &t) == YL_ERR_NOT_FOUND);
  CHECK(std::strstr(yl_last_error(), "no threshold") != nullptr);

  const double a[3] = {0, 0, 0}, x[3] = {0.2, 0.1, 0.3};
  double u = 0.0;
  REQUIRE(yl_escobar_solution(3, a, x, &u) == YL_OK);
  CHECK(u == doctest::Approx(std::sqrt(2.0)));
  const double a3[3] = {0.3, 0, 0};
  double ri = 1.0, rb = 1.0, q = 0.0;
  REQUIRE(yl_escobar_residual(3, a3, 12, &ri, &rb) == YL_OK);
  CHECK(rb < 1e-9);
  REQUIRE(yl_escobar_quotient(a3, 48, &q) == YL_OK);
  CHECK(std::abs(q - 8 * std::sqrt(kPi)) < 1e-6);
}

TEST_CASE("CR energy from a file") {
  const std::string path = "capi_cr_test.csv";
  {
    std::ofstream f(path);
    f << "weight,R,u,grad_norm\n1,2,1,0\n3,2,1,0\n";
  }
  yl_cr_report r{};
  REQUIRE(yl_cr_energy_file(path.c_str(), 1, &r) == YL_OK);
  CHECK(r.energy == doctest::Approx(4.0));
  CHECK(r.nodes == 2);
  std::remove(path.c_str());
  CHECK(yl_cr_energy_file("/nonexistent/x.csv", 1, &r) == YL_ERR_IO);
}
