#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "yamabe/discretization.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/parallel.hpp"

using namespace yamabe;
using testing::pi;

TEST_CASE("Gauss-Legendre integrates polynomials up to degree 2n-1") {
  for (int count : {1, 2, 5, 12, 40}) {
    const auto rule = gauss_legendre(count, 0.0, 2.0);
    for (int p = 0; p <= 2 * count - 1; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
      CHECK(testing::rel_err(s, std::pow(2.0, p + 1) / (p + 1)) < 1e-13);
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), PreconditionError);
}

TEST_CASE("Gauss-Legendre degree 2n is not exact") {
  const auto rule = gauss_legendre(3);
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 6);
  CHECK(std::abs(s - 2.0 / 7.0) > 1e-3);
}

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(2) == doctest::Approx(2 * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(3) == doctest::Approx(4 * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(4) == doctest::Approx(2 * pi * pi).epsilon(1e-15));
  CHECK(unit_sphere_area(5) == doctest::Approx(8 * pi * pi / 3).epsilon(1e-15));
}

TEST_CASE("sphere and volume grids measure the model domains") {
  CHECK(sphere_quadrature(6).measure() == doctest::Approx(4 * pi).epsilon(1e-14));
  const auto ann = Domain::annulus(3, 0.5, 1.0);
  const auto g = make_domain_grids(ann, 8);
  CHECK(g.volume.measure() == doctest::Approx(4 * pi / 3 * (1 - 0.125)).epsilon(1e-14));
  REQUIRE(g.boundary.size() == 2);
  CHECK(g.boundary[0].measure() == doctest::Approx(4 * pi).epsilon(1e-14));
  CHECK(g.boundary[1].measure() == doctest::Approx(pi).epsilon(1e-14));
  const auto b5 = make_domain_grids(Domain::ball(5), 6);
  CHECK(b5.volume.measure() == doctest::Approx(unit_sphere_area(5) / 5).epsilon(1e-14));
  CHECK(b5.boundary[0].measure() == doctest::Approx(unit_sphere_area(5)).epsilon(1e-14));
}

// Oracle: std::sph_legendre(l, m, t) = (-1)^m sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(cos t)
// with the Condon-Shortley phase included in P_l^m.
TEST_CASE("real spherical harmonics agree with std::sph_legendre") {
  const int L = 7;
  SphericalHarmonicBasis basis(L);
  std::vector<double> y(basis.size());
  for (double t : {0.1, 0.7, 1.3, 2.9}) {
    for (double p : {0.0, 0.4, 2.2, 5.1}) {
      basis.evaluate(t, p, y);
      for (int l = 0; l <= L; ++l)
        for (int m = -l; m <= l; ++m) {
          const int am = std::abs(m);
          const double leg = std::sph_legendre(l, am, t) * ((am % 2) ? -1.0 : 1.0);
          double expect = leg;
          if (m > 0) expect = std::sqrt(2.0) * leg * std::cos(m * p);
          if (m < 0) expect = std::sqrt(2.0) * leg * std::sin(am * p);
          CHECK(y[SphericalHarmonicBasis::index(l, m)] == doctest::Approx(expect).epsilon(1e-12).scale(1));
        }
    }
  }
}

TEST_CASE("harmonic derivatives match finite differences") {
  const int L = 5;
  SphericalHarmonicBasis basis(L);
  const std::size_t K = basis.size();
  std::vector<double> y(K), dt(K), dp(K), yp(K), ym(K);
  const double t = 0.9, p = 1.7, h = 1e-6;
  basis.evaluate_with_derivatives(t, p, y, dt, dp);
  basis.evaluate(t + h, p, yp);
  basis.evaluate(t - h, p, ym);
  for (std::size_t k = 0; k < K; ++k) CHECK(dt[k] == doctest::Approx((yp[k] - ym[k]) / (2 * h)).epsilon(1e-7).scale(1));
  basis.evaluate(t, p + h, yp);
  basis.evaluate(t, p - h, ym);
  for (std::size_t k = 0; k < K; ++k)
    CHECK(dp[k] == doctest::Approx((yp[k] - ym[k]) / (2 * h) / std::sin(t)).epsilon(1e-7).scale(1));
}

TEST_CASE("harmonics are orthonormal under the sphere grid") {
  const int L = 6;
  SphericalHarmonicBasis basis(L);
  const auto grid = sphere_quadrature(L + 1);
  SphericalTransform tr(basis, grid);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < tr.nodes(); ++i)
        s += tr.angular_weight(i) * tr.basis_value(i, a) * tr.basis_value(i, b);
      CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0).scale(1).epsilon(1e-13));
    }
}

TEST_CASE("transform round trip and order check") {
  const int L = 4;
  SphericalHarmonicBasis basis(L);
  const auto grid = sphere_quadrature(L + 1);
  SphericalTransform tr(basis, grid);
  std::vector<double> c(basis.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::sin(1.0 + static_cast<double>(k));
  const auto back = tr.analyze(tr.synthesize(c));
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(back[k] == doctest::Approx(c[k]).epsilon(1e-13));
  CHECK_THROWS_AS(SphericalTransform(basis, sphere_quadrature(L)), PreconditionError);
}

TEST_CASE("non-angular dimensions carry the constant harmonic only") {
  CHECK_THROWS_AS(SphericalHarmonicBasis(1, 4), PreconditionError);
  SphericalHarmonicBasis b(0, 5);
  std::vector<double> y(1);
  b.evaluate(0.0, 0.0, y);
  CHECK(y[0] == doctest::Approx(1.0 / std::sqrt(unit_sphere_area(5))).epsilon(1e-15));
}

TEST_CASE("pairwise_sum is exact on integers and deterministic") {
  std::vector<double> v(100001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 5000050000.0);
  std::vector<double> w(7777);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sin(0.37 * static_cast<double>(i));
  CHECK(pairwise_sum(w) == pairwise_sum(w));
}

TEST_CASE("parallel_for visits every index once and forwards exceptions") {
  std::vector<int> hits(50000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10000, [](std::size_t i) {
                    if (i == 9000) throw DomainError("boom");
                  }),
                  DomainError);
}
