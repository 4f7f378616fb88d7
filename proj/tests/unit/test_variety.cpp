#include <doctest.h>

#include <numeric>
#include <random>

#include "generators.hpp"
#include "invariety/maps/maps.hpp"
#include "invariety/variety/variety.hpp"

using namespace invariety;
using namespace invariety::variety;
using poly::MultiPoly;
using poly::Symbols;

TEST_CASE("Moebius gamma") {
  const Symbols h{"h"};
  CHECK(mobius_gamma(1) == poly::parse("1", h));
  CHECK(mobius_gamma(2) == poly::parse("h + 1", h));
  for (int n = 2; n <= 9; ++n) {
    // gamma_n = gamma_(n-1) + h^(n-1), and (h - 1) gamma_n = h^n - 1
    CHECK(mobius_gamma(n) == mobius_gamma(n - 1) + poly::parse("h", h).pow(static_cast<unsigned>(n - 1)));
    CHECK((poly::parse("h - 1", h) * mobius_gamma(n)) == poly::parse("h", h).pow(static_cast<unsigned>(n)) -
                                                              poly::parse("1", h));
  }
  auto roots = mobius_gamma_roots(5);
  REQUIRE(roots.size() == 4);
  for (const auto& r : roots) {
    CHECK(std::abs(poly::evaluate(mobius_gamma(5), {{"h", r.h}})) < 1e-14);
    CHECK(r.order == 5);
  }
  auto four = mobius_gamma_roots(4);
  CHECK(four[1].order == 2);  // h = -1 inside gamma_4
  CHECK(std::abs(four[1].h + 1.0) < 1e-15);
}

TEST_CASE("period-2 condition of the 1-d reduction") {
  std::mt19937_64 rng(5);
  SUBCASE("c = 0 leaves h + 1 for every x") {
    for (int i = 0; i < 200; ++i) {
      cplx h = testgen::random_complex(rng, 2.0), b = testgen::random_complex(rng, 2.0);
      cplx x1 = testgen::random_complex(rng, 2.0), x2 = testgen::random_complex(rng, 2.0);
      CHECK(gamma2_full(h, x1, b, 0.0) == h + 1.0);
      CHECK(gamma2_full(h, x1, b, 0.0) == gamma2_full(h, x2, b, 0.0));
    }
    auto num = gamma2_numerator();
    auto c0 = poly::substitute(num, {{"c", poly::parse("0", num.symbols())}}, num.symbols());
    CHECK(c0 == poly::parse("(h + 1)*(1 - b*x)", num.symbols()));
  }
  SUBCASE("b = c factors into h + 1 and the cancelled pole") {
    auto num = gamma2_numerator();
    auto bc = poly::substitute(num, {{"c", poly::parse("b", num.symbols())}}, num.symbols());
    CHECK(bc == poly::parse("(h + 1)*(1 - b*x)*(1 - b*h*x)", num.symbols()));
  }
  SUBCASE("c != 0 roots are period-2 points") {
    for (int i = 0; i < 50; ++i) {
      cplx h = testgen::random_complex(rng, 1.5), b = testgen::random_complex(rng, 1.5);
      cplx c = testgen::random_complex(rng, 1.5);
      // (1 - b x) Gamma_2 = (h+1) - (h+1) b x + c h x (c h x + b x - 1 - h), quadratic in x
      cplx a2 = c * h * (c * h + b), a1 = -(h + 1.0) * b - c * h * (1.0 + h), a0 = h + 1.0;
      cplx disc = std::sqrt(a1 * a1 - 4.0 * a2 * a0);
      maps::OneDimReduction f{h, b, c};
      for (cplx x : {(-a1 + disc) / (2.0 * a2), (-a1 - disc) / (2.0 * a2)}) {
        CHECK(std::abs(gamma2_full(h, x, b, c)) < 1e-9 * (1 + std::abs(h)));
        cplx once = f(x);
        CHECK(std::abs(f(once) - x) < 1e-8 * (1 + std::abs(x)));
        CHECK(std::abs(once - x) > 1e-6);
      }
    }
  }
  CHECK_THROWS_AS(gamma2_full(1.0, 0.5, 2.0, 1.0), PoleError);
}

TEST_CASE("2-d invariant varieties") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      if (std::gcd(k, n) != 1) continue;
      VerifyOptions opt;
      opt.seed = static_cast<std::uint64_t>(10 * n + k);
      auto r = verify_variety_2d(n, {0.7, -0.2}, k, 60, opt);
      CHECK(r.samples == 60);
      CHECK(r.passes == 60);
      CHECK(r.early_returns == 0);
      CHECK(r.max_return_residual < 1e-8);
      CHECK(r.max_closure_residual < 1e-10);
      CHECK(r.negative_control_min_distance > 1e-3);
      CHECK(r.ok());
    }
  }
  CHECK_THROWS_AS(verify_variety_2d(4, 0.5, 2, 10), UsageError);
  CHECK_THROWS_AS(verify_variety_2d(3, 0.5, 3, 10), UsageError);
}

TEST_CASE("2-d variety orbits by direct iteration") {
  // y (1 - b x) = -1: the point returns after two steps
  const cplx b{0.4, 0.9};
  auto spec = maps::make_spec(maps::MapId::TwoDimBC, {b, 0.0});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    cplx x = testgen::random_complex(rng, 2.0);
    std::vector<cplx> p{x, -1.0 / (1.0 - b * x)};
    auto o = maps::orbit(spec, p, 2);
    CHECK(std::abs(o[2][0] - p[0]) < 1e-10 * (1 + std::abs(p[0])));
    CHECK(std::abs(o[2][1] - p[1]) < 1e-10 * (1 + std::abs(p[1])));
    CHECK(std::abs(o[1][0] - p[0]) > 1e-6);
  }
}

TEST_CASE("Lotka-Volterra conditions") {
  auto c3 = lv_condition(3);
  const Symbols& rs = c3.gamma.symbols();
  CHECK(poly::rational_multiple(c3.gamma, poly::parse("r^2 + s^2 - r*s + r + s + 1", rs)));
  for (const auto& c : {lv_condition(3), lv_condition(4)}) {
    CHECK(c.gamma.uses(c.gamma.index_of("r")));
    CHECK(!c.gamma.has_symbol("x"));
  }
  CHECK_THROWS_AS(lv_condition(6), UsageError);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    cplx s = testgen::random_complex(rng, 2.0);
    auto roots = lv_roots_in_r(c3.gamma, s);
    REQUIRE(roots.size() == 2);
    // r^2 + (1 - s) r + (s^2 + s + 1) = 0
    CHECK(std::abs(roots[0] + roots[1] - (s - 1.0)) < 1e-12 * (1 + std::abs(s)));
    CHECK(std::abs(roots[0] * roots[1] - (s * s + s + 1.0)) < 1e-12 * (1 + std::norm(s)));
  }
}

TEST_CASE("Lotka-Volterra varieties") {
  VerifyOptions opt;
  opt.seed = 77;
  auto r3 = verify_variety_lv(3, 100, opt);
  CHECK(r3.passes == 100);
  CHECK(r3.max_return_residual < 1e-8);
  CHECK(r3.max_closure_residual < 1e-10);
  CHECK(r3.negative_control_min_distance > 1e-3);
  CHECK(r3.early_returns == 0);

  auto r4 = verify_variety_lv(4, 50, opt);
  CHECK(r4.passes == 50);
  CHECK(r4.negative_control_min_distance > 1e-3);

  opt.precision = Precision::Digits50;
  opt.workers = 4;
  auto r5 = verify_variety_lv(5, 30, opt);
  CHECK(r5.passes == 30);
  CHECK(r5.negative_control_min_distance > 1e-3);

  // a condition of the wrong period yields no returns
  VerifyOptions wrong;
  auto bad = verify_variety_lv(4, 20, wrong, lv_condition(3).gamma);
  CHECK(bad.passes == 0);
}

TEST_CASE("variety reports are deterministic") {
  VerifyOptions a, b;
  a.workers = 1;
  b.workers = 3;
  auto ra = verify_variety_lv(3, 40, a);
  auto rb = verify_variety_lv(3, 40, b);
  CHECK(to_json(ra).dump() == to_json(rb).dump());
  auto j = to_json(ra);
  for (const char* key : {"condition", "period", "samples", "passes", "resamples", "max_return_residual",
                          "negative_control_min_distance"}) {
    CHECK(j.contains(key));
  }
}
