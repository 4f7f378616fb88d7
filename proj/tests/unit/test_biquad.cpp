#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "invariety/biquad/biquad.hpp"
#include "invariety/polycore/serialize.hpp"

using namespace invariety;
using namespace invariety::biquad;
using poly::Integer;
using poly::Symbols;

namespace {

MultiPoly G(const char* text) { return poly::parse(text, generic_symbols()); }

NumParams random_params(std::mt19937_64& rng) {
  NumParams q;
  for (auto& x : q.v) x = testgen::random_complex(rng, 2.0);
  return q;
}

std::array<Integer, 6> random_integer_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-9, 9);
  std::array<Integer, 6> q;
  do {
    for (auto& x : q) x = c(rng);
  } while (q[0] == 0);
  return q;
}

bool close(cplx x, cplx y, double tol) { return std::abs(x - y) <= tol * (1.0 + std::abs(x) + std::abs(y)); }

}  // namespace

TEST_CASE("eval_S") {
  NumParams q{{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
  CHECK(eval_S<cplx>(2.0, 3.0, q) == cplx(36.0));
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    auto p = random_params(rng);
    cplx X = testgen::random_complex(rng, 3.0), x = testgen::random_complex(rng, 3.0);
    CHECK(close(eval_S(X, x, p), eval_S(x, X, p), 1e-14));
  }
  auto lv = specialize_lv(1.0, 1.0);
  CHECK(lv == NumParams{{2.0, -2.0, 0.0, 6.0, -2.0, 0.0}});
  CHECK(specialize_lv(0.0, 0.0) == NumParams{{1.0, -1.0, 0.0, 1.0, 0.0, 0.0}});
}

TEST_CASE("phi, eta, rho reassemble the curve") {
  auto fer = phi_eta_rho(generic_symbolic());
  CHECK(fer.eta[1] == G("d - 2*c"));
  NumParams unit{{1.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
  auto u = phi_eta_rho(unit);
  CHECK(u.phi == std::array<cplx, 3>{1.0, 0.0, 0.0});
  CHECK(u.eta == std::array<cplx, 3>{0.0, 0.0, 0.0});
  std::mt19937_64 rng(22);
  for (int i = 0; i < 100; ++i) {
    auto q = random_params(rng);
    cplx x = testgen::random_complex(rng, 2.0), y = testgen::random_complex(rng, 2.0);
    auto [phi, eta, rho] = phi_eta_rho(q);
    auto quad = [&](const std::array<cplx, 3>& c) { return c[0] * x * x + c[1] * x + c[2]; };
    CHECK(close(quad(phi) * y * y + quad(eta) * y + quad(rho), eval_S(y, x, q), 1e-13));
  }
}

TEST_CASE("q2 closed form") {
  auto q2 = q2_of(specialize_lv_symbolic());
  Symbols rs{"r", "s"};
  auto P = [&](const char* t) { return poly::parse(t, rs); };
  CHECK(q2.a() == P("(s+1)^2*s*(r^2-r*s^2-s-3*r*s)"));
  CHECK(q2.b() == P("(s+1)^2*s*(2*r^2*s+s+5*r*s-2*r^2-r^3-s^2)"));
  CHECK(q2.c() == P("(s-r)*s*(r+1)*(s^2-r^2*s-3*r*s-r)"));
  CHECK(q2.d() == P("(s+1)^2*s*(2*r*s^2+2*s^2-3*r^2*s-8*r*s-s+r^3*s+r^4+5*r^3+6*r^2-s^3)"));
  CHECK(q2.e() == P("(s+1)^2*r*s*(s^2-r*s+s-2*r-r^3-2*r^2)"));
  CHECK(q2.f() == P("(s+1)^2*r^2*s*(r^2-r*s+r+s^2+s+1)"));
  auto s1sq = P("(s+1)^2");
  for (std::size_t i : {0, 1, 3, 4, 5}) CHECK(poly::try_exact_div(q2[i], s1sq));
  CHECK_FALSE(poly::try_exact_div(q2.c(), s1sq));

  NumParams line{{0.0, 0.0, 0.0, 1.5, -2.0, 0.7}};
  auto l2 = q2_of(line);
  CHECK(l2.a() == cplx(0.0));
  CHECK(l2.b() == cplx(0.0));
}

TEST_CASE("bracket factorizations at level 2") {
  auto q = generic_symbolic();
  auto q2 = q2_of(q);
  auto w = wedges(q, q2);
  MultiPoly g3 = G("a*f - b*e - 3*c^2 + c*d");
  CHECK(poly::exact_div(w[wedge_index(0, 1)], g3) == G("2*a^2*e - a*b*d + b^3"));
  CHECK(w[wedge_index(0, 2)] == g3 * G("a^2*f + a*c^2 - a*c*d + b^2*c"));
  // Printed with the opposite overall sign; the bracket convention is fixed by (a^b) and (a^c).
  CHECK(w[wedge_index(1, 2)] == -(g3 * G("2*a*c*e - a*b*f - b*c^2")));
  CHECK(w[wedge_index(4, 5)] == g3 * G("e*d*f - e^3 - 2*b*f^2"));
  CHECK(extract_gamma(q, q2) == g3);
  CHECK_THROWS_AS(extract_gamma(q, q), DegenerateInput);
}

TEST_CASE("resultant oracle against the closed form") {
  std::mt19937_64 rng(23);
  Symbols qx{"Q", "x"};
  MultiPoly diff2 = poly::parse("(Q - x)^2", qx);
  for (int i = 0; i < 20; ++i) {
    auto qi = random_integer_params(rng);
    MultiPoly w2 = resultant_W2_oracle(qi);
    auto quotient = poly::try_exact_div(w2, diff2);
    REQUIRE(quotient);
    SymParams sym;
    for (std::size_t k = 0; k < 6; ++k) sym[k] = MultiPoly::constant(qx, qi[k]);
    auto q2 = q2_of(sym);
    std::array<Integer, 6> q2i;
    for (std::size_t k = 0; k < 6; ++k) q2i[k] = q2[k].constant_term();
    auto ratio = poly::rational_multiple(*quotient, S_poly(q2i));
    REQUIRE(ratio);
    CHECK(*ratio != 0);
  }
  CHECK_THROWS_AS(resultant_W2_oracle({0, 0, 0, 1, 2, 3}), DegenerateInput);
}

TEST_CASE("one recursion step gives gamma_4") {
  auto q = generic_symbolic();
  auto q2 = q2_of(q);
  auto q3 = step(q, q2, q);
  CHECK(extract_gamma(q, q3) == G("2*a*c*f - a*d*f + b^2*f + a*e^2 - 2*c^3 + c^2*d - 2*b*c*e"));
  SymParams zero_a = q;
  zero_a.a() = MultiPoly::constant(q.a(), 0);
  CHECK_THROWS_AS(step(q, q2, zero_a), ZeroDivisor);
}

TEST_CASE("numeric step matches iterated two-branch map") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    auto q = random_params(rng);
    auto q2 = q2_of(q);
    auto q3 = step(q, q2, q);
    auto q4 = step(q, q3, q2);
    cplx x0 = testgen::random_complex(rng, 1.5);
    auto [phi, eta, rho] = phi_eta_rho(q);
    auto quad = [](const std::array<cplx, 3>& c, cplx x) { return c[0] * x * x + c[1] * x + c[2]; };
    // Both roots of S(X, x0) = 0 seed the forward and backward orbits.
    cplx A = quad(phi, x0), B = quad(eta, x0), C = quad(rho, x0);
    cplx disc = std::sqrt(B * B - 4.0 * A * C);
    for (cplx x1 : {(-B + disc) / (2.0 * A), (-B - disc) / (2.0 * A)}) {
      std::vector<cplx> orbit{x0, x1};
      for (int k = 1; k < 4; ++k) {
        cplx xk = orbit[k];
        orbit.push_back(-quad(eta, xk) / quad(phi, xk) - orbit[k - 1]);
      }
      auto scale = [&](const NumParams& p, cplx X) {
        double s = 0;
        for (auto v : p.v) s += std::abs(v);
        return s * std::pow(1.0 + std::abs(X), 2) * std::pow(1.0 + std::abs(x0), 2);
      };
      CHECK(std::abs(eval_S(orbit[2], x0, q2)) < 1e-8 * scale(q2, orbit[2]));
      CHECK(std::abs(eval_S(orbit[3], x0, q3)) < 1e-8 * scale(q3, orbit[3]));
      CHECK(std::abs(eval_S(orbit[4], x0, q4)) < 1e-7 * scale(q4, orbit[4]));
    }
  }
}

TEST_CASE("K factor identity") {
  auto q = generic_symbolic();
  auto q2 = q2_of(q);
  auto q3 = step(q, q2, q);
  MultiPoly g3 = extract_gamma(q, q2);
  KFactor k = K_factor(q, q2, q, g3);

  Symbols all{"a", "b", "c", "d", "e", "f", "Q", "x"};
  auto up = [&](const MultiPoly& p) { return poly::rebase(p, all); };
  MultiPoly Q = poly::parse("Q", all), x = poly::parse("x", all);
  SymParams q3u;
  for (std::size_t i = 0; i < 6; ++i) q3u[i] = up(q3[i]);
  MultiPoly K = up(k.a) * Q * Q * x * x + up(k.b) * (Q + x) * Q * x + up(k.d) * Q * x + up(k.e) * (Q + x) + up(k.f);
  CHECK(eval_S(Q, x, q3u) == up(q3.c()) * (Q - x) * (Q - x) + up(g3) * up(g3) * K);

  // Next level, numerically.
  auto q4 = step(q, q3, q2);
  MultiPoly g4 = extract_gamma(q, q3);
  KFactor k4 = K_factor(q, q3, q2, g4);
  std::mt19937_64 rng(25);
  for (int i = 0; i < 10; ++i) {
    std::map<std::string, cplx> at;
    for (const auto& s : generic_symbols()) at[s] = testgen::random_complex(rng, 1.0);
    cplx Qv = testgen::random_complex(rng, 1.0), xv = testgen::random_complex(rng, 1.0);
    NumParams q4n;
    for (std::size_t j = 0; j < 6; ++j) q4n[j] = poly::evaluate(q4[j], at);
    auto ev = [&](const MultiPoly& p) { return poly::evaluate(p, at); };
    cplx Kv = ev(k4.a) * Qv * Qv * xv * xv + ev(k4.b) * (Qv + xv) * Qv * xv + ev(k4.d) * Qv * xv +
              ev(k4.e) * (Qv + xv) + ev(k4.f);
    cplx rhs = q4n.c() * (Qv - xv) * (Qv - xv) + ev(g4) * ev(g4) * Kv;
    CHECK(close(eval_S(Qv, xv, q4n), rhs, 1e-10));
  }
}

TEST_CASE("on gamma_3 = 0 the third iterate collapses to c_3 (Q - x)^2") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 20; ++i) {
    auto q = random_params(rng);
    q.f() = (q.b() * q.e() + 3.0 * q.c() * q.c() - q.c() * q.d()) / q.a();
    auto q3 = step(q, q2_of(q), q);
    for (std::size_t j : {0, 1, 3, 4, 5}) CHECK(std::abs(q3[j]) < 1e-9 * std::abs(q3.c()));
  }
}

TEST_CASE("Painleve V reduction") {
  auto pv = specialize_painleve_symbolic();
  Symbols rsv{"r", "s", "v"};
  CHECK(pv.a().ext() == poly::parse("s + v - r + 1", rsv));
  CHECK(pv.a().base() == poly::parse("r - 1", rsv));
  auto roots = painleve_p_roots(1.0, 1.0);
  for (auto p : roots) CHECK(std::abs(p * p - p + 1.0) < 1e-14);
  for (int root : {0, 1}) {
    auto q = specialize_painleve(1.0, 1.0, 1.0, root);
    cplx p = roots[static_cast<std::size_t>(root)];
    CHECK(close(q.a(), 2.0 * p, 1e-14));
  }
  // p-dependence of f + a cancels at r = 1, s = 0, v = 1.
  auto sum = pv.f() + pv.a();
  std::map<std::string, cplx> at{{"r", 1.0}, {"s", 0.0}, {"v", 1.0}};
  CHECK(poly::evaluate(sum.ext(), at) == cplx(0.0));
  auto n0 = specialize_painleve(1.0, 0.0, 1.0, 0), n1 = specialize_painleve(1.0, 0.0, 1.0, 1);
  CHECK(close(n0.f() + n0.a(), n1.f() + n1.a(), 1e-14));
  // Products of reduction coefficients reduce p^2 exactly.
  auto prod = pv.a() * pv.c();
  std::mt19937_64 rng(27);
  for (int i = 0; i < 10; ++i) {
    cplx r = testgen::random_complex(rng), s = testgen::random_complex(rng), v = testgen::random_complex(rng);
    auto nq = specialize_painleve(r, s, v, 0);
    cplx p = painleve_p_roots(r, v)[0];
    std::map<std::string, cplx> at2{{"r", r}, {"s", s}, {"v", v}};
    cplx value = poly::evaluate(prod.base(), at2) + poly::evaluate(prod.ext(), at2) * p;
    CHECK(close(value, nq.a() * nq.c(), 1e-12));
  }
}

TEST_CASE("gamma series to period 4 and the bracket factorization") {
  auto series = gamma_series(4);
  REQUIRE(series.entries.size() == 2);
  CHECK(series.entries[0].period == 3);
  CHECK(series.entries[0].level == 2);
  CHECK(series.entries[0].gamma == G("a*f - b*e - 3*c^2 + c*d"));
  auto q = series.trail.q[0];
  for (const auto& e : series.entries) {
    for (const auto& w : wedges(q, series.trail.q[static_cast<std::size_t>(e.level - 1)])) {
      CHECK(poly::try_exact_div(w, e.gamma));
    }
  }
  auto j = to_json(series);
  CHECK(j.size() == 2);
  CHECK(j[1]["period"] == 4);
  CHECK(poly::from_json(j[1]["gamma"]) == series.entries[1].gamma);
  CHECK(j[0]["normalization"] == "1");
  CHECK_THROWS_AS(gamma_series(2), UsageError);
}

TEST_CASE("Lotka-Volterra gammas") {
  auto series = gamma_series_lv(4);
  Symbols rs{"r", "s"};
  auto g3 = series.entries[0].gamma;
  CHECK(poly::rational_multiple(g3, poly::parse("r^2 + s^2 - r*s + r + s + 1", rs)));
  CHECK(poly::rational_multiple(series.entries[1].gamma,
                                poly::parse("3*r*s + s + s^3 - 3*s^2*r + r^3*s + 6*r^2*s - r^3", rs)));
  // The specialized trail, reduced by its common factor, still carries gamma_3 in its brackets.
  CHECK(extract_gamma(series.trail.q[0], series.trail.q[1]) == g3);
  CHECK(series.trail.removed_factor[1] == poly::parse("s", rs));
}
