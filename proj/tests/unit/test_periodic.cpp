#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "invariety/maps/maps.hpp"
#include "invariety/periodic/periodic.hpp"

using namespace invariety;
using namespace invariety::periodic;

namespace {

const cplx kH{0.6, 0.1};
const cplx kHp{2.1, 0.0};

cplx iterate(cplx h, cplx hp, cplx z, int n) {
  auto spec = maps::make_spec(maps::MapId::NormalForm, {h, hp});
  for (int k = 0; k < n; ++k) z = maps::apply(spec, std::vector<cplx>{z})[0];
  return z;
}

// Every root of Z^(n)(z) = z found from a grid of Newton starts.
std::vector<cplx> brute_force_roots(cplx h, cplx hp, int n, double radius) {
  std::vector<cplx> found;
  const int steps = 60;
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; j <= steps; ++j) {
      cplx z(-radius + 2 * radius * i / steps, -radius + 2 * radius * j / steps);
      bool ok = true;
      for (int it = 0; it < 100 && ok; ++it) {
        try {
          cplx w = z, d = 1.0;
          for (int k = 0; k < n; ++k) {
            d *= maps::normal_form_derivative(h, hp, w);
            w = iterate(h, hp, w, 1);
          }
          cplx s = (w - z) / (d - 1.0);
          z -= s;
          if (std::abs(s) < 1e-14 * (1 + std::abs(z))) break;
        } catch (const PoleError&) {
          ok = false;
        }
      }
      if (!ok || !std::isfinite(z.real()) || !std::isfinite(z.imag())) continue;
      if (std::abs(iterate(h, hp, z, n) - z) > 1e-9) continue;
      bool seen = false;
      for (cplx f : found) seen = seen || std::abs(f - z) < 1e-6;
      if (!seen) found.push_back(z);
    }
  }
  return found;
}

}  // namespace

TEST_CASE("compose_n") {
  auto f1 = compose_n<cplx>(kH, kHp, 1);
  CHECK(f1.num == std::vector<cplx>{0.0, kHp, 1.0});
  CHECK(f1.den == std::vector<cplx>{1.0, kH});
  CHECK(compose_n<cplx>(kH, kHp, 2).degree() == 4);
  for (int n = 1; n <= 6; ++n) CHECK(compose_n<cplx>(kH, kHp, n).degree() == (1u << n));

  // The expanded coefficients are ill-conditioned, so evaluate them at 100 digits.
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 5; ++n) {
    auto f = compose_n<cplx100>(from_cplx<cplx100>(kH), from_cplx<cplx100>(kHp), n);
    for (int i = 0; i < 20; ++i) {
      cplx z = testgen::random_complex(rng, 0.5);
      cplx expect = iterate(kH, kHp, z, n);
      CHECK(std::abs(to_cplx(f(from_cplx<cplx100>(z))) - expect) <= 1e-9 * (1 + std::abs(expect)));
    }
  }

  cplx h{0.8, 0.3};
  for (int n = 1; n <= 6; ++n) {
    auto f = compose_n<cplx>(h, 1.0 / h, n);
    REQUIRE(f.num.size() == 2);
    REQUIRE(f.den.size() == 1);
    CHECK(std::abs(f.num[1] / f.den[0] - std::pow(h, -n)) < 1e-12 * std::abs(std::pow(h, -n)));
  }

  CHECK_THROWS_AS(compose_n<cplx>(kH, kHp, 0), UsageError);
  CHECK_THROWS_AS(compose_n<cplx>(kH, kHp, 11), UsageError);
  CHECK_THROWS_AS(compose_n<cplx>(1e150, 1e150, 3), PrecisionAlarm);
}

TEST_CASE("expected counts") {
  const long printed_prefix[] = {2, 6, 12, 30};  // n = 2..5
  for (int n = 2; n <= 5; ++n) CHECK(expected_count(n) == printed_prefix[n - 2]);
  CHECK(expected_count(7) == 126);
  for (int n = 1; n <= 12; ++n) CHECK(expected_count(n) == expected_count_mobius(n));
  for (int n = 1; n <= 7; ++n) CHECK(expected_count_closed(n) == expected_count(n));
  // With two nontrivial divisors in a chain (2 | 4 | 8) the closed form drops
  // the nested subtraction.
  CHECK(expected_count_closed(8) != expected_count(8));
  CHECK(divisors(12) == std::vector<int>{1, 2, 3, 4, 6});
}

TEST_CASE("fixed points") {
  auto r = find_periodic_points(kH, kHp, 1);
  REQUIRE(r.points.size() == 2);
  auto mult = maps::fixed_point_multipliers(kH, kHp);
  cplx zp = maps::fixed_point_zp(kH, kHp);
  bool saw_zero = false, saw_zp = false;
  for (const auto& p : r.points) {
    if (std::abs(p.z) < 1e-12) {
      saw_zero = true;
      CHECK(std::abs(p.multiplier - mult[0]) < 1e-12);
    } else {
      saw_zp = std::abs(p.z - zp) < 1e-12;
      CHECK(std::abs(p.multiplier - mult[1]) < 1e-10 * std::abs(mult[1]));
    }
  }
  CHECK(saw_zero);
  CHECK(saw_zp);
}

TEST_CASE("periodic point counts and cycle properties") {
  auto spec = maps::make_spec(maps::MapId::NormalForm, {kH, kHp});
  for (int n = 2; n <= 7; ++n) {
    auto r = find_periodic_points(kH, kHp, n);
    CHECK(static_cast<long>(r.points.size()) == expected_count(n));
    CHECK(r.all_roots.size() == (1u << n));
    CHECK(r.max_residual < 1e-8);
    for (const auto& p : r.points) {
      CHECK(std::abs(iterate(kH, kHp, p.z, n) - p.z) < 1e-8 * (1 + std::abs(p.z)));
      cplx next = maps::apply(spec, std::vector<cplx>{p.z})[0];
      cplx again = cycle_multiplier(kH, kHp, next, n);
      CHECK(std::abs(again - p.multiplier) <= 1e-6 * std::abs(p.multiplier));
      CHECK(p.cls == classify(p.multiplier, 1e-8));
    }
  }
}

TEST_CASE("divisor closure and disjointness") {
  std::vector<std::vector<cplx>> by_period(7);
  for (int n = 1; n <= 6; ++n) {
    auto r = find_periodic_points(kH, kHp, n);
    for (const auto& p : r.points) by_period[n].push_back(p.z);
    for (int m : divisors(n)) {
      // every period-m point is among the raw roots of Z^(n) = z, labelled m
      for (cplx z : by_period[m]) {
        bool found = false;
        for (std::size_t i = 0; i < r.all_roots.size(); ++i) {
          found = found || (std::abs(r.all_roots[i] - z) < 1e-7 * (1 + std::abs(z)) && r.root_period[i] == m);
        }
        CHECK(found);
      }
    }
  }
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; m < n; ++m) {
      for (cplx a : by_period[n]) {
        for (cplx b : by_period[m]) CHECK(std::abs(a - b) > 1e-7);
      }
    }
  }
}

TEST_CASE("roots match a brute-force grid search") {
  for (int n = 1; n <= 3; ++n) {
    auto f = compose_n<cplx>(kH, kHp, n);
    std::vector<cplx> P = roots::add(f.num, roots::scale(roots::multiply(f.den, std::vector<cplx>{0.0, 1.0}), cplx(-1)));
    roots::trim(P);
    double bound = 0;
    for (std::size_t i = 0; i + 1 < P.size(); ++i) bound = std::max(bound, std::abs(P[i] / P.back()));
    auto grid = brute_force_roots(kH, kHp, n, 1 + bound);
    auto r = find_periodic_points(kH, kHp, n);
    REQUIRE(grid.size() == r.all_roots.size());
    for (cplx z : r.all_roots) {
      int matches = 0;
      for (cplx g : grid) matches += std::abs(g - z) < 1e-6;
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("factored and expanded root finding agree") {
  PeriodicOptions dense;
  dense.dense_horner = true;
  for (int n = 2; n <= 4; ++n) {
    auto a = find_periodic_points(kH, kHp, n);
    auto b = find_periodic_points(kH, kHp, n, dense);
    REQUIRE(a.points.size() == b.points.size());
    for (const auto& p : a.points) {
      double best = 1e9;
      for (const auto& q : b.points) best = std::min(best, std::abs(p.z - q.z));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("fossil points") {
  cplx h = 2.0;
  CHECK(fossil_points(h, 2) == std::vector<cplx>{-0.5, -1.0});
  CHECK(fossil_points(h, 4) == std::vector<cplx>{-0.5, -1.0, -2.0, -4.0});
  CHECK(distance_to_set(-1.5, fossil_points(h, 4)) == doctest::Approx(0.5));
}

TEST_CASE("periodic points approach the fossils linearly in delta") {
  const cplx h = 0.7;
  for (int n = 2; n <= 5; ++n) {
    auto fossils = fossil_points(h, n);
    double previous = 0;
    for (double delta : {1e-4, 5e-5}) {
      auto r = find_periodic_points(h, (1.0 + delta) / h, n);
      CHECK(static_cast<long>(r.points.size()) == expected_count(n));
      CHECK(r.precision_used == Precision::Digits100);
      double worst = 0;
      for (const auto& p : r.points) worst = std::max(worst, distance_to_set(p.z, fossils));
      CHECK(worst < 10 * delta);
      if (previous > 0) {
        double ratio = previous / worst;
        CHECK(ratio > 2 * 0.8);
        CHECK(ratio < 2 * 1.2);
      }
      previous = worst;
    }
  }
}

TEST_CASE("transition scan") {
  auto table = transition_scan(0.7, 4, {1e-2, 1e-3, 1e-4, 0.0}, 2);
  REQUIRE(table.cells.size() == 4);
  CHECK(table.cells[0].precision_used == Precision::Double);
  CHECK(table.cells[2].precision_used == Precision::Digits100);
  for (std::size_t i = 0; i < 3; ++i) CHECK(table.cells[i].count == 12);
  CHECK(table.cells[3].count == 0);
  for (std::size_t i = 1; i < 3; ++i) CHECK(table.cells[i].max_dist < table.cells[i - 1].max_dist);
  std::size_t rows_at_zero = 0;
  for (const auto& row : table.rows) rows_at_zero += row.delta == 0.0;
  CHECK(rows_at_zero == 0);

  auto serial = transition_scan(0.7, 4, {1e-2, 1e-3}, 1);
  auto parallel = transition_scan(0.7, 4, {1e-2, 1e-3}, 4);
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (std::size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(csv_row(serial.rows[i].delta, serial.rows[i].point, serial.rows[i].dist_to_fossil) ==
          csv_row(parallel.rows[i].delta, parallel.rows[i].point, parallel.rows[i].dist_to_fossil));
  }
  CHECK(csv_header() == "delta,period,re_z,im_z,re_multiplier,im_multiplier,class,dist_to_fossil");
  CHECK_THROWS_AS(transition_scan(0.7, 4, {1e-3, 1e-2}), UsageError);
}

TEST_CASE("integrable limit with h^n = 1 is degenerate") {
  cplx h{0.0, 1.0};
  CHECK_THROWS_AS(find_periodic_points(h, 1.0 / h, 4), DegenerateInput);
  CHECK(find_periodic_points(h, 1.0 / h, 3).points.empty());
}
