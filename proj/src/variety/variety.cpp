#include "invariety/variety/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "invariety/biquad/biquad.hpp"
#include "invariety/error.hpp"
#include "invariety/maps/maps.hpp"
#include "invariety/parallel.hpp"
#include "invariety/roots.hpp"

namespace invariety::variety {

using poly::MultiPoly;
using poly::Symbols;

MultiPoly mobius_gamma(int n) {
  if (n < 1) throw UsageError("period must be positive");
  MultiPoly h = MultiPoly::variable(Symbols{"h"}, "h");
  MultiPoly out = MultiPoly::constant(h, 1);
  MultiPoly power = h;
  for (int k = 1; k < n; ++k) {
    out += power;
    power *= h;
  }
  return out;
}

std::vector<MobiusRoot> mobius_gamma_roots(int n) {
  if (n < 1) throw UsageError("period must be positive");
  std::vector<MobiusRoot> out;
  for (int k = 1; k < n; ++k) {
    out.push_back({std::polar(1.0, 2 * std::numbers::pi * k / n), k, n / std::gcd(k, n)});
  }
  return out;
}

cplx gamma2_full(cplx h, cplx x, cplx b, cplx c) {
  cplx den = 1.0 - b * x;
  if (den == 0.0) throw PoleError("1-bx", "gamma2 at x = 1/b");
  return h + 1.0 + c * h * x * (c * h * x + b * x - 1.0 - h) / den;
}

MultiPoly gamma2_numerator() {
  const Symbols syms{"h", "x", "b", "c"};
  return poly::parse("(h + 1)*(1 - b*x) + c*h*x*(c*h*x + b*x - 1 - h)", syms);
}

VarietyCondition two_dim_condition(int n) {
  return {"2d-bc", n, mobius_gamma(n), "c = 0 map, invariant h = y(1-bx)"};
}

VarietyCondition lv_condition(int n) {
  if (n < 3 || n > 5) throw UsageError("Lotka-Volterra conditions are available for periods 3, 4 and 5");
  auto series = biquad::gamma_series_lv(n);
  for (const auto& e : series.entries) {
    if (e.period == n) return {"lv3", n, e.gamma, "invariants r = xyz, s = (1-x)(1-y)(1-z)"};
  }
  throw Error("gamma series has no entry for period " + std::to_string(n));
}

nlohmann::json to_json(const VarietyReport& r) {
  return {{"condition", r.condition},
          {"period", r.period},
          {"samples", r.samples},
          {"passes", r.passes},
          {"resamples", r.resamples},
          {"max_return_residual", r.max_return_residual},
          {"negative_control_min_distance", r.negative_control_min_distance},
          {"max_closure_residual", r.max_closure_residual},
          {"early_returns", r.early_returns},
          {"negative_control_returns", r.negative_control_returns}};
}

std::vector<cplx> lv_roots_in_r(const MultiPoly& gamma, cplx s) {
  std::size_t ri = gamma.index_of("r");
  std::vector<cplx> p;
  for (const auto& coef : gamma.coefficients_in(ri)) p.push_back(poly::evaluate(coef, {{"s", s}}));
  roots::trim(p);
  if (p.size() < 2) return {};
  auto rs = roots::aberth(p);
  for (auto& r : rs) {
    for (int it = 0; it < 3; ++it) {
      auto [v, d] = roots::horner2(p, r);
      if (d == 0.0) break;
      r -= v / d;
    }
  }
  return rs;
}

namespace {

using State = std::vector<cplx>;

template <class C>
double sup_norm(const std::vector<C>& a) {
  double m = 0;
  for (const C& v : a) m = std::max(m, mag(v));
  return m;
}

template <class C>
double distance(const std::vector<C>& a, const std::vector<C>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, mag(C(a[i] - b[i])));
  return m / (1.0 + sup_norm(b));
}

cplx random_in_disk(std::mt19937_64& gen, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(gen)), 2 * std::numbers::pi * u(gen));
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(std::uint64_t(i) >> 32)};
  return std::mt19937_64(seq);
}

struct Outcome {
  bool pass = false;
  bool early = false;
  std::size_t resamples = 0;
  double return_residual = 0.0;
  double closure = 0.0;
  double negative = 0.0;
};

template <class C>
struct Trajectory {
  std::vector<std::vector<C>> points;
  bool ok = false;
};

// n steps of the map; fails when a denominator comes within `margin` of zero.
template <class C, class NearPole>
Trajectory<C> run(const maps::MapSpec& spec, const std::vector<C>& start, int n, double margin,
                  NearPole&& near_pole) {
  Trajectory<C> t;
  t.points.push_back(start);
  try {
    for (int k = 0; k < n; ++k) {
      if (near_pole(t.points.back(), margin)) return t;
      t.points.push_back(maps::apply(spec, t.points.back()));
    }
  } catch (const PoleError&) {
    return t;
  }
  for (const auto& p : t.points) {
    if (!std::isfinite(sup_norm(p))) return t;
  }
  t.ok = true;
  return t;
}

template <class C>
void assess(Outcome& o, const Trajectory<C>& t, int n, const VerifyOptions& opt) {
  const auto& start = t.points.front();
  o.return_residual = distance(t.points[static_cast<std::size_t>(n)], start);
  for (int m = 1; m < n; ++m) {
    if (distance(t.points[static_cast<std::size_t>(m)], start) <= opt.return_tol) o.early = true;
  }
  o.pass = o.return_residual <= opt.return_tol && o.closure <= opt.closure_tol && !o.early;
}

template <class C>
double invariant_drift(const maps::MapSpec& spec, const Trajectory<C>& t) {
  auto ref = maps::invariants_of(spec, t.points.front());
  double drift = 0;
  for (std::size_t k = 1; k < t.points.size(); ++k) {
    auto inv = maps::invariants_of(spec, t.points[k]);
    for (std::size_t i = 0; i < inv.size(); ++i) {
      drift = std::max(drift, mag(C(inv[i] - ref[i])) / (1 + mag(ref[i])));
    }
  }
  return drift;
}

// Polynomial in s with integer coefficients, evaluated in C.
template <class C>
C eval_in_s(const MultiPoly& f, std::size_t si, const C& s) {
  using R = real_t<C>;
  C acc(0);
  for (const auto& t : f.terms()) {
    C term;
    if constexpr (std::is_same_v<C, cplx>) {
      term = C(t.coef.get_d());
    } else {
      term = C(R(t.coef.get_str()));
    }
    for (unsigned e = 0; e < t.mono[si]; ++e) term *= s;
    acc += term;
  }
  return acc;
}

void check_sample_request(int n, std::size_t samples) {
  if (n < 1) throw UsageError("period must be positive");
  if (samples == 0) throw UsageError("at least one sample is required");
}

VarietyReport aggregate(std::string condition, int n, const std::vector<Outcome>& outcomes,
                        const VerifyOptions& opt) {
  VarietyReport r;
  r.condition = std::move(condition);
  r.period = n;
  r.samples = outcomes.size();
  r.negative_control_min_distance = INFINITY;
  for (const auto& o : outcomes) {
    r.passes += o.pass;
    r.resamples += o.resamples;
    r.early_returns += o.early;
    r.max_return_residual = std::max(r.max_return_residual, o.return_residual);
    r.max_closure_residual = std::max(r.max_closure_residual, o.closure);
    r.negative_control_min_distance = std::min(r.negative_control_min_distance, o.negative);
    r.negative_control_returns += o.negative <= opt.negative_threshold;
  }
  return r;
}

}  // namespace

VarietyReport verify_variety_2d(int n, cplx b, int k, std::size_t samples, const VerifyOptions& opt) {
  check_sample_request(n, samples);
  if (n < 2) throw UsageError("the c = 0 varieties start at period 2");
  if (k < 1 || k >= n || std::gcd(k, n) != 1) {
    throw UsageError("k must lie in [1, n-1] and be coprime to n so the root has order n");
  }
  const auto spec = maps::make_spec(maps::MapId::TwoDimBC, {b, 0.0});
  const cplx H = std::polar(1.0, 2 * std::numbers::pi * k / n);
  auto near_pole = [&](const State& p, double margin) { return std::abs(1.0 - b * p[0] * p[1]) < margin; };

  std::vector<Outcome> outcomes(samples);
  parallel_for(samples, opt.workers, [&](std::size_t i) {
    auto gen = sample_rng(opt.seed, i);
    Outcome& o = outcomes[i];
    for (int attempt = 0;; ++attempt) {
      if (attempt >= opt.max_attempts) throw ConvergenceError("no usable sample point after repeated resampling");
      if (attempt > 0) ++o.resamples;
      cplx x = random_in_disk(gen, opt.sample_radius);
      cplx lift = 1.0 - b * x;
      if (std::abs(lift) < opt.pole_margin || std::abs(x) < opt.pole_margin) continue;
      State start{x, H / lift};
      if (std::abs(start[1] * lift - H) > opt.construction_tol) continue;
      Trajectory<cplx> t = run(spec, start, n, opt.pole_margin, near_pole);
      if (!t.ok) continue;

      // control: same x, an invariant value of no period up to n
      cplx h;
      double spread;
      do {
        h = random_in_disk(gen, opt.sample_radius);
        spread = INFINITY;
        cplx power = 1.0;
        for (int m = 1; m <= n; ++m) {
          power *= h;
          spread = std::min(spread, std::abs(power - 1.0));
        }
      } while (spread < 0.1);
      Trajectory<cplx> c = run(spec, State{x, h / lift}, n, opt.pole_margin, near_pole);
      if (!c.ok) continue;

      o.closure = invariant_drift(spec, t);
      assess(o, t, n, opt);
      o.negative = distance(c.points.back(), c.points.front());
      return;
    }
  });
  return aggregate("y(1-bx) = exp(2 pi i " + std::to_string(k) + "/" + std::to_string(n) + ")", n, outcomes, opt);
}

namespace {

// Roots in r of gamma(., s) polished by Newton's method in C.
template <class C>
std::vector<C> polished_roots(const MultiPoly& gamma, cplx s) {
  using std::abs;
  std::vector<C> out;
  const std::size_t si = gamma.index_of("s");
  const auto coeffs = gamma.coefficients_in(gamma.index_of("r"));
  std::vector<C> p;
  const C sc = from_cplx<C>(s);
  for (const auto& c : coeffs) p.push_back(eval_in_s(c, si, sc));
  for (cplx r0 : lv_roots_in_r(gamma, s)) {
    C r = from_cplx<C>(r0);
    for (int it = 0; it < 8; ++it) {
      auto [v, d] = roots::horner2(p, r);
      if (d == C(0)) break;
      r -= v / d;
    }
    out.push_back(r);
  }
  return out;
}

template <class C>
VarietyReport verify_lv_impl(int n, std::size_t samples, const VerifyOptions& opt, const MultiPoly& g) {
  using std::sqrt;
  const auto spec = maps::make_spec(maps::MapId::LV3, {});
  const C one(1);
  auto near_pole = [&](const std::vector<C>& p, double margin) {
    const C &x = p[0], &y = p[1], &z = p[2];
    return mag(C(one - y + y * z)) < margin || mag(C(one - z + z * x)) < margin || mag(C(one - x + x * y)) < margin;
  };
  // (x, y, z) on the level set (r, s): yz = r / x and y + z = 1 + yz - s / (1 - x).
  auto lift = [&](const C& x, const C& r, const C& s) -> std::optional<std::vector<C>> {
    C yz = r / x;
    C sigma = one + yz - s / (one - x);
    C disc = sigma * sigma - C(4) * yz;
    if (mag(disc) < opt.pole_margin * (1 + mag(sigma) * mag(sigma))) return std::nullopt;
    C root = sqrt(disc);
    C y = mag(C(sigma + root)) >= mag(C(sigma - root)) ? C((sigma + root) / C(2)) : C((sigma - root) / C(2));
    if (y == C(0)) return std::nullopt;
    std::vector<C> p{x, y, C(yz / y)};
    double er = mag(C(p[0] * p[1] * p[2] - r)) / (1 + mag(r));
    double es = mag(C((one - p[0]) * (one - p[1]) * (one - p[2]) - s)) / (1 + mag(s));
    if (std::max(er, es) > opt.construction_tol) return std::nullopt;
    return p;
  };

  std::vector<Outcome> outcomes(samples);
  parallel_for(samples, opt.workers, [&](std::size_t i) {
    auto gen = sample_rng(opt.seed, i);
    Outcome& o = outcomes[i];
    for (int attempt = 0;; ++attempt) {
      if (attempt >= opt.max_attempts) throw ConvergenceError("no usable sample point after repeated resampling");
      if (attempt > 0) ++o.resamples;
      cplx s = random_in_disk(gen, opt.sample_radius);
      auto rs = polished_roots<C>(g, s);
      if (rs.empty()) continue;
      C r = rs[gen() % rs.size()];
      cplx x = random_in_disk(gen, opt.sample_radius);
      if (std::abs(x) < opt.pole_margin || std::abs(1.0 - x) < opt.pole_margin) continue;
      auto start = lift(from_cplx<C>(x), r, from_cplx<C>(s));
      if (!start) continue;
      Trajectory<C> t = run(spec, *start, n, opt.pole_margin, near_pole);
      if (!t.ok) continue;

      cplx rc;
      do {
        rc = random_in_disk(gen, opt.sample_radius);
      } while (std::abs(poly::evaluate(g, {{"r", rc}, {"s", s}})) <= 0.1);
      auto cstart = lift(from_cplx<C>(x), from_cplx<C>(rc), from_cplx<C>(s));
      if (!cstart) continue;
      Trajectory<C> c = run(spec, *cstart, n, opt.pole_margin, near_pole);
      if (!c.ok) continue;

      o.closure = invariant_drift(spec, t);
      assess(o, t, n, opt);
      o.negative = distance(c.points.back(), c.points.front());
      return;
    }
  });
  return aggregate(poly::to_string(g) + " = 0", n, outcomes, opt);
}

}  // namespace

VarietyReport verify_variety_lv(int n, std::size_t samples, const VerifyOptions& opt,
                                const std::optional<MultiPoly>& gamma) {
  check_sample_request(n, samples);
  const MultiPoly g = gamma ? *gamma : lv_condition(n).gamma;
  if (!g.has_symbol("r") || !g.has_symbol("s")) throw UsageError("gamma must be a polynomial over {r, s}");
  switch (opt.precision) {
    case Precision::Double:
      return verify_lv_impl<cplx>(n, samples, opt, g);
    case Precision::Digits50:
      return verify_lv_impl<cplx50>(n, samples, opt, g);
    case Precision::Digits100:
      return verify_lv_impl<cplx100>(n, samples, opt, g);
  }
  throw Error("unknown precision");
}

}  // namespace invariety::variety
