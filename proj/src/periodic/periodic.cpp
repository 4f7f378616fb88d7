#include "invariety/periodic/periodic.hpp"

#include <cstdio>
#include <optional>

#include "invariety/parallel.hpp"

namespace invariety::periodic {

namespace {

struct Source {
  cplx h;
  std::optional<cplx> hp;
  double delta = 0.0;  // used when hp is absent: h' = (1 + delta) / h
};

template <class C>
C step(const C& h, const C& hp, const C& z) {
  C den = C(1) + h * z;
  if (den == C(0)) throw PoleError("1+hz", "");
  return z * (hp + z) / den;
}

template <class C>
C step_derivative(const C& h, const C& hp, const C& z) {
  C den = C(1) + h * z;
  return (hp + C(2) * z + h * z * z) / (den * den);
}

// Z^(m)(z) - z and its derivative.
template <class C>
std::pair<C, C> residual(const C& h, const C& hp, const C& z, int m) {
  C w = z, d(1);
  for (int k = 0; k < m; ++k) {
    d *= step_derivative(h, hp, w);
    w = step(h, hp, w);
  }
  return {w - z, d - C(1)};
}

// Newton on Z^(n)(z) - z; the result is kept only if it stays near the start.
template <class C>
C polish(const C& h, const C& hp, const C& z0, int n) {
  using std::abs;
  using R = real_t<C>;
  C z = z0;
  R last = std::numeric_limits<R>::max();
  for (int it = 0; it < 12; ++it) {
    auto [g, dg] = residual(h, hp, z, n);
    if (g == C(0) || dg == C(0)) break;
    C s = g / dg;
    R size = R(abs(s));
    if (!(size < last)) break;
    z -= s;
    last = size;
    if (size <= std::numeric_limits<R>::epsilon() * (1 + R(abs(z)))) break;
  }
  if (R(abs(C(z - z0))) > R(1e-6) * (1 + R(abs(z0)))) return z0;
  return z;
}

// p / p' for p(z) = (N_n(z) - z D_n(z)) / z, evaluating N_n, D_n and their
// derivatives through the composition recursion instead of the expanded
// coefficients, which cancel badly. The pair (N, D) is rescaled at every step;
// the ratio is invariant under a common factor.
template <class C>
roots::NewtonRatio<C> factored_ratio(const C& h, const C& hp, const C& z, int n) {
  using std::abs;
  using R = real_t<C>;
  C N = z, D(1), dN(1), dD(0);
  for (int k = 0; k < n; ++k) {
    C A = hp * D + N, B = D + h * N;
    C dA = hp * dD + dN, dB = dD + h * dN;
    C N1 = N * A, D1 = D * B;
    dN = dN * A + N * dA;
    dD = dD * B + D * dB;
    N = N1;
    D = D1;
    R s = std::max(R(abs(N)), R(abs(D)));
    if (s == 0) throw PoleError("N = D = 0", "");
    C inv = C(1) / C(s);
    N *= inv;
    D *= inv;
    dN *= inv;
    dD *= inv;
  }
  C P = N - z * D;
  if (P == C(0)) return {C(0), true};
  C dP = dN - D - z * dD;
  return {P * z / (dP * z - P), false};
}

template <class C>
int minimal_period(const C& h, const C& hp, const C& z, int n, double ident_tol) {
  using std::abs;
  using R = real_t<C>;
  for (int m : divisors(n)) {
    auto [g, dg] = residual(h, hp, z, m);
    R scale = 1 + R(abs(z));
    // A small Newton step alone is not enough: it is also small next to a pole.
    if (R(abs(g)) <= std::numeric_limits<R>::epsilon() * 64 * scale) return m;
    if (R(abs(g)) < R(ident_tol) * scale && dg != C(0) && R(abs(g / dg)) < R(ident_tol) * scale) return m;
  }
  return n;
}

template <class C>
std::optional<PeriodicResult> attempt(const Source& src, int n, const PeriodicOptions& opt, Precision tier) {
  using std::abs;
  using std::sqrt;
  C h = from_cplx<C>(src.h);
  C hp = src.hp ? from_cplx<C>(*src.hp) : (C(1) + C(src.delta)) / h;

  auto f = compose_n(h, hp, n, opt.n_max);
  std::vector<C> P = roots::add(f.num, roots::scale(roots::multiply(f.den, std::vector<C>{C(0), C(1)}), C(-1)));
  roots::trim(P);
  if (P.empty()) throw DegenerateInput("Z^(n) = z identically (h^n = 1 in the integrable limit)");

  std::vector<C> found;
  try {
    if (opt.dense_horner || P.size() <= 3) {
      found = roots::aberth(P);
    } else {
      // P(0) = 0 always; the remaining roots come from P / z.
      std::vector<C> reduced(P.begin() + 1, P.end());
      found = roots::aberth_iterate(roots::initial_guesses(reduced),
                                    [&](const C& z) { return factored_ratio(h, hp, z, n); });
      found.push_back(C(0));
    }
  } catch (const ConvergenceError&) {
    return std::nullopt;
  } catch (const PoleError&) {
    return std::nullopt;
  }

  // The identification tolerance is meant for double precision. Extended tiers
  // exist to separate clustered points (near-fossil points at small delta sit
  // 1e-8 apart), so they use a tolerance scaled to the working precision.
  using R = real_t<C>;
  double ident = opt.ident_tol;
  if (tier != Precision::Double) {
    ident = std::min(ident, static_cast<double>(sqrt(std::numeric_limits<R>::epsilon())));
  }

  PeriodicResult out;
  out.precision_used = tier;
  std::vector<C> exact;
  try {
    for (auto& z : found) {
      z = polish(h, hp, z, n);
      int period = minimal_period(h, hp, z, n, ident);
      out.all_roots.push_back(to_cplx(z));
      out.root_period.push_back(period);
      if (period == n) exact.push_back(z);
    }
    for (std::size_t i = 0; i < exact.size(); ++i) {
      cplx zi = to_cplx(exact[i]);
      for (std::size_t j = 0; j < i; ++j) {
        if (mag(C(exact[i] - exact[j])) < ident * (1 + std::abs(zi))) return std::nullopt;
      }
      PeriodicPoint p;
      p.z = zi;
      p.period = n;
      auto [g, dg] = residual(h, hp, exact[i], n);
      p.residual = mag(g);
      C mult(1), w = exact[i];
      for (int k = 0; k < n; ++k) {
        mult *= step_derivative(h, hp, w);
        w = step(h, hp, w);
      }
      p.multiplier = to_cplx(mult);
      p.cls = classify(p.multiplier, opt.class_tol);
      out.max_residual = std::max(out.max_residual, p.residual);
      out.points.push_back(p);
    }
  } catch (const PoleError&) {
    return std::nullopt;
  }
  if (!(out.max_residual < opt.residual_tol)) return std::nullopt;
  return out;
}

PeriodicResult solve(const Source& src, int n, const PeriodicOptions& opt) {
  if (n < 1) throw UsageError("period must be positive");
  Precision tier = opt.precision;
  if (opt.auto_precision) {
    cplx hp = src.hp ? *src.hp : (1.0 + src.delta) / src.h;
    if (std::abs(src.h * hp - 1.0) < 1e-3) tier = Precision::Digits100;
  }
  while (true) {
    std::optional<PeriodicResult> r;
    switch (tier) {
      case Precision::Double:
        r = attempt<cplx>(src, n, opt, tier);
        break;
      case Precision::Digits50:
        r = attempt<cplx50>(src, n, opt, tier);
        break;
      case Precision::Digits100:
        r = attempt<cplx100>(src, n, opt, tier);
        break;
    }
    if (r) return *std::move(r);
    if (!opt.auto_precision || tier == Precision::Digits100) {
      throw ConvergenceError("periodic points of period " + std::to_string(n) + " not resolved at " +
                             to_string(tier) + " precision");
    }
    tier = tier == Precision::Double ? Precision::Digits50 : Precision::Digits100;
  }
}

}  // namespace

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Attracting:
      return "attracting";
    case PointClass::Repelling:
      return "repelling";
    case PointClass::Neutral:
      return "neutral";
  }
  return "?";
}

PointClass classify(cplx multiplier, double tol) {
  double m = std::abs(multiplier);
  if (m > 1 + tol) return PointClass::Repelling;
  if (m < 1 - tol) return PointClass::Attracting;
  return PointClass::Neutral;
}

PeriodicResult find_periodic_points(cplx h, cplx hp, int n, const PeriodicOptions& opt) {
  return solve({h, hp, 0.0}, n, opt);
}

std::vector<PeriodicPoint> periodic_points(cplx h, cplx hp, int n, const PeriodicOptions& opt) {
  return find_periodic_points(h, hp, n, opt).points;
}

cplx cycle_multiplier(cplx h, cplx hp, cplx z, int period) {
  cplx mult = 1.0;
  for (int k = 0; k < period; ++k) {
    mult *= step_derivative(h, hp, z);
    z = step(h, hp, z);
  }
  return mult;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

long expected_count(int n) {
  if (n < 1) throw UsageError("period must be positive");
  if (n == 1) return 2;
  long count = (1L << n) - 2;
  for (int d : divisors(n)) {
    if (d > 1) count -= expected_count(d);
  }
  return count;
}

long expected_count_closed(int n) {
  if (n < 1) throw UsageError("period must be positive");
  if (n == 1) return 2;
  long count = 1L << n;
  long r = 0;
  for (int d : divisors(n)) {
    if (d == 1) continue;
    count -= 1L << d;
    ++r;
  }
  return count + 2 * (r - 1);
}

long expected_count_mobius(int n) {
  if (n < 1) throw UsageError("period must be positive");
  auto mu = [](int m) {
    int sign = 1;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) return 0;
      sign = -sign;
    }
    return m > 1 ? -sign : sign;
  };
  long count = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) count += mu(n / d) * (1L << d);
  }
  return count;
}

std::vector<cplx> fossil_points(cplx h, int n) {
  if (n < 1) throw UsageError("period must be positive");
  std::vector<cplx> out{-1.0 / h};
  cplx p = 1.0;
  for (int k = 0; k <= n - 2; ++k) {
    out.push_back(-p);
    p *= h;
  }
  return out;
}

double distance_to_set(cplx z, const std::vector<cplx>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx s : set) best = std::min(best, std::abs(z - s));
  return best;
}

TransitionTable transition_scan(cplx h, int n, const std::vector<double>& delta_grid, unsigned workers,
                                const PeriodicOptions& opt) {
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    if (!(delta_grid[i] >= 0.0)) throw UsageError("delta grid values must be non-negative");
    if (i > 0 && !(delta_grid[i] < delta_grid[i - 1])) throw UsageError("delta grid must be strictly decreasing");
  }
  auto fossils = fossil_points(h, n);
  std::vector<PeriodicResult> results(delta_grid.size());
  parallel_for(delta_grid.size(), workers, [&](std::size_t i) { results[i] = solve({h, {}, delta_grid[i]}, n, opt); });

  TransitionTable table;
  table.h = h;
  table.n = n;
  for (std::size_t i = 0; i < delta_grid.size(); ++i) {
    TransitionCell cell;
    cell.delta = delta_grid[i];
    cell.precision_used = results[i].precision_used;
    for (const auto& p : results[i].points) {
      double d = distance_to_set(p.z, fossils);
      table.rows.push_back({delta_grid[i], p, d});
      cell.count++;
      cell.max_dist = std::max(cell.max_dist, d);
      cell.max_abs_multiplier = std::max(cell.max_abs_multiplier, std::abs(p.multiplier));
    }
    table.cells.push_back(cell);
  }
  return table;
}

std::string csv_header() { return "delta,period,re_z,im_z,re_multiplier,im_multiplier,class,dist_to_fossil"; }

std::string csv_row(double delta, const PeriodicPoint& p, double dist) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%.17g,%.17g,%.17g,%s,%.17g", delta, p.period, p.z.real(), p.z.imag(),
                p.multiplier.real(), p.multiplier.imag(), to_string(p.cls).c_str(), dist);
  return buf;
}

}  // namespace invariety::periodic
