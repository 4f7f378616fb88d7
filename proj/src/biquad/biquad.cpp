#include "invariety/biquad/biquad.hpp"

#include <algorithm>

#include "invariety/polycore/serialize.hpp"

namespace invariety::biquad {

using poly::Integer;
using poly::Symbols;

poly::Symbols generic_symbols() { return {"a", "b", "c", "d", "e", "f"}; }

SymParams generic_symbolic() {
  MultiPoly zero(generic_symbols());
  SymParams q;
  for (std::size_t i = 0; i < 6; ++i) q[i] = MultiPoly::variable(zero, std::string(1, kNames[i]));
  return q;
}

KFactor K_factor(const SymParams& q, const SymParams& qn, const SymParams& qm, const MultiPoly& gamma) {
  if (gamma.is_zero()) throw ZeroDivisor("K_factor with gamma = 0");
  WedgeTable<MultiPoly> w = wedges(q, qn);
  for (auto& x : w) x = poly::exact_div(x, gamma);
  SymParams hat;
  detail::wedge_part(w, qm, hat);
  return {hat.a(), hat.b(), hat.d(), hat.e(), hat.f()};
}

MultiPoly extract_gamma(const SymParams& q, const SymParams& qn) {
  WedgeTable<MultiPoly> w = wedges(q, qn);
  if (std::all_of(w.begin(), w.end(), [](const MultiPoly& x) { return x.is_zero(); })) {
    throw DegenerateInput("all brackets vanish: q_n is proportional to q");
  }
  return poly::normalize_lex_positive(poly::gcd_all(w));
}

MultiPoly S_poly(const std::array<Integer, 6>& q) {
  MultiPoly zero(Symbols{"Q", "x"});
  Params<MultiPoly> p;
  for (std::size_t i = 0; i < 6; ++i) p[i] = MultiPoly::constant(zero, q[i]);
  return eval_S(MultiPoly::variable(zero, "Q"), MultiPoly::variable(zero, "x"), p);
}

MultiPoly resultant_W2_oracle(const std::array<Integer, 6>& q) {
  if (q[0] == 0 && q[1] == 0 && q[2] == 0) {
    throw DegenerateInput("a = b = c = 0: S is not quadratic in either argument");
  }
  MultiPoly zero(Symbols{"Q", "X", "x"});
  Params<MultiPoly> p;
  for (std::size_t i = 0; i < 6; ++i) p[i] = MultiPoly::constant(zero, q[i]);
  MultiPoly Q = MultiPoly::variable(zero, "Q");
  MultiPoly X = MultiPoly::variable(zero, "X");
  MultiPoly x = MultiPoly::variable(zero, "x");
  MultiPoly res = poly::resultant_quadratic(eval_S(Q, X, p), eval_S(X, x, p), zero.index_of("X"));
  if (res.is_zero()) throw DegenerateInput("resultant vanishes identically");
  return poly::rebase(res, Symbols{"Q", "x"});
}

SymParams specialize_lv_symbolic() {
  Symbols rs{"r", "s"};
  auto P = [&](const char* text) { return poly::parse(text, rs); };
  return {{P("r + 1"), P("s - 2*r - 1"), P("r - s"), P("s^2 + r*s + 5*r - 2*s + 1"), P("-r*(s + 1)"), P("0")}};
}

NumParams specialize_lv(cplx r, cplx s) {
  return {{r + 1.0, s - 2.0 * r - 1.0, r - s, s * s + r * s + 5.0 * r - 2.0 * s + 1.0, -r * (s + 1.0), 0.0}};
}

namespace {

const Symbols kRsv{"r", "s", "v"};

// (ext, base) pairs of the Painleve V reduction: entry = ext * p + base.
const std::array<std::pair<const char*, const char*>, 6> kPainleve{{
    {"s + v - r + 1", "r - 1"},
    {"2*r - s - v - 2", "-2*r - s - v + 2"},
    {"1 - r", "r + s + v - 1"},
    {"4*(1 - r)", "2*(r - 1)*(s + 2) + (s + v)*(4 - s - v)"},
    {"2*r + s + v - 2", "(s + 1)*(v - 2*r - 1) + (v - 3)*(v - 1)"},
    {"-(r + r*s + v - 1)", "r + r*s*(r - v + 1) - (v - 1)^2"},
}};

}  // namespace

Params<QuadExtPoly> specialize_painleve_symbolic() {
  auto entry = [](std::size_t i) {
    return QuadExtPoly::painleve(poly::parse(kPainleve[i].second, kRsv), poly::parse(kPainleve[i].first, kRsv));
  };
  return {{entry(0), entry(1), entry(2), entry(3), entry(4), entry(5)}};
}

std::array<cplx, 2> painleve_p_roots(cplx r, cplx v) {
  cplx sum = r - v + 1.0;
  cplx disc = std::sqrt(sum * sum - 4.0 * r);
  return {(sum + disc) / 2.0, (sum - disc) / 2.0};
}

NumParams specialize_painleve(cplx r, cplx s, cplx v, int root) {
  if (root != 0 && root != 1) throw Error("painleve root index must be 0 or 1");
  cplx p = painleve_p_roots(r, v)[static_cast<std::size_t>(root)];
  std::map<std::string, cplx> at{{"r", r}, {"s", s}, {"v", v}};
  NumParams out;
  for (std::size_t i = 0; i < 6; ++i) {
    out[i] = poly::evaluate(poly::parse(kPainleve[i].first, kRsv), at) * p +
             poly::evaluate(poly::parse(kPainleve[i].second, kRsv), at);
  }
  return out;
}

SwellReport reduce_common_factor(const SymParams& q) {
  MultiPoly g = poly::gcd_all(q.v);
  Integer content = 0;
  for (const auto& x : q.v) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), poly::content(x).get_mpz_t());
  if (content == 0) throw DegenerateInput("all six parameters vanish");
  MultiPoly factor = g * content;
  if (factor.is_one()) return {q, factor};
  SymParams out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = poly::exact_div(q[i], factor);
  return {out, factor};
}

Trail build_trail(const SymParams& q, int max_level) {
  for (const auto& x : q.v) {
    if (!x.same_symbols(q[0])) throw SymbolMismatch("parameters over different symbol sets");
  }
  Trail trail;
  trail.q.push_back(q);
  trail.removed_factor.push_back(MultiPoly::constant(q[0], 1));
  if (max_level < 2) return trail;
  auto q2 = reduce_common_factor(q2_of(q));
  trail.q.push_back(q2.reduced);
  trail.removed_factor.push_back(q2.factor);
  for (int n = 2; n < max_level; ++n) {
    SymParams next;
    try {
      next = step(q, trail.q[n - 1], trail.q[n - 2]);
    } catch (const Error& e) {
      throw Error("recursion failed at level " + std::to_string(n + 1) + ": " + e.what());
    }
    auto reduced = reduce_common_factor(next);
    trail.q.push_back(reduced.reduced);
    trail.removed_factor.push_back(reduced.factor);
  }
  return trail;
}

namespace {

GammaEntry make_entry(int level, const MultiPoly& raw, const MultiPoly& gamma) {
  GammaEntry entry;
  entry.level = level;
  entry.period = level + 1;
  entry.gamma = poly::normalize_lex_positive(gamma);
  entry.raw = raw;
  auto ratio = poly::rational_multiple(entry.gamma, gamma);
  entry.normalization = ratio ? *ratio : mpq_class(1);
  return entry;
}

// Divides out every factor shared with `factor`, with multiplicity.
MultiPoly strip_factor(MultiPoly g, const MultiPoly& factor) {
  while (true) {
    MultiPoly h = poly::gcd(g, factor);
    if (h.is_constant()) return g;
    g = poly::exact_div(g, h);
  }
}

}  // namespace

MultiPoly strip_lower_periods(const MultiPoly& raw, int level, const std::vector<GammaEntry>& lower) {
  MultiPoly g = raw;
  for (const auto& entry : lower) {
    int m = entry.period;
    if (m == level + 1) continue;
    if ((level - 1) % m == 0 || (level + 1) % m == 0) {
      while (auto q = poly::try_exact_div(g, entry.gamma)) g = *std::move(q);
    }
  }
  return g;
}

GammaSeries gamma_series(int max_period) {
  if (max_period < 3) throw UsageError("max_period must be at least 3");
  GammaSeries series;
  SymParams q = generic_symbolic();
  series.trail = build_trail(q, max_period - 1);
  for (int level = 2; level < max_period; ++level) {
    MultiPoly raw = poly::gcd_all(wedges(q, series.trail.q[level - 1]));
    if (raw.is_zero()) throw DegenerateInput("all brackets vanish at level " + std::to_string(level));
    series.entries.push_back(make_entry(level, raw, strip_lower_periods(raw, level, series.entries)));
  }
  return series;
}

GammaSeries gamma_series_lv(int max_period) {
  GammaSeries generic = gamma_series(max_period);
  SymParams lv = specialize_lv_symbolic();
  const Symbols& rs = lv[0].symbols();
  std::map<std::string, MultiPoly> bindings;
  for (std::size_t i = 0; i < 6; ++i) bindings[std::string(1, kNames[i])] = lv[i];

  GammaSeries series;
  for (const auto& level_q : generic.trail.q) {
    SymParams specialized;
    for (std::size_t i = 0; i < 6; ++i) specialized[i] = poly::substitute(level_q[i], bindings, rs);
    auto reduced = reduce_common_factor(specialized);
    series.trail.q.push_back(reduced.reduced);
    series.trail.removed_factor.push_back(reduced.factor);
  }
  // The common factor of the specialized q_2 vanishes where the reduction
  // itself degenerates; it is not a periodicity condition.
  MultiPoly degenerate = poly::primitive_part(series.trail.removed_factor.at(1));
  for (const auto& entry : generic.entries) {
    MultiPoly substituted = poly::substitute(entry.gamma, bindings, rs);
    if (substituted.is_zero()) throw DegenerateInput("gamma vanishes identically on the specialization");
    series.entries.push_back(make_entry(entry.level, substituted, strip_factor(substituted, degenerate)));
  }
  return series;
}

nlohmann::json to_json(const GammaSeries& series) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : series.entries) {
    out.push_back({{"period", e.period}, {"gamma", poly::to_json(e.gamma)}, {"normalization", e.normalization.get_str()}});
  }
  return out;
}

}  // namespace invariety::biquad
