#include <algorithm>
#include <vector>

#include "invariety/error.hpp"
#include "invariety/polycore/multipoly.hpp"

namespace invariety::poly {

namespace {

constexpr int kHeuristicTries = 6;

Integer max_norm(const MultiPoly& f) {
  Integer m = 0;
  for (const auto& t : f.terms()) {
    if (abs(t.coef) > m) m = abs(t.coef);
  }
  return m;
}

// Coefficient of the lex-leading monomial.
Integer lex_leading_coef(const MultiPoly& f) {
  const auto* best = &f.terms().front();
  for (const auto& t : f.terms()) {
    if (lex_less(best->mono, t.mono)) best = &t;
  }
  return best->coef;
}

MultiPoly positive_lead(MultiPoly f) {
  if (!f.is_zero() && f.leading_coef() < 0) return -f;
  return f;
}

// Symmetric residue of c modulo m, in (-m/2, m/2].
Integer symmetric_mod(const Integer& c, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

// Rebuilds a polynomial in `var` from the image h(x) by reading off
// balanced base-x digits of every coefficient.
MultiPoly interpolate(MultiPoly h, const Integer& x, std::size_t var) {
  std::vector<MultiPoly> digits;
  while (!h.is_zero()) {
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : h.terms()) {
      Integer r = symmetric_mod(t.coef, x);
      if (r != 0) terms.push_back({t.mono, r});
    }
    MultiPoly g(h.symbols_ptr(), std::move(terms));
    digits.push_back(g);
    h = (h - g).divide_coefficients(x);
  }
  MultiPoly out = MultiPoly::from_coefficients(h, var, digits);
  return positive_lead(out);
}

std::optional<MultiPoly> heuristic(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return positive_lead(g);
  if (g.is_zero()) return positive_lead(f);
  std::size_t var = kMaxSymbols;
  for (std::size_t v = 0; v < f.symbol_count(); ++v) {
    if (f.uses(v) || g.uses(v)) {
      var = v;
      break;
    }
  }
  Integer cf = content(f);
  Integer cg = content(g);
  Integer common = gcd(cf, cg);
  if (var == kMaxSymbols) return MultiPoly::constant(f, common);

  MultiPoly pf = f.divide_coefficients(common);
  MultiPoly pg = g.divide_coefficients(common);
  Integer fn = max_norm(pf);
  Integer gn = max_norm(pg);
  Integer bound = 2 * std::min(fn, gn) + 29;
  Integer x = std::min(bound, Integer(99 * sqrt(bound)));
  Integer lc_bound = 2 * std::min(Integer(fn / abs(lex_leading_coef(pf))), Integer(gn / abs(lex_leading_coef(pg)))) + 2;
  x = std::max(x, lc_bound);

  for (int attempt = 0; attempt < kHeuristicTries; ++attempt) {
    MultiPoly ff = pf.evaluate_at(var, x);
    MultiPoly gg = pg.evaluate_at(var, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      auto image = heuristic(ff, gg);
      if (!image) return std::nullopt;
      MultiPoly h = primitive_part(interpolate(*image, x, var));
      if (!h.is_zero()) {
        if (try_exact_div(pf, h) && try_exact_div(pg, h)) return h * common;
      }
      // Second chance through the cofactor of f.
      if (auto cff_image = try_exact_div(ff, *image)) {
        MultiPoly cff = primitive_part(interpolate(*cff_image, x, var));
        if (!cff.is_zero()) {
          if (auto h2 = try_exact_div(pf, cff)) {
            if (!h2->is_zero() && try_exact_div(pg, *h2)) return positive_lead(*h2) * common;
          }
        }
      }
    }
    x = 73794 * x * sqrt(sqrt(x)) / 27011;
  }
  return std::nullopt;
}

// Content with respect to one variable: gcd of its coefficient polynomials.
MultiPoly content_in(const MultiPoly& f, std::size_t var) {
  auto coeffs = f.coefficients_in(var);
  std::erase_if(coeffs, [](const MultiPoly& c) { return c.is_zero(); });
  return gcd_all(coeffs);
}

// Pseudo-remainder of a by b in `var`: lc(b)^(deg a - deg b + 1) * a mod b.
MultiPoly prem(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  unsigned db = b.degree_in(var);
  auto bc = b.coefficients_in(var);
  const MultiPoly& lb = bc.back();
  unsigned da = a.degree_in(var);
  int remaining = static_cast<int>(da) - static_cast<int>(db) + 1;
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    unsigned dr = r.degree_in(var);
    MultiPoly lr = r.coefficients_in(var).back();
    MultiPoly shift = MultiPoly::monomial(r, Monomial::unit(var, dr - db), 1);
    r = lb * r - lr * shift * b;
    --remaining;
  }
  if (remaining > 0) r = r * lb.pow(static_cast<unsigned>(remaining));
  return r;
}

MultiPoly prs(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return positive_lead(primitive_part(g));
  if (g.is_zero()) return positive_lead(primitive_part(f));
  MultiPoly pf = primitive_part(f);
  MultiPoly pg = primitive_part(g);
  if (pf.is_constant() || pg.is_constant()) return MultiPoly::constant(f, 1);

  // A variable present in only one argument can be eliminated by taking content.
  for (std::size_t v = 0; v < f.symbol_count(); ++v) {
    if (pf.uses(v) && !pg.uses(v)) return prs(content_in(pf, v), pg);
    if (pg.uses(v) && !pf.uses(v)) return prs(pf, content_in(pg, v));
  }

  std::size_t var = kMaxSymbols;
  unsigned best = 0;
  for (std::size_t v = 0; v < f.symbol_count(); ++v) {
    if (!pf.uses(v)) continue;
    unsigned d = std::max(pf.degree_in(v), pg.degree_in(v));
    if (var == kMaxSymbols || d < best) {
      var = v;
      best = d;
    }
  }

  MultiPoly cf = content_in(pf, var);
  MultiPoly cg = content_in(pg, var);
  MultiPoly c = prs(cf, cg);
  MultiPoly a = exact_div(pf, cf);
  MultiPoly b = exact_div(pg, cg);
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);

  MultiPoly gg = MultiPoly::constant(f, 1);
  MultiPoly hh = MultiPoly::constant(f, 1);
  while (true) {
    unsigned delta = a.degree_in(var) - b.degree_in(var);
    MultiPoly r = prem(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return c;
    a = b;
    b = exact_div(r, gg * hh.pow(delta));
    gg = a.coefficients_in(var).back();
    if (delta == 0) {
      // h is unchanged
    } else {
      hh = exact_div(gg.pow(delta), hh.pow(delta - 1));
    }
  }
  MultiPoly result = exact_div(b, content_in(b, var));
  return positive_lead(primitive_part(c * result));
}

}  // namespace

Integer content(const MultiPoly& f) {
  Integer c = 0;
  for (const auto& t : f.terms()) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coef.get_mpz_t());
    if (c == 1) break;
  }
  return c;
}

MultiPoly primitive_part(const MultiPoly& f) {
  if (f.is_zero()) return f;
  return positive_lead(f.divide_coefficients(content(f)));
}

std::optional<MultiPoly> gcd_heuristic(const MultiPoly& f, const MultiPoly& g) {
  if (!f.same_symbols(g)) throw SymbolMismatch("symbol-set mismatch in gcd");
  auto h = heuristic(f, g);
  if (!h) return std::nullopt;
  return positive_lead(primitive_part(*h));
}

MultiPoly gcd_prs(const MultiPoly& f, const MultiPoly& g) {
  if (!f.same_symbols(g)) throw SymbolMismatch("symbol-set mismatch in gcd");
  return prs(f, g);
}

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (!f.same_symbols(g)) throw SymbolMismatch("symbol-set mismatch in gcd");
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  if (f.is_constant() || g.is_constant()) return MultiPoly::constant(f, 1);
  if (f == g) return primitive_part(f);
  if (auto h = gcd_heuristic(f, g)) return *h;
  return prs(f, g);
}

MultiPoly gcd_all(std::span<const MultiPoly> polys) {
  std::vector<const MultiPoly*> order;
  for (const auto& p : polys) {
    if (!p.is_zero()) order.push_back(&p);
  }
  if (order.empty()) return polys.empty() ? MultiPoly() : MultiPoly::constant(polys.front(), 0);
  std::stable_sort(order.begin(), order.end(), [](const MultiPoly* a, const MultiPoly* b) {
    if (a->total_degree() != b->total_degree()) return a->total_degree() < b->total_degree();
    return a->size() < b->size();
  });
  MultiPoly g = primitive_part(*order.front());
  for (std::size_t i = 1; i < order.size() && !g.is_constant(); ++i) {
    if (try_exact_div(*order[i], g)) continue;
    g = gcd(g, *order[i]);
  }
  return g.is_constant() ? MultiPoly::constant(g, 1) : g;
}

}  // namespace invariety::poly
