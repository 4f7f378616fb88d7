#pragma once

#include <complex>
#include <random>

#include "invariety/polycore/multipoly.hpp"

namespace testgen {

using invariety::poly::Integer;
using invariety::poly::Monomial;
using invariety::poly::MultiPoly;
using invariety::poly::Symbols;

// Random sparse polynomial with up to `max_terms` terms, per-variable degree
// <= max_deg and coefficients in [-coef, coef].
inline MultiPoly random_poly(std::mt19937_64& rng, const MultiPoly& zero, int max_terms = 5, unsigned max_deg = 3,
                             long coef = 9) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  std::uniform_int_distribution<long> c(-coef, coef);
  MultiPoly out = MultiPoly::constant(zero, 0);
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < zero.symbol_count(); ++v) m.set(v, deg(rng) % (max_deg + 1));
    out += MultiPoly::monomial(zero, m, c(rng));
  }
  return out;
}

inline MultiPoly random_nonzero(std::mt19937_64& rng, const MultiPoly& zero, int max_terms = 5, unsigned max_deg = 3,
                                long coef = 9) {
  while (true) {
    MultiPoly p = random_poly(rng, zero, max_terms, max_deg, coef);
    if (!p.is_zero()) return p;
  }
}

inline std::complex<double> random_complex(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return {u(rng), u(rng)};
}

}  // namespace testgen
