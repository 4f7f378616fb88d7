#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "invariety/polycore/monomial.hpp"

namespace invariety::poly {

using Integer = mpz_class;
using Symbols = std::vector<std::string>;

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients over an ordered symbol set.
///
/// Terms are kept sorted in descending graded-lex order and never hold a zero
/// coefficient, so structural equality is mathematical equality. Values are
/// immutable once built; the symbol list is shared between copies.
class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Integer coef;
  };

  MultiPoly();
  explicit MultiPoly(Symbols symbols);
  MultiPoly(std::shared_ptr<const Symbols> symbols, std::vector<Term> terms);

  static MultiPoly constant(const MultiPoly& like, const Integer& value);
  static MultiPoly constant(Symbols symbols, const Integer& value);
  static MultiPoly variable(Symbols symbols, std::string_view name);
  // The named symbol over the same symbol set as `like`.
  static MultiPoly variable(const MultiPoly& like, std::string_view name);
  static MultiPoly monomial(const MultiPoly& like, const Monomial& mono, const Integer& coef);

  const Symbols& symbols() const { return *symbols_; }
  const std::shared_ptr<const Symbols>& symbols_ptr() const { return symbols_; }
  std::size_t symbol_count() const { return symbols_->size(); }
  std::size_t index_of(std::string_view name) const;
  bool has_symbol(std::string_view name) const;
  bool same_symbols(const MultiPoly& other) const;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  const Term& leading_term() const;
  const Integer& leading_coef() const { return leading_term().coef; }
  // Coefficient of the constant monomial (zero when absent).
  Integer constant_term() const;
  Integer coefficient(const Monomial& mono) const;

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool uses(std::size_t var) const { return degree_in(var) > 0; }

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const Integer& rhs);

  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator-(MultiPoly lhs, const MultiPoly& rhs) { return lhs -= rhs; }
  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);
  friend MultiPoly operator*(MultiPoly lhs, const Integer& rhs) { return lhs *= rhs; }
  friend MultiPoly operator*(const Integer& lhs, MultiPoly rhs) { return rhs *= lhs; }
  friend MultiPoly operator*(MultiPoly lhs, long rhs) { return lhs *= Integer(rhs); }
  friend MultiPoly operator*(long lhs, MultiPoly rhs) { return rhs *= Integer(lhs); }

  bool operator==(const MultiPoly& other) const;

  MultiPoly pow(unsigned k) const;
  // Divides every coefficient by `d`; throws InexactDivision if any is not a multiple.
  MultiPoly divide_coefficients(const Integer& d) const;

  // Coefficients of var^0, var^1, ... each expressed over the same symbol set.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(const MultiPoly& like, std::size_t var, std::span<const MultiPoly> coeffs);
  // Substitutes an integer for one symbol; the symbol set is unchanged.
  MultiPoly evaluate_at(std::size_t var, const Integer& value) const;
  MultiPoly derivative(std::size_t var) const;

 private:
  void check_compatible(const MultiPoly& other, const char* op) const;

  std::shared_ptr<const Symbols> symbols_;
  std::vector<Term> terms_;
};

MultiPoly add(const MultiPoly& f, const MultiPoly& g);
MultiPoly mul(const MultiPoly& f, const MultiPoly& g);

// q with f == g * q, or std::nullopt when g does not divide f exactly.
std::optional<MultiPoly> try_exact_div(const MultiPoly& f, const MultiPoly& g);
// Throws InexactDivision when no exact quotient exists and ZeroDivisor when g == 0.
MultiPoly exact_div(const MultiPoly& f, const MultiPoly& g);

// Integer content (positive gcd of all coefficients); zero for the zero polynomial.
Integer content(const MultiPoly& f);
// f divided by its content, with positive leading coefficient.
MultiPoly primitive_part(const MultiPoly& f);

// Greatest common divisor, primitive with positive grlex-leading coefficient.
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);
// The subresultant-PRS route alone, without the heuristic fast path.
MultiPoly gcd_prs(const MultiPoly& f, const MultiPoly& g);
// Heuristic (evaluation/interpolation) route; std::nullopt when it gives up.
std::optional<MultiPoly> gcd_heuristic(const MultiPoly& f, const MultiPoly& g);
MultiPoly gcd_all(std::span<const MultiPoly> polys);

// g * gp_n - gp * g_n
MultiPoly wedge(const MultiPoly& g, const MultiPoly& g_n, const MultiPoly& gp, const MultiPoly& gp_n);

// Resultant of two polynomials of degree <= 2 in `var` (Sylvester determinant).
MultiPoly resultant_quadratic(const MultiPoly& p, const MultiPoly& q, std::size_t var);

// Exact composition: every symbol of f must either be bound or exist in the
// target symbol set, where it is kept as is.
MultiPoly substitute(const MultiPoly& f, const std::map<std::string, MultiPoly>& bindings,
                     const Symbols& target);
// Numeric evaluation; every symbol used by f must be bound.
std::complex<double> evaluate(const MultiPoly& f, const std::map<std::string, std::complex<double>>& bindings);

// Moves f onto a symbol set that contains all of f's used symbols.
MultiPoly rebase(const MultiPoly& f, const Symbols& target);

// Primitive, sign fixed so the lex-greatest monomial has a positive coefficient.
MultiPoly normalize_lex_positive(const MultiPoly& f);

// If f == c * g for a nonzero rational c, returns c as (num, den) with den > 0.
std::optional<mpq_class> rational_multiple(const MultiPoly& f, const MultiPoly& g);

std::string to_string(const MultiPoly& f);
// Parses expressions such as "a*f - b*e - 3*c^2 + c*d" over the given symbols.
MultiPoly parse(std::string_view text, const Symbols& symbols);

}  // namespace invariety::poly
