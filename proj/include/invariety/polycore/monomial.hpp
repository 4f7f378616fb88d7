#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace invariety::poly {

inline constexpr std::size_t kMaxSymbols = 16;

// Exponent vector with a cached total degree. Unused slots stay zero, so two
// monomials over the same symbol set compare correctly without knowing the
// symbol count.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const unsigned> exponents);

  static Monomial unit(std::size_t var, unsigned power = 1);

  unsigned operator[](std::size_t var) const { return exp_[var]; }
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  void set(std::size_t var, unsigned power);

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // Requires divides(other) == true; returns other / *this.
  Monomial quotient_of(const Monomial& other) const;
  Monomial pow(unsigned k) const;
  Monomial without(std::size_t var) const;

  bool operator==(const Monomial& other) const = default;

  // Graded lexicographic comparison: total degree first, then the exponent of
  // the first symbol, then the second, and so on.
  friend bool grlex_less(const Monomial& lhs, const Monomial& rhs);
  friend bool lex_less(const Monomial& lhs, const Monomial& rhs);

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxSymbols> exp_{};
  std::uint32_t degree_ = 0;
};

bool grlex_less(const Monomial& lhs, const Monomial& rhs);
bool lex_less(const Monomial& lhs, const Monomial& rhs);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct GrlexGreater {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const { return grlex_less(rhs, lhs); }
};

}  // namespace invariety::poly
