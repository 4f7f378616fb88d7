#include "invariety/polycore/monomial.hpp"

#include <limits>

#include "invariety/error.hpp"

namespace invariety::poly {

namespace {

std::uint16_t checked_exponent(unsigned long value) {
  if (value > std::numeric_limits<std::uint16_t>::max()) {
    throw Error("monomial exponent overflow");
  }
  return static_cast<std::uint16_t>(value);
}

}  // namespace

Monomial::Monomial(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxSymbols) {
    throw Error("too many symbols for a monomial (max " + std::to_string(kMaxSymbols) + ")");
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    exp_[i] = checked_exponent(exponents[i]);
    degree_ += exponents[i];
  }
}

Monomial Monomial::unit(std::size_t var, unsigned power) {
  Monomial m;
  m.set(var, power);
  return m;
}

void Monomial::set(std::size_t var, unsigned power) {
  degree_ -= exp_[var];
  exp_[var] = checked_exponent(power);
  degree_ += power;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    out.exp_[i] = checked_exponent(static_cast<unsigned long>(exp_[i]) + other.exp_[i]);
  }
  out.degree_ = degree_ + other.degree_;
  return out;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (exp_[i] > other.exp_[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    out.exp_[i] = static_cast<std::uint16_t>(other.exp_[i] - exp_[i]);
  }
  out.degree_ = other.degree_ - degree_;
  return out;
}

Monomial Monomial::pow(unsigned k) const {
  Monomial out;
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    out.exp_[i] = checked_exponent(static_cast<unsigned long>(exp_[i]) * k);
  }
  out.degree_ = degree_ * k;
  return out;
}

Monomial Monomial::without(std::size_t var) const {
  Monomial out = *this;
  out.set(var, 0);
  return out;
}

bool grlex_less(const Monomial& lhs, const Monomial& rhs) {
  if (lhs.degree_ != rhs.degree_) return lhs.degree_ < rhs.degree_;
  return lex_less(lhs, rhs);
}

bool lex_less(const Monomial& lhs, const Monomial& rhs) {
  for (std::size_t i = 0; i < kMaxSymbols; ++i) {
    if (lhs.exp_[i] != rhs.exp_[i]) return lhs.exp_[i] < rhs.exp_[i];
  }
  return false;
}

std::size_t Monomial::hash() const {
  // FNV-1a over the exponent slots.
  std::uint64_t h = 1469598103934665603ULL;
  for (auto e : exp_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace invariety::poly
