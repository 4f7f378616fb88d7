#include "invariety/polycore/quadext.hpp"

#include "invariety/error.hpp"

namespace invariety::poly {

QuadExtPoly::QuadExtPoly(MultiPoly base, MultiPoly ext, MultiPoly alpha, MultiPoly beta)
    : base_(std::move(base)), ext_(std::move(ext)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (!base_.same_symbols(ext_) || !base_.same_symbols(alpha_) || !base_.same_symbols(beta_)) {
    throw SymbolMismatch("QuadExtPoly parts over different symbol sets");
  }
}

QuadExtPoly QuadExtPoly::painleve(const MultiPoly& base, const MultiPoly& ext) {
  MultiPoly r = MultiPoly::variable(base, "r");
  MultiPoly v = MultiPoly::variable(base, "v");
  return QuadExtPoly(base, ext, r - v + MultiPoly::constant(base, 1), -r);
}

QuadExtPoly QuadExtPoly::lift(const QuadExtPoly& like, const MultiPoly& base) {
  return QuadExtPoly(base, MultiPoly::constant(base, 0), like.alpha_, like.beta_);
}

QuadExtPoly QuadExtPoly::generator(const QuadExtPoly& like) {
  return QuadExtPoly(MultiPoly::constant(like.base_, 0), MultiPoly::constant(like.base_, 1), like.alpha_, like.beta_);
}

void QuadExtPoly::check_relation(const QuadExtPoly& other) const {
  if (!(alpha_ == other.alpha_) || !(beta_ == other.beta_)) {
    throw SymbolMismatch("QuadExtPoly operands use different minimal relations");
  }
}

QuadExtPoly QuadExtPoly::operator-() const { return QuadExtPoly(-base_, -ext_, alpha_, beta_); }

QuadExtPoly operator+(const QuadExtPoly& x, const QuadExtPoly& y) {
  x.check_relation(y);
  return QuadExtPoly(x.base_ + y.base_, x.ext_ + y.ext_, x.alpha_, x.beta_);
}

QuadExtPoly operator-(const QuadExtPoly& x, const QuadExtPoly& y) {
  x.check_relation(y);
  return QuadExtPoly(x.base_ - y.base_, x.ext_ - y.ext_, x.alpha_, x.beta_);
}

QuadExtPoly operator*(const QuadExtPoly& x, const QuadExtPoly& y) {
  x.check_relation(y);
  MultiPoly pp = x.ext_ * y.ext_;
  MultiPoly base = x.base_ * y.base_;
  MultiPoly ext = x.base_ * y.ext_ + x.ext_ * y.base_;
  if (!pp.is_zero()) {
    base += pp * x.beta_;
    ext += pp * x.alpha_;
  }
  return QuadExtPoly(std::move(base), std::move(ext), x.alpha_, x.beta_);
}

QuadExtPoly operator*(const QuadExtPoly& x, long k) {
  return QuadExtPoly(x.base_ * k, x.ext_ * k, x.alpha_, x.beta_);
}

bool QuadExtPoly::operator==(const QuadExtPoly& other) const {
  return base_ == other.base_ && ext_ == other.ext_ && alpha_ == other.alpha_ && beta_ == other.beta_;
}

}  // namespace invariety::poly
