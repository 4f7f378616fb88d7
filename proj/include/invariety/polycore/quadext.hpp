#pragma once

#include "invariety/polycore/multipoly.hpp"

namespace invariety::poly {

// base + ext * p, where p satisfies p^2 = alpha * p + beta. All four parts
// share one symbol set.
class QuadExtPoly {
 public:
  QuadExtPoly(MultiPoly base, MultiPoly ext, MultiPoly alpha, MultiPoly beta);

  // The relation p^2 = (r - v + 1) p - r over symbols containing r and v.
  static QuadExtPoly painleve(const MultiPoly& base, const MultiPoly& ext);
  // An element with zero p-part over the same relation as `like`.
  static QuadExtPoly lift(const QuadExtPoly& like, const MultiPoly& base);
  static QuadExtPoly generator(const QuadExtPoly& like);

  const MultiPoly& base() const { return base_; }
  const MultiPoly& ext() const { return ext_; }
  const MultiPoly& alpha() const { return alpha_; }
  const MultiPoly& beta() const { return beta_; }
  bool is_zero() const { return base_.is_zero() && ext_.is_zero(); }

  QuadExtPoly operator-() const;
  friend QuadExtPoly operator+(const QuadExtPoly& x, const QuadExtPoly& y);
  friend QuadExtPoly operator-(const QuadExtPoly& x, const QuadExtPoly& y);
  friend QuadExtPoly operator*(const QuadExtPoly& x, const QuadExtPoly& y);
  friend QuadExtPoly operator*(const QuadExtPoly& x, long k);
  friend QuadExtPoly operator*(long k, const QuadExtPoly& x) { return x * k; }
  bool operator==(const QuadExtPoly& other) const;

 private:
  void check_relation(const QuadExtPoly& other) const;

  MultiPoly base_;
  MultiPoly ext_;
  MultiPoly alpha_;
  MultiPoly beta_;
};

}  // namespace invariety::poly
