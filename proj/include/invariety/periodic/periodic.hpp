#pragma once

#include <string>
#include <vector>

#include "invariety/error.hpp"
#include "invariety/numeric.hpp"
#include "invariety/roots.hpp"

namespace invariety::periodic {

// Z^(n) = num / den for the normal form z -> z (h' + z) / (1 + h z).
template <class C>
struct RationalFunc1D {
  std::vector<C> num, den;  // lowest degree first

  std::size_t degree() const { return std::max(num.size(), den.size()) - 1; }
  C operator()(const C& z) const { return roots::horner(num, z) / roots::horner(den, z); }
};

inline constexpr int kDefaultMaxPeriod = 10;

// Repeated substitution N <- N (h' D + N), D <- D (D + h N). The new factors
// h' D + N and D + h N are proportional exactly when h h' = 1, and are then
// cancelled, which leaves Z^(n) = h^-n z.
template <class C>
RationalFunc1D<C> compose_n(const C& h, const C& hp, int n, int n_max = kDefaultMaxPeriod) {
  using std::abs;
  using R = real_t<C>;
  if (n < 1 || n > n_max) {
    throw UsageError("period " + std::to_string(n) + " outside [1, " + std::to_string(n_max) + "]");
  }
  const R eps = std::numeric_limits<R>::epsilon();
  const bool integrable = R(abs(C(1) - h * hp)) <= eps * 4 * (1 + R(abs(h * hp)));
  RationalFunc1D<C> f{{C(0), C(1)}, {C(1)}};
  const R budget = std::numeric_limits<R>::max() / R(1e6);
  for (int k = 0; k < n; ++k) {
    if (integrable) {
      f.num = roots::scale(f.num, hp);
      continue;
    }
    auto grow = roots::add(roots::scale(f.den, hp), f.num);
    auto shrink = roots::add(f.den, roots::scale(f.num, h));
    f.num = roots::multiply(f.num, grow);
    f.den = roots::multiply(f.den, shrink);
    for (const auto* part : {&f.num, &f.den}) {
      for (const auto& c : *part) {
        R m = R(abs(c));
        if (!(m < budget)) throw PrecisionAlarm("coefficient magnitude exceeds the working precision at step " +
                                                std::to_string(k + 1));
      }
    }
  }
  roots::trim(f.num);
  roots::trim(f.den);
  return f;
}

enum class PointClass { Attracting, Repelling, Neutral };
std::string to_string(PointClass c);
PointClass classify(cplx multiplier, double tol);

struct PeriodicPoint {
  cplx z;
  int period = 0;
  cplx multiplier;
  PointClass cls = PointClass::Neutral;
  double residual = 0.0;  // |Z^(period)(z) - z|
};

struct PeriodicOptions {
  // With auto_precision the tier starts here and escalates on failure; the
  // start is raised to 100 digits when |h h' - 1| < 1e-3.
  Precision precision = Precision::Double;
  bool auto_precision = true;
  double class_tol = 1e-8;
  double residual_tol = 1e-8;
  // Roots identify when |z1 - z2| < ident_tol (1 + |z1|); also the Newton-step
  // threshold for membership in a divisor period.
  double ident_tol = 1e-7;
  int n_max = kDefaultMaxPeriod;
  // Root-find with Horner on the expanded coefficients instead of the
  // factored evaluation; the expanded form loses accuracy quickly with n.
  bool dense_horner = false;
};

struct PeriodicResult {
  std::vector<PeriodicPoint> points;  // exact period n
  std::vector<cplx> all_roots;        // every finite root of Z^(n)(z) = z
  std::vector<int> root_period;       // minimal period of each entry of all_roots
  Precision precision_used = Precision::Double;
  double max_residual = 0.0;
};

PeriodicResult find_periodic_points(cplx h, cplx hp, int n, const PeriodicOptions& opt = {});
std::vector<PeriodicPoint> periodic_points(cplx h, cplx hp, int n, const PeriodicOptions& opt = {});

// Product of one-step derivatives along the cycle through z.
cplx cycle_multiplier(cplx h, cplx hp, cplx z, int period);

// Number of exact period-n points in the finite plane: the recursion
// 2^n - 2 - (sum over nontrivial divisors), the closed form
// 2^n - sum 2^nu_i + 2(r - 1), and Moebius inversion of sum_{d | n} #_d = 2^n.
long expected_count(int n);
long expected_count_closed(int n);
long expected_count_mobius(int n);
std::vector<int> divisors(int n);  // proper divisors, ascending, including 1

// (-1/h, -1, -h, ..., -h^(n-2)).
std::vector<cplx> fossil_points(cplx h, int n);
double distance_to_set(cplx z, const std::vector<cplx>& set);

struct TransitionRow {
  double delta = 0.0;
  PeriodicPoint point;
  double dist_to_fossil = 0.0;
};

struct TransitionCell {
  double delta = 0.0;
  Precision precision_used = Precision::Double;
  std::size_t count = 0;
  double max_dist = 0.0;
  double max_abs_multiplier = 0.0;
};

struct TransitionTable {
  cplx h;
  int n = 0;
  std::vector<TransitionRow> rows;
  std::vector<TransitionCell> cells;
};

// h' = (1 + delta) / h for each delta of a strictly decreasing, non-negative
// grid. Cells are computed in parallel on `workers` threads.
TransitionTable transition_scan(cplx h, int n, const std::vector<double>& delta_grid, unsigned workers = 1,
                                const PeriodicOptions& opt = {});

std::string csv_header();
std::string csv_row(double delta, const PeriodicPoint& p, double dist);

}  // namespace invariety::periodic
