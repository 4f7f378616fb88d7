#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "invariety/error.hpp"
#include "invariety/numeric.hpp"

namespace invariety::roots {

// Dense univariate polynomials are stored lowest degree first.
template <class C>
void trim(std::vector<C>& p) {
  while (!p.empty() && p.back() == C(0)) p.pop_back();
}

template <class C>
C horner(const std::vector<C>& p, const C& z) {
  C acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

// Value and first derivative in one pass.
template <class C>
std::pair<C, C> horner2(const std::vector<C>& p, const C& z) {
  C v(0), d(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

template <class C>
std::vector<C> multiply(const std::vector<C>& a, const std::vector<C>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<C> out(a.size() + b.size() - 1, C(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == C(0)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class C>
std::vector<C> add(const std::vector<C>& a, const std::vector<C>& b) {
  std::vector<C> out(std::max(a.size(), b.size()), C(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

template <class C>
std::vector<C> scale(std::vector<C> a, const C& k) {
  for (auto& x : a) x *= k;
  return a;
}

struct RootOptions {
  int max_iterations = 2000;
  // Convergence when every correction is below tol * (1 + |z|); 0 picks a
  // multiple of the working epsilon.
  double tol = 0.0;
};

namespace detail {

// Starting radii from the upper convex hull of (i, log|p_i|) (Newton polygon).
inline std::vector<std::pair<std::size_t, double>> hull_radii(const std::vector<double>& logmag) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < logmag.size(); ++i) {
    if (!std::isfinite(logmag[i])) continue;
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull.back();
      double cross = (logmag[b] - logmag[a]) * double(i - a) - (logmag[i] - logmag[a]) * double(b - a);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    std::size_t a = hull[k], b = hull[k + 1];
    out.push_back({b - a, std::exp((logmag[a] - logmag[b]) / double(b - a))});
  }
  return out;
}

}  // namespace detail

// Starting points on the Newton-polygon circles of p (lowest degree first),
// one per root; p must have a nonzero constant term.
template <class C>
std::vector<C> initial_guesses(const std::vector<C>& p) {
  using std::abs;
  using std::log;
  using R = real_t<C>;
  std::vector<double> logmag(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    logmag[i] = p[i] == C(0) ? -std::numeric_limits<double>::infinity() : static_cast<double>(log(R(abs(p[i]))));
  }
  std::vector<C> z;
  double phase = 0.4;
  for (auto [count, radius] : detail::hull_radii(logmag)) {
    for (std::size_t k = 0; k < count; ++k) {
      double theta = 2 * std::numbers::pi * double(k) / double(count) + phase;
      z.push_back(from_cplx<C>(std::polar(radius, theta)));
    }
    phase += 1.1;
  }
  return z;
}

// Newton correction p(z)/p'(z) at one point; at_root reports that p(z) is
// already at the rounding level of its evaluation.
template <class C>
struct NewtonRatio {
  C ratio;
  bool at_root = false;
};

// Aberth-Ehrlich simultaneous iteration from the given starting points. A
// root is frozen once its correction falls below tol (1 + |z|), or once the
// correction stops shrinking below the square root of tol.
template <class C, class Eval>
std::vector<C> aberth_iterate(std::vector<C> z, Eval&& eval, const RootOptions& opt = {}) {
  using std::abs;
  using std::sqrt;
  using R = real_t<C>;
  const std::size_t deg = z.size();
  const R eps = std::numeric_limits<R>::epsilon();
  const R tol = opt.tol > 0 ? R(opt.tol) : R(eps * 64);
  const R loose = sqrt(tol);
  std::vector<char> done(deg, 0);
  std::vector<R> last(deg, std::numeric_limits<R>::max());
  for (int it = 0; it < opt.max_iterations; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < deg; ++i) {
      if (done[i]) continue;
      NewtonRatio<C> nr = eval(z[i]);
      if (nr.at_root) {
        done[i] = 1;
        continue;
      }
      C sum(0);
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) sum += C(1) / (z[i] - z[j]);
      }
      C w = nr.ratio / (C(1) - nr.ratio * sum);
      z[i] -= w;
      R size = R(abs(w));
      R scale = 1 + R(abs(z[i]));
      if (size <= tol * scale || (size <= loose * scale && size >= last[i])) {
        done[i] = 1;
      } else {
        all = false;
      }
      last[i] = size;
    }
    if (all) return z;
  }
  throw ConvergenceError("Aberth iteration did not converge for degree " + std::to_string(deg));
}

// All roots of p (lowest degree first), Horner evaluation. Exact zero roots
// are split off first.
template <class C>
std::vector<C> aberth(std::vector<C> p, const RootOptions& opt = {}) {
  using std::abs;
  using R = real_t<C>;
  trim(p);
  if (p.empty()) throw DegenerateInput("root finding on the zero polynomial");
  std::vector<C> out;
  std::size_t zeros = 0;
  while (zeros < p.size() && p[zeros] == C(0)) ++zeros;
  for (std::size_t i = 0; i < zeros; ++i) out.push_back(C(0));
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(zeros));
  if (p.size() == 1) return out;

  const R eps = std::numeric_limits<R>::epsilon();
  std::vector<R> absp(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) absp[i] = R(abs(p[i]));
  auto eval = [&](const C& z) {
    auto [v, d] = horner2(p, z);
    R az = R(abs(z)), bound(0);
    for (auto k = absp.rbegin(); k != absp.rend(); ++k) bound = bound * az + *k;
    if (R(abs(v)) <= eps * 16 * bound) return NewtonRatio<C>{C(0), true};
    return NewtonRatio<C>{v / d, false};
  };
  auto z = aberth_iterate(initial_guesses(p), eval, opt);
  out.insert(out.end(), z.begin(), z.end());
  return out;
}

}  // namespace invariety::roots
