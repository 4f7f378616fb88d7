#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariety/error.hpp"
#include "invariety/polycore/multipoly.hpp"
#include "invariety/polycore/quadext.hpp"

namespace invariety::biquad {

using poly::MultiPoly;
using poly::QuadExtPoly;
using cplx = std::complex<double>;

// q = (a, b, c, d, e, f) of
//   S(X, x; q) = a X^2 x^2 + b (X + x) X x + c (X - x)^2 + d X x + e (X + x) + f.
template <class T>
struct Params {
  std::array<T, 6> v;

  T& a() { return v[0]; }
  T& b() { return v[1]; }
  T& c() { return v[2]; }
  T& d() { return v[3]; }
  T& e() { return v[4]; }
  T& f() { return v[5]; }
  const T& a() const { return v[0]; }
  const T& b() const { return v[1]; }
  const T& c() const { return v[2]; }
  const T& d() const { return v[3]; }
  const T& e() const { return v[4]; }
  const T& f() const { return v[5]; }

  const T& operator[](std::size_t i) const { return v[i]; }
  T& operator[](std::size_t i) { return v[i]; }
  bool operator==(const Params& other) const { return v == other.v; }
};

using SymParams = Params<MultiPoly>;
using NumParams = Params<cplx>;

inline constexpr std::array<char, 6> kNames{'a', 'b', 'c', 'd', 'e', 'f'};

// Ring helpers so the closed forms can be written once for every coefficient type.
namespace ring {
inline MultiPoly scale(const MultiPoly& x, long k) { return x * k; }
inline QuadExtPoly scale(const QuadExtPoly& x, long k) { return x * k; }
template <class R>
std::complex<R> scale(const std::complex<R>& x, long k) {
  return x * static_cast<R>(k);
}
inline bool is_zero(const MultiPoly& x) { return x.is_zero(); }
inline bool is_zero(const QuadExtPoly& x) { return x.is_zero(); }
template <class R>
bool is_zero(const std::complex<R>& x) {
  return x == std::complex<R>(0);
}
inline MultiPoly divide(const MultiPoly& n, const MultiPoly& d) { return poly::exact_div(n, d); }
template <class R>
std::complex<R> divide(const std::complex<R>& n, const std::complex<R>& d) {
  if (d == std::complex<R>(0)) throw ZeroDivisor("division by a zero parameter");
  return n / d;
}
inline MultiPoly halve(const MultiPoly& x) { return x.divide_coefficients(2); }
template <class R>
std::complex<R> halve(const std::complex<R>& x) {
  return x / static_cast<R>(2);
}
}  // namespace ring

// Symbolic q over symbols a..f.
SymParams generic_symbolic();
poly::Symbols generic_symbols();

template <class T>
T eval_S(const T& X, const T& x, const Params<T>& q) {
  T Xx = X * x;
  T diff = X - x;
  return q.a() * Xx * Xx + q.b() * (X + x) * Xx + q.c() * diff * diff + q.d() * Xx + q.e() * (X + x) + q.f();
}

template <class T>
struct Quadratics {
  std::array<T, 3> phi;  // a x^2 + b x + c
  std::array<T, 3> eta;  // b x^2 + (d - 2c) x + e
  std::array<T, 3> rho;  // c x^2 + e x + f
};

template <class T>
Quadratics<T> phi_eta_rho(const Params<T>& q) {
  return {{q.a(), q.b(), q.c()}, {q.b(), q.d() - ring::scale(q.c(), 2), q.e()}, {q.c(), q.e(), q.f()}};
}

// Closed-form parameters of the second iterate.
template <class T>
Params<T> q2_of(const Params<T>& q) {
  using ring::scale;
  const T &a = q.a(), &b = q.b(), &c = q.c(), &d = q.d(), &e = q.e(), &f = q.f();
  T ae_cb = a * e - c * b;
  T ad_2ac_b2 = a * d - scale(a * c, 2) - b * b;
  T be_cd_2c2 = b * e - c * d + scale(c * c, 2);
  T af_c2 = a * f - c * c;
  T bf_ce = b * f - c * e;
  T mid = scale(a * f, 2) - b * e + c * d - scale(c * c, 4);
  T fd_2fc_e2 = f * d - scale(f * c, 2) - e * e;
  Params<T> out;
  out.a() = ae_cb * ae_cb - ad_2ac_b2 * be_cd_2c2;
  out.b() = ae_cb * mid - ad_2ac_b2 * bf_ce;
  out.c() = af_c2 * af_c2 - ae_cb * bf_ce;
  out.d() = scale(af_c2 * af_c2, 4) - scale(ae_cb * bf_ce, 2) - be_cd_2c2 * be_cd_2c2 - ad_2ac_b2 * fd_2fc_e2;
  out.e() = bf_ce * mid - fd_2fc_e2 * ae_cb;
  out.f() = bf_ce * bf_ce - fd_2fc_e2 * be_cd_2c2;
  return out;
}

// All 15 brackets (g ^ g')_n = g g'_n - g' g_n, indexed by wedge_index(i, j), i < j.
template <class T>
using WedgeTable = std::array<T, 15>;

constexpr std::size_t wedge_index(std::size_t i, std::size_t j) {
  // row offsets for i = 0..4: 0, 5, 9, 12, 14
  return i * 5 - i * (i - 1) / 2 + (j - i - 1);
}

template <class T>
WedgeTable<T> wedges(const Params<T>& q, const Params<T>& qn) {
  WedgeTable<T> w;
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = i + 1; j < 6; ++j) w[wedge_index(i, j)] = q[i] * qn[j] - q[j] * qn[i];
  }
  return w;
}

namespace detail {

// The wedge-only part of the recursion: everything except c_{n+1}.
template <class T>
void wedge_part(const WedgeTable<T>& w, const Params<T>& qm, Params<T>& out) {
  using ring::divide;
  using ring::halve;
  using ring::scale;
  auto W = [&](int i, int j) -> const T& { return w[wedge_index(i, j)]; };
  enum { A, B, C, D, E, F };
  const T &ab = W(A, B), &ac = W(A, C), &ad = W(A, D), &ae = W(A, E), &af = W(A, F);
  const T &bc = W(B, C), &bd = W(B, D), &be = W(B, E), &bf = W(B, F);
  const T &cd = W(C, D), &ce = W(C, E), &cf = W(C, F);
  const T &de = W(D, E), &df = W(D, F);
  const T& ef = W(E, F);
  T fe = -ef, fc = -cf, fb = -bf, fd = -df, ec = -ce, eb = -be;

  out.a() = divide(ac * ac - ab * bc, qm.a());
  {
    T num = scale(qm.b() * (ab * bc - ac * ac), 2) + scale(qm.a() * ac * (ae + scale(bc, 2)), 2) -
            qm.a() * (ab * be - ab * cd + ad * bc);
    out.b() = halve(divide(divide(num, qm.a()), qm.a()));
  }
  out.f() = divide(fc * fc - fe * ec, qm.f());
  {
    T num = scale(qm.e() * (fe * ec - fc * fc), 2) + scale(qm.f() * fc * (fb + scale(ec, 2)), 2) -
            qm.f() * (fe * eb - fe * cd + fd * ec);
    out.e() = halve(divide(divide(num, qm.f()), qm.f()));
  }
  T num = -(qm.f() * out.a()) - qm.a() * out.f() - scale(qm.b() * out.e(), 4) - scale(qm.e() * out.b(), 4) +
          af * af + cd * cd - ab * ef - bc * ce + ad * df + scale(be * af, 2) -
          (scale(ce, 3) - bf - de) * (scale(bc, 3) - ae - bd) + scale((ad - ac) * (cf - df), 2) +
          scale((bc + ae) * (bf + ce), 2);
  out.d() = divide(num, qm.d());
}

}  // namespace detail

// q_{n+1} from (q, q_n, q_{n-1}). Symbolic divisions are exact and throw
// InexactDivision on a remainder; a vanishing prefactor throws ZeroDivisor.
template <class T>
Params<T> step(const Params<T>& q, const Params<T>& qn, const Params<T>& qm) {
  using ring::divide;
  using ring::halve;
  for (std::size_t i : {0, 2, 3, 5}) {
    if (ring::is_zero(qm[i])) {
      throw ZeroDivisor(std::string("recursion prefactor ") + kNames[i] + "_{n-1} vanishes");
    }
  }
  Params<T> out;
  detail::wedge_part(wedges(q, qn), qm, out);
  const T &a = q.a(), &b = q.b(), &c = q.c(), &e = q.e(), &f = q.f();
  const T &an = qn.a(), &bn = qn.b(), &cn = qn.c(), &en = qn.e(), &fn = qn.f();
  T t1 = c * en - b * fn;
  T t2 = a * en - b * cn;
  T t3 = c * bn - e * an;
  T t4 = f * bn - e * cn;
  T t5 = a * fn - c * cn;
  T t6 = f * an - c * cn;
  out.c() = halve(divide(t1 * t2 + t3 * t4 + t5 * t5 + t6 * t6, qm.c()));
  return out;
}

// Hatted coefficients (a, b, d, e, f) of K_{n+1}: the recursion evaluated on
// the brackets divided by gamma, so that
//   S(Q, x; q_{n+1}) = c_{n+1} (Q - x)^2 + gamma^2 K_{n+1}(Q, x).
struct KFactor {
  MultiPoly a, b, d, e, f;
};
KFactor K_factor(const SymParams& q, const SymParams& qn, const SymParams& qm, const MultiPoly& gamma);

// Normalized gcd of the 15 brackets of (q, q_n): gamma for period n + 1.
// Throws DegenerateInput when every bracket vanishes.
MultiPoly extract_gamma(const SymParams& q, const SymParams& qn);

// X-resultant of S(Q, X; q) and S(X, x; q) as a polynomial over {Q, x}.
// Throws DegenerateInput when a = b = c = 0.
MultiPoly resultant_W2_oracle(const std::array<poly::Integer, 6>& q);
// S(Q, x; q) as a polynomial over {Q, x}.
MultiPoly S_poly(const std::array<poly::Integer, 6>& q);

// Lotka-Volterra reduction. Symbolic version over {r, s}.
SymParams specialize_lv_symbolic();
NumParams specialize_lv(cplx r, cplx s);

// Painleve V reduction with p carried symbolically in p^2 = (r - v + 1) p - r.
Params<QuadExtPoly> specialize_painleve_symbolic();
// Numeric values for a chosen root p of p^2 - (r - v + 1) p + r = 0; root 0 or 1.
NumParams specialize_painleve(cplx r, cplx s, cplx v, int root);
std::array<cplx, 2> painleve_p_roots(cplx r, cplx v);

// Trail q_1 = q, q_2, ..., q_N with expression-swell control.
struct Trail {
  std::vector<SymParams> q;                // q[0] = q_1
  std::vector<MultiPoly> removed_factor;   // common factor divided out of q[k]
};

struct SwellReport {
  SymParams reduced;
  MultiPoly factor;
};
// Divides the six entries by their integer content and common polynomial factor.
SwellReport reduce_common_factor(const SymParams& q);

Trail build_trail(const SymParams& q, int max_level);

struct GammaEntry {
  int period = 0;
  int level = 0;       // the n in extract_gamma(q, q_n)
  MultiPoly gamma;     // normalized: primitive, lex-greatest monomial positive
  MultiPoly raw;       // before stripping factors that belong to other periods
  mpq_class normalization;  // gamma = normalization * (stripped raw polynomial)
};

// Removes from the bracket gcd at `level` the gammas of periods m != level + 1
// with m | level - 1 or m | level + 1: there q_level is proportional to q as well.
MultiPoly strip_lower_periods(const MultiPoly& raw, int level, const std::vector<GammaEntry>& lower);

struct GammaSeries {
  std::vector<GammaEntry> entries;
  Trail trail;
};

// gamma_3 .. gamma_{max_period} for the generic symbolic q.
GammaSeries gamma_series(int max_period);
// The same series specialized to the Lotka-Volterra parameters over {r, s}:
// the generic gammas are substituted and the degenerate factor of the
// specialized q_2 (a power of s) is divided out.
GammaSeries gamma_series_lv(int max_period);

nlohmann::json to_json(const GammaSeries& series);

}  // namespace invariety::biquad
