#pragma once

#include <functional>
#include <string>
#include <vector>

#include "invariety/biquad/biquad.hpp"
#include "invariety/error.hpp"
#include "invariety/numeric.hpp"

namespace invariety::maps {

enum class MapId { TwoDimLogistic, TwoDimBC, OneDimBC, LV3, PainleveV, QRT, NormalForm };

// Parameters per map:
//   2d-logistic: none          2d-bc: b, c          1d-bc: h, b, c
//   lv3: none                  painleve5: none      normal-form: h, h'
//   qrt: q' (a..f) then q'' (a..f), 12 values
struct MapSpec {
  MapId id = MapId::NormalForm;
  std::vector<cplx> params;
};

MapId map_id_from_string(const std::string& name);
std::string to_string(MapId id);
std::size_t dimension(MapId id);
std::size_t parameter_count(MapId id);
std::size_t invariant_count(MapId id);
std::vector<std::string> parameter_names(MapId id);
// Validates the parameter count.
MapSpec make_spec(MapId id, std::vector<cplx> params);

inline constexpr double kPoleTolerance = 1e-14;

template <class C>
C checked_ratio(const C& num, const C& den, const char* which) {
  if (mag(den) < kPoleTolerance * (1.0 + mag(num))) throw PoleError(which, "");
  return num / den;
}

namespace detail {

template <class C>
C quad(const std::array<cplx, 3>& k, const C& x) {
  return from_cplx<C>(k[0]) * x * x + from_cplx<C>(k[1]) * x + from_cplx<C>(k[2]);
}

template <class C>
struct QrtParts {
  C phi1, eta1, rho1, phi2, eta2, rho2;
};

template <class C>
QrtParts<C> qrt_parts(const biquad::NumParams& q1, const biquad::NumParams& q2, const C& x) {
  auto a = biquad::phi_eta_rho(q1);
  auto b = biquad::phi_eta_rho(q2);
  return {quad(a.phi, x), quad(a.eta, x), quad(a.rho, x), quad(b.phi, x), quad(b.eta, x), quad(b.rho, x)};
}

}  // namespace detail

// x_{n+2} of the symmetric QRT recurrence built from q' and q''.
template <class C>
C qrt_step(const biquad::NumParams& q1, const biquad::NumParams& q2, const C& xn, const C& xnp1) {
  auto p = detail::qrt_parts(q1, q2, xnp1);
  C rho_phi = p.rho1 * p.phi2 - p.phi1 * p.rho2;
  C num = (p.eta1 * p.rho2 - p.rho1 * p.eta2) - xn * rho_phi;
  C den = rho_phi - xn * (p.phi1 * p.eta2 - p.eta1 * p.phi2);
  return checked_ratio(num, den, "qrt");
}

// -(phi' y^2 + eta' y + rho')(x) / (phi'' y^2 + eta'' y + rho'')(x)
template <class C>
C qrt_invariant(const biquad::NumParams& q1, const biquad::NumParams& q2, const C& x, const C& y) {
  auto p = detail::qrt_parts(q1, q2, x);
  C num = p.phi1 * y * y + p.eta1 * y + p.rho1;
  C den = p.phi2 * y * y + p.eta2 * y + p.rho2;
  return -checked_ratio(num, den, "qrt invariant");
}

inline std::pair<biquad::NumParams, biquad::NumParams> split_qrt(const MapSpec& spec) {
  biquad::NumParams q1, q2;
  for (std::size_t i = 0; i < 6; ++i) {
    q1[i] = spec.params[i];
    q2[i] = spec.params[i + 6];
  }
  return {q1, q2};
}

template <class C>
std::vector<C> apply(const MapSpec& spec, const std::vector<C>& x) {
  if (x.size() != dimension(spec.id)) throw Error("state dimension does not match the map");
  auto P = [&](std::size_t i) { return from_cplx<C>(spec.params[i]); };
  const C one(1);
  switch (spec.id) {
    case MapId::TwoDimLogistic:
      return {x[0] * x[1], x[0] + x[1] - x[0] * x[1]};
    case MapId::TwoDimBC: {
      C b = P(0), c = P(1);
      C X = x[0] * x[1];
      C num = x[1] * (one - b * x[0]) * (one - c * X);
      C den = (one - c * x[0]) * (one - b * X);
      return {X, checked_ratio(num, den, "(1-cx)(1-bxy)")};
    }
    case MapId::OneDimBC: {
      C h = P(0), b = P(1), c = P(2);
      return {checked_ratio(h * x[0] * (one - c * x[0]), one - b * x[0], "1-bx")};
    }
    case MapId::LV3: {
      const C &u = x[0], &v = x[1], &w = x[2];
      C p1 = one - v + v * w;  // 1 - y + yz
      C p2 = one - w + w * u;  // 1 - z + zx
      C p3 = one - u + u * v;  // 1 - x + xy
      return {u * checked_ratio(p1, p2, "1-z+zx"), v * checked_ratio(p2, p3, "1-x+xy"),
              w * checked_ratio(p3, p1, "1-y+yz")};
    }
    case MapId::PainleveV: {
      // t_k = 1 - x_{k+1} + x_{k+1} x_{k+2} - x_{k+1} x_{k+2} x_{k+3}, indices mod 4
      auto t = [&](std::size_t k) {
        const C& p = x[(k + 1) % 4];
        const C& q = x[(k + 2) % 4];
        const C& r = x[(k + 3) % 4];
        return one - p + p * q - p * q * r;
      };
      C t0 = t(0), t1 = t(1), t2 = t(2), t3 = t(3);
      return {x[0] * checked_ratio(t0, t2, "X1 denominator"), x[1] * checked_ratio(t1, t3, "X2 denominator"),
              x[2] * checked_ratio(t2, t0, "X3 denominator"), x[3] * checked_ratio(t3, t1, "X4 denominator")};
    }
    case MapId::QRT: {
      auto [q1, q2] = split_qrt(spec);
      return {x[1], qrt_step(q1, q2, x[0], x[1])};
    }
    case MapId::NormalForm: {
      C h = P(0), hp = P(1);
      return {checked_ratio(x[0] * (hp + x[0]), one + h * x[0], "1+hz")};
    }
  }
  throw Error("unknown map");
}

template <class C>
std::vector<C> invariants_of(const MapSpec& spec, const std::vector<C>& x) {
  if (x.size() != dimension(spec.id)) throw Error("state dimension does not match the map");
  auto P = [&](std::size_t i) { return from_cplx<C>(spec.params[i]); };
  const C one(1);
  switch (spec.id) {
    case MapId::TwoDimLogistic:
      return {x[0] + x[1]};
    case MapId::TwoDimBC: {
      C b = P(0), c = P(1);
      return {x[1] * checked_ratio(one - b * x[0], one - c * x[0], "1-cx")};
    }
    case MapId::LV3:
      return {x[0] * x[1] * x[2], (one - x[0]) * (one - x[1]) * (one - x[2])};
    case MapId::PainleveV:
      return {x[0] * x[1] * x[2] * x[3], (one - x[0]) * (one - x[1]) * (one - x[2]) * (one - x[3]),
              (one - x[1] * x[3]) * (one - x[0] * x[2])};
    case MapId::QRT: {
      auto [q1, q2] = split_qrt(spec);
      return {qrt_invariant(q1, q2, x[0], x[1])};
    }
    case MapId::OneDimBC:
    case MapId::NormalForm:
      return {};
  }
  throw Error("unknown map");
}

// x -> h x (1 - c x) / (1 - b x) with the companion Y = h (1 - c X) / (1 - b X).
struct OneDimReduction {
  cplx h, b, c;
  cplx operator()(cplx x) const;
  cplx companion(cplx X) const;
  MapSpec spec() const { return make_spec(MapId::OneDimBC, {h, b, c}); }
};
OneDimReduction reduce_two_dim(cplx b, cplx c, cplx h);

// Normal form z -> z (h' + z) / (1 + h z) conjugate to the 1-d reduction via
// z = (1 - h') / (1 - h) + (1 - h) / (h (b - c)) * (1 / x).
struct NormalFormConjugacy {
  cplx h, hp;
  cplx offset, slope;  // z = offset + slope / x
  cplx z_of_x(cplx x) const;
  cplx x_of_z(cplx z) const;
  MapSpec spec() const { return make_spec(MapId::NormalForm, {h, hp}); }
};
NormalFormConjugacy conjugate_to_normal(cplx b, cplx c, cplx h);

// Normal-form data.
cplx normal_form_derivative(cplx h, cplx hp, cplx z);
cplx fixed_point_zp(cplx h, cplx hp);
std::array<cplx, 2> critical_points(cplx h, cplx hp);
// Multipliers of the fixed points 0, z_p and infinity, in that order.
std::array<cplx, 3> fixed_point_multipliers(cplx h, cplx hp);
// The map in the chart w = 1/z around infinity.
cplx normal_form_at_infinity(cplx h, cplx hp, cplx w);

// Two-branch biquadratic orbit: x_{k+1} = -eta(x_k)/phi(x_k) - x_{k-1}, the
// second root of S(., x_k) = 0 given the first.
template <class C>
C biquad_next(const biquad::NumParams& q, const C& prev, const C& cur) {
  auto f = biquad::phi_eta_rho(q);
  return -checked_ratio(detail::quad(f.eta, cur), detail::quad(f.phi, cur), "phi") - prev;
}

// Orbit of `steps` applications; the first state is the start point.
template <class C>
std::vector<std::vector<C>> orbit(const MapSpec& spec, std::vector<C> x, int steps) {
  std::vector<std::vector<C>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x);
  for (int k = 0; k < steps; ++k) {
    x = maps::apply(spec, x);
    out.push_back(x);
  }
  return out;
}

}  // namespace invariety::maps
