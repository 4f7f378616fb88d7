#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariety/numeric.hpp"
#include "invariety/polycore/multipoly.hpp"

namespace invariety::variety {

// A periodicity condition gamma(invariants) = 0 that involves no phase-space
// coordinates.
struct VarietyCondition {
  std::string map_id;
  int period = 0;
  poly::MultiPoly gamma;
  std::string description;
};

// 1 + h + ... + h^(n-1) over {h}.
poly::MultiPoly mobius_gamma(int n);

struct MobiusRoot {
  cplx h;
  int k = 0;
  int order = 0;  // multiplicative order of h; smaller than n when gcd(k, n) > 1
};
// e^(2 pi i k / n), k = 1..n-1.
std::vector<MobiusRoot> mobius_gamma_roots(int n);

// h + 1 + c h x (c h x + b x - 1 - h) / (1 - b x); PoleError when 1 - b x = 0.
cplx gamma2_full(cplx h, cplx x, cplx b, cplx c);
// (1 - b x) times the above, over {h, x, b, c}.
poly::MultiPoly gamma2_numerator();

VarietyCondition two_dim_condition(int n);
// gamma over {r, s}; by default the Lotka-Volterra series computed for period n.
VarietyCondition lv_condition(int n);

struct VerifyOptions {
  std::uint64_t seed = 1;
  double construction_tol = 1e-12;
  double return_tol = 1e-8;
  double closure_tol = 1e-9;
  double negative_threshold = 1e-3;
  double sample_radius = 2.0;
  double pole_margin = 1e-6;
  unsigned workers = 1;
  // Attempts per sample before giving up with ConvergenceError.
  int max_attempts = 100;
  // Working precision of the Lotka-Volterra samples; the return test of a
  // sample is only as good as the accuracy of its root r.
  Precision precision = Precision::Double;
};

// Distances are max-norm differences divided by 1 + the max norm of the start.
struct VarietyReport {
  std::string condition;
  int period = 0;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::size_t resamples = 0;
  double max_return_residual = 0.0;
  double negative_control_min_distance = 0.0;
  double max_closure_residual = 0.0;     // invariant drift along the cycle
  std::size_t early_returns = 0;         // samples that closed at a period m < n
  std::size_t negative_control_returns = 0;  // controls closer than the threshold

  bool ok() const { return passes == samples && negative_control_returns == 0; }
};

nlohmann::json to_json(const VarietyReport& r);

// Points with y (1 - b x) = e^(2 pi i k / n) under the c = 0 map
// (x, y) -> (x y, y (1 - b x) / (1 - b x y)); needs gcd(k, n) = 1.
VarietyReport verify_variety_2d(int n, cplx b, int k, std::size_t samples, const VerifyOptions& opt = {});

// Points on the level set (x y z, (1-x)(1-y)(1-z)) = (r, s) with gamma(r, s) = 0,
// s drawn at random and r a random root of gamma(., s). n in {3, 4, 5}.
VarietyReport verify_variety_lv(int n, std::size_t samples, const VerifyOptions& opt = {},
                                const std::optional<poly::MultiPoly>& gamma = std::nullopt);

// Roots in r of gamma(r, s) at the given s, Newton-polished.
std::vector<cplx> lv_roots_in_r(const poly::MultiPoly& gamma, cplx s);

}  // namespace invariety::variety
