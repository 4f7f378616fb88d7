#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "invariety/numeric.hpp"

namespace invariety::julia {

// Inverse branches of z -> z (h' + z) / (1 + h z):
//   A(z) = h z + E(z),  B(z) = -h' - E(z),
//   E(z) = (h z + h') / 2 * (sqrt(1 - 4 z eps / (h z + h')^2) - 1),  eps = h h' - 1.
// The square root is principal; A reduces to h z and B to -h' as eps -> 0.
enum class Branch { A, B };

struct Params {
  cplx h, hp, eps;
};

// eps = h h' - 1.
Params make_params(cplx h, cplx hp);
// h' = (1 + eps) / h with eps kept exactly as given, so eps = 0 gives E = 0.
Params params_from_epsilon(cplx h, double eps);

struct InverseValue {
  cplx z;
  // Re(1 - 4 z eps / (h z + h')^2) <= 0: the radicand reached the branch cut.
  bool branch_crossing = false;
};

InverseValue e_term(const Params& p, cplx z);
InverseValue inverse_step(const Params& p, cplx z, Branch b);
cplx inverse_step(cplx z, cplx h, cplx hp, Branch b);

// (sqrt 2 + 1) / |h| * sqrt|eps| (sqrt|eps| + sqrt|eps + 1|).
double r_epsilon(cplx h, cplx eps);

// J_n = (0, -1/h, -1, -h, ..., -h^(n-2)), n + 1 points.
std::vector<cplx> limit_set(cplx h, int n);

inline constexpr int kDistancePad = 64;

// min(|z|, min over k <= depth + pad of |z + h^k h'|).
double dist_to_jinf(const Params& p, cplx z, int depth, int pad = kDistancePad);

struct JuliaSample {
  cplx z;
  int depth = 0;
  // Branch letters as a composition: "AB" is A(B(0)).
  std::string branch_word;
  double dist_to_Jinf = 0.0;
  // Largest distance over the whole backward orbit, depths 1..depth.
  double max_orbit_dist = 0.0;
  bool branch_crossing = false;
};

// Backward orbit of 0 along a branch word (composition order).
JuliaSample backward_orbit(const Params& p, const std::string& word);

inline constexpr int kMaxEnumerationDepth = 14;

// All 2^depth words of length depth, in lexicographic order (A < B).
std::vector<JuliaSample> enumerate_level(const Params& p, int depth);
// The cumulative preimage tree of 0 through the given depth: 2^(depth+1) - 1 samples.
std::vector<JuliaSample> preimage_tree(const Params& p, int depth);

// `count` backward orbits of the given depth. Exhaustive when count >= 2^depth
// and depth <= 14; otherwise sample i draws its branches from an mt19937_64
// seeded with (seed, i), so the result does not depend on `workers`.
std::vector<JuliaSample> sample_julia(const Params& p, int depth, std::size_t count, std::uint64_t seed,
                                      unsigned workers = 1);
std::vector<JuliaSample> sample_julia(cplx h, cplx hp, int depth, std::size_t count, std::uint64_t seed,
                                      unsigned workers = 1);

struct ConvergenceRow {
  double epsilon = 0.0;
  int depth = 0;
  std::size_t count = 0;  // samples kept (branch crossings excluded)
  double max_dist = 0.0;  // over every orbit point of every kept sample
  double bound = 0.0;     // R_eps / (1 - |h|)
  double ratio = 0.0;     // max_dist / bound, 0 when both vanish
  std::size_t excluded_branch_crossings = 0;
};

struct ConvergenceReport {
  cplx h;
  int depth = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ConvergenceRow> rows;
};

// eps_grid must be non-negative and strictly decreasing; |h| < 1.
ConvergenceReport convergence_report(cplx h, const std::vector<double>& eps_grid, int depth, std::size_t samples,
                                     std::uint64_t seed, unsigned workers = 1);

// Least-squares slope of log(max_dist) against log(eps) over rows with both positive.
double fit_slope(const ConvergenceReport& report);

std::string convergence_csv_header();
std::string convergence_csv_row(const ConvergenceRow& row);

struct BoundCheck {
  int s = 0;
  std::size_t trials = 0;
  std::size_t excluded_branch_crossings = 0;
  double max_lhs = 0.0;  // max |A^s(B(W)) + h^s h'|
  // Triangle-inequality bound (1 - |h|^(s+1)) / (1 - |h|) R_eps, which covers
  // the -h^s E(W) term.
  double bound = 0.0;
  std::size_t violations = 0;
  // (1 - |h|^s) / (1 - |h|) R_eps, reported for comparison.
  double bound_without_first_term = 0.0;
  std::size_t violations_without_first_term = 0;
};

// W runs over random backward-orbit points of 0 with depth drawn from [0, 8].
BoundCheck a_s_bw_bound_check(cplx h, cplx hp, int s, std::size_t trials, std::uint64_t seed);

}  // namespace invariety::julia
