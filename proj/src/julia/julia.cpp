#include "invariety/julia/julia.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "invariety/error.hpp"
#include "invariety/parallel.hpp"

namespace invariety::julia {

Params make_params(cplx h, cplx hp) { return {h, hp, h * hp - 1.0}; }

Params params_from_epsilon(cplx h, double eps) {
  if (h == 0.0) throw UsageError("h must be nonzero");
  return {h, (1.0 + eps) / h, eps};
}

InverseValue e_term(const Params& p, cplx z) {
  cplx a = p.h * z + p.hp;
  if (a == 0.0) throw PoleError("hz+h'", "inverse map at z = -h'/h");
  cplx u = 4.0 * z * p.eps / (a * a);
  cplx w = 1.0 - u;
  // sqrt(1 - u) - 1 = -u / (sqrt(1 - u) + 1), free of cancellation for small u.
  cplx e = -0.5 * a * u / (std::sqrt(w) + 1.0);
  return {e, w.real() <= 0.0};
}

InverseValue inverse_step(const Params& p, cplx z, Branch b) {
  InverseValue e = e_term(p, z);
  if (b == Branch::A) return {p.h * z + e.z, e.branch_crossing};
  return {-p.hp - e.z, e.branch_crossing};
}

cplx inverse_step(cplx z, cplx h, cplx hp, Branch b) { return inverse_step(make_params(h, hp), z, b).z; }

double r_epsilon(cplx h, cplx eps) {
  double ae = std::abs(eps);
  return (std::sqrt(2.0) + 1.0) / std::abs(h) * std::sqrt(ae) * (std::sqrt(ae) + std::sqrt(std::abs(eps + 1.0)));
}

std::vector<cplx> limit_set(cplx h, int n) {
  if (n < 0) throw UsageError("limit set size must be non-negative");
  if (h == 0.0) throw UsageError("h must be nonzero");
  std::vector<cplx> out{0.0};
  if (n >= 1) out.push_back(-1.0 / h);
  cplx t = -1.0;
  for (int k = 2; k <= n; ++k) {
    out.push_back(t);
    t *= h;
  }
  return out;
}

double dist_to_jinf(const Params& p, cplx z, int depth, int pad) {
  double best = std::abs(z);
  cplx t = -p.hp;
  for (int k = 0; k <= depth + pad; ++k) {
    best = std::min(best, std::abs(z - t));
    t *= p.h;
  }
  return best;
}

JuliaSample backward_orbit(const Params& p, const std::string& word) {
  JuliaSample s;
  s.branch_word = word;
  s.depth = static_cast<int>(word.size());
  cplx z = 0.0;
  for (std::size_t j = word.size(); j-- > 0;) {
    if (word[j] != 'A' && word[j] != 'B') throw UsageError("branch word letters must be A or B");
    InverseValue v = inverse_step(p, z, word[j] == 'A' ? Branch::A : Branch::B);
    z = v.z;
    s.branch_crossing = s.branch_crossing || v.branch_crossing;
    double d = dist_to_jinf(p, z, static_cast<int>(word.size() - j));
    s.max_orbit_dist = std::max(s.max_orbit_dist, d);
  }
  s.z = z;
  s.dist_to_Jinf = dist_to_jinf(p, z, s.depth);
  return s;
}

namespace {

std::string word_of(std::uint64_t index, int depth) {
  std::string w(static_cast<std::size_t>(depth), 'A');
  for (int j = 0; j < depth; ++j) {
    if ((index >> (depth - 1 - j)) & 1u) w[static_cast<std::size_t>(j)] = 'B';
  }
  return w;
}

std::string random_word(std::uint64_t seed, std::uint64_t index, int depth) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 gen(seq);
  std::string w(static_cast<std::size_t>(depth), 'A');
  for (auto& c : w) c = (gen() >> 63) ? 'B' : 'A';
  return w;
}

void check_depth(int depth) {
  if (depth < 0) throw UsageError("depth must be non-negative");
}

}  // namespace

std::vector<JuliaSample> enumerate_level(const Params& p, int depth) {
  check_depth(depth);
  if (depth > kMaxEnumerationDepth) {
    throw UsageError("exhaustive enumeration is limited to depth " + std::to_string(kMaxEnumerationDepth));
  }
  std::vector<JuliaSample> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << depth); ++i) out.push_back(backward_orbit(p, word_of(i, depth)));
  return out;
}

std::vector<JuliaSample> preimage_tree(const Params& p, int depth) {
  std::vector<JuliaSample> out;
  for (int d = 0; d <= depth; ++d) {
    auto level = enumerate_level(p, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::vector<JuliaSample> sample_julia(const Params& p, int depth, std::size_t count, std::uint64_t seed,
                                      unsigned workers) {
  check_depth(depth);
  if (depth <= kMaxEnumerationDepth && count >= (std::size_t{1} << depth)) return enumerate_level(p, depth);
  std::vector<JuliaSample> out(count);
  parallel_for(count, workers, [&](std::size_t i) { out[i] = backward_orbit(p, random_word(seed, i, depth)); });
  return out;
}

std::vector<JuliaSample> sample_julia(cplx h, cplx hp, int depth, std::size_t count, std::uint64_t seed,
                                      unsigned workers) {
  return sample_julia(make_params(h, hp), depth, count, seed, workers);
}

ConvergenceReport convergence_report(cplx h, const std::vector<double>& eps_grid, int depth, std::size_t samples,
                                     std::uint64_t seed, unsigned workers) {
  if (!(std::abs(h) < 1.0) || h == 0.0) throw UsageError("convergence report needs 0 < |h| < 1");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] >= 0.0)) throw UsageError("epsilon grid values must be non-negative");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1])) throw UsageError("epsilon grid must be strictly decreasing");
  }
  check_depth(depth);
  ConvergenceReport report{h, depth, samples, seed, {}};
  for (double eps : eps_grid) {
    Params p = params_from_epsilon(h, eps);
    ConvergenceRow row;
    row.epsilon = eps;
    row.depth = depth;
    for (const auto& s : sample_julia(p, depth, samples, seed, workers)) {
      if (s.branch_crossing) {
        ++row.excluded_branch_crossings;
        continue;
      }
      ++row.count;
      row.max_dist = std::max(row.max_dist, s.max_orbit_dist);
    }
    row.bound = r_epsilon(h, eps) / (1.0 - std::abs(h));
    row.ratio = row.bound > 0.0 ? row.max_dist / row.bound : (row.max_dist > 0.0 ? INFINITY : 0.0);
    report.rows.push_back(row);
  }
  return report;
}

double fit_slope(const ConvergenceReport& report) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : report.rows) {
    if (r.epsilon <= 0.0 || r.max_dist <= 0.0) continue;
    double x = std::log(r.epsilon), y = std::log(r.max_dist);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw DegenerateInput("slope fit needs at least two rows with positive epsilon and distance");
  double den = m * sxx - sx * sx;
  if (den == 0.0) throw DegenerateInput("slope fit on a single epsilon value");
  return (m * sxy - sx * sy) / den;
}

std::string convergence_csv_header() {
  return "epsilon,depth,count,max_dist,bound,ratio,excluded_branch_crossings";
}

std::string convergence_csv_row(const ConvergenceRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.17g,%d,%zu,%.17g,%.17g,%.17g,%zu", row.epsilon, row.depth, row.count,
                row.max_dist, row.bound, row.ratio, row.excluded_branch_crossings);
  return buf;
}

BoundCheck a_s_bw_bound_check(cplx h, cplx hp, int s, std::size_t trials, std::uint64_t seed) {
  if (s < 0) throw UsageError("s must be non-negative");
  if (!(std::abs(h) < 1.0) || h == 0.0) throw UsageError("bound check needs 0 < |h| < 1");
  Params p = make_params(h, hp);
  const double r = r_epsilon(h, p.eps);
  const double ah = std::abs(h);
  BoundCheck out;
  out.s = s;
  out.bound = (1.0 - std::pow(ah, s + 1)) / (1.0 - ah) * r;
  out.bound_without_first_term = (1.0 - std::pow(ah, s)) / (1.0 - ah) * r;
  cplx target = -hp;
  for (int k = 0; k < s; ++k) target *= h;

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 gen(seq);
  for (std::size_t t = 0; t < trials; ++t) {
    int depth = static_cast<int>(gen() % 9);
    JuliaSample w = backward_orbit(p, random_word(gen(), t, depth));
    InverseValue z = inverse_step(p, w.z, Branch::B);
    bool crossing = w.branch_crossing || z.branch_crossing;
    for (int k = 0; k < s; ++k) {
      InverseValue next = inverse_step(p, z.z, Branch::A);
      crossing = crossing || next.branch_crossing;
      z.z = next.z;
    }
    if (crossing) {
      ++out.excluded_branch_crossings;
      continue;
    }
    ++out.trials;
    double lhs = std::abs(z.z - target);
    out.max_lhs = std::max(out.max_lhs, lhs);
    if (!(lhs <= out.bound)) ++out.violations;
    if (!(lhs < out.bound_without_first_term) && !(lhs == 0.0 && out.bound_without_first_term == 0.0)) {
      ++out.violations_without_first_term;
    }
  }
  return out;
}

}  // namespace invariety::julia
