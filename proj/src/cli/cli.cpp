#include "invariety/cli/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "invariety/biquad/biquad.hpp"
#include "invariety/error.hpp"
#include "invariety/julia/julia.hpp"
#include "invariety/maps/maps.hpp"
#include "invariety/periodic/periodic.hpp"
#include "invariety/variety/variety.hpp"

namespace invariety::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string output = "-";
  std::string format = "csv";
  unsigned workers = 1;
};

struct GammaArgs {
  int max_period = 5;
  int ceiling = 6;
  bool lv = false;
};

struct PeriodicArgs {
  std::string h, hp;
  int period = 0;
  int precision_bits = 53;
};

struct TransitionArgs {
  std::string h;
  int period = 0;
  std::vector<double> delta_grid;
};

struct JuliaArgs {
  std::string h;
  std::vector<double> epsilon_grid;
  int depth = 12;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
};

struct OrbitArgs {
  std::string map;
  std::vector<std::string> params, start;
  int steps = 100;
  int precision_bits = 53;
};

struct VerifyArgs {
  std::string map;
  int period = 0;
  std::string b = "0.5";
  int k = 1;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  int precision_bits = 53;
};

// Raised when a verification command finds failures.
struct VerificationFailed {};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

// Effective settings of the chosen subcommand as (key, value) pairs, in
// declaration order.
std::vector<std::pair<std::string, std::string>> settings(const CLI::App& app, const std::string& command) {
  std::vector<std::pair<std::string, std::string>> out;
  const std::string prefix = command + ".";
  std::istringstream cfg(app.config_to_str(true, false));
  for (std::string line; std::getline(cfg, line);) {
    if (line.rfind(prefix, 0) != 0) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string value = line.substr(eq + 1);
    if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front()) {
      value = value.substr(1, value.size() - 2);
    }
    out.emplace_back(line.substr(prefix.size(), eq - prefix.size()), value);
  }
  return out;
}

std::string metadata(const CLI::App& app, const std::string& command) {
  std::ostringstream os;
  os << "# command: " << command << "\n";
  for (const auto& [key, value] : settings(app, command)) os << "# " << key << ": " << value << "\n";
  return os.str();
}

json config_json(const CLI::App& app, const std::string& command) {
  json cfg;
  cfg["command"] = command;
  for (const auto& [key, value] : settings(app, command)) cfg[key] = value;
  return cfg;
}

std::vector<cplx> parse_all(const std::vector<std::string>& items) {
  std::vector<cplx> out;
  for (const auto& s : items) out.push_back(parse_complex(s));
  return out;
}

void gamma_series(const GammaArgs& a, const json& cfg, std::ostream& os) {
  if (a.max_period < 3 || a.max_period > a.ceiling) {
    throw UsageError("max-period must lie in [3, " + std::to_string(a.ceiling) + "]");
  }
  json out;
  out["config"] = cfg;
  out["generic"] = biquad::to_json(biquad::gamma_series(a.max_period));
  if (a.lv) out["lv"] = biquad::to_json(biquad::gamma_series_lv(a.max_period));
  os << out.dump(2) << "\n";
}

void periodic_points(const PeriodicArgs& a, const Common& c, const std::string& meta, const json& cfg,
                     std::ostream& os) {
  periodic::PeriodicOptions opt;
  opt.precision = precision_from_bits(a.precision_bits);
  auto r = periodic::find_periodic_points(parse_complex(a.h), parse_complex(a.hp), a.period, opt);
  auto pts = r.points;
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) {
    return x.z.real() != y.z.real() ? x.z.real() < y.z.real() : x.z.imag() < y.z.imag();
  });
  if (c.format == "json") {
    json out;
    out["config"] = cfg;
    out["precision_used"] = to_string(r.precision_used);
    out["expected_count"] = periodic::expected_count(a.period);
    out["points"] = json::array();
    for (const auto& p : pts) {
      out["points"].push_back({{"period", p.period},
                               {"z", complex_json(p.z)},
                               {"multiplier", complex_json(p.multiplier)},
                               {"class", periodic::to_string(p.cls)},
                               {"residual", p.residual}});
    }
    os << out.dump(2) << "\n";
    return;
  }
  os << meta << "# precision_used: " << to_string(r.precision_used) << "\n";
  os << "period,re_z,im_z,re_multiplier,im_multiplier,class,residual\n";
  for (const auto& p : pts) {
    os << p.period << "," << fmt(p.z.real()) << "," << fmt(p.z.imag()) << "," << fmt(p.multiplier.real()) << ","
       << fmt(p.multiplier.imag()) << "," << periodic::to_string(p.cls) << "," << fmt(p.residual) << "\n";
  }
}

void transition_scan(const TransitionArgs& a, const Common& c, const std::string& meta, const json& cfg,
                     std::ostream& os) {
  auto table = periodic::transition_scan(parse_complex(a.h), a.period, a.delta_grid, c.workers);
  if (c.format == "json") {
    json out;
    out["config"] = cfg;
    out["cells"] = json::array();
    for (const auto& cell : table.cells) {
      out["cells"].push_back({{"delta", cell.delta},
                              {"precision_used", to_string(cell.precision_used)},
                              {"count", cell.count},
                              {"max_dist", cell.max_dist},
                              {"max_abs_multiplier", cell.max_abs_multiplier}});
    }
    out["rows"] = json::array();
    for (const auto& row : table.rows) {
      out["rows"].push_back({{"delta", row.delta},
                             {"period", row.point.period},
                             {"z", complex_json(row.point.z)},
                             {"multiplier", complex_json(row.point.multiplier)},
                             {"class", periodic::to_string(row.point.cls)},
                             {"dist_to_fossil", row.dist_to_fossil}});
    }
    os << out.dump(2) << "\n";
    return;
  }
  os << meta;
  for (const auto& cell : table.cells) {
    os << "# delta " << fmt(cell.delta) << ": count " << cell.count << ", precision " << to_string(cell.precision_used)
       << ", max_dist " << fmt(cell.max_dist) << "\n";
  }
  os << periodic::csv_header() << "\n";
  for (const auto& row : table.rows) os << periodic::csv_row(row.delta, row.point, row.dist_to_fossil) << "\n";
}

void julia_scan(const JuliaArgs& a, const Common& c, const std::string& meta, const json& cfg, std::ostream& os) {
  auto rep = julia::convergence_report(parse_complex(a.h), a.epsilon_grid, a.depth, a.samples, a.seed, c.workers);
  bool violated = false;
  for (const auto& row : rep.rows) violated = violated || row.ratio > 1.0;
  if (c.format == "json") {
    json out;
    out["config"] = cfg;
    out["rows"] = json::array();
    for (const auto& row : rep.rows) {
      out["rows"].push_back({{"epsilon", row.epsilon},
                             {"depth", row.depth},
                             {"count", row.count},
                             {"max_dist", row.max_dist},
                             {"bound", row.bound},
                             {"ratio", row.ratio},
                             {"excluded_branch_crossings", row.excluded_branch_crossings}});
    }
    try {
      out["slope"] = julia::fit_slope(rep);
    } catch (const DegenerateInput&) {
      out["slope"] = nullptr;
    }
    os << out.dump(2) << "\n";
  } else {
    os << meta << julia::convergence_csv_header() << "\n";
    for (const auto& row : rep.rows) os << julia::convergence_csv_row(row) << "\n";
  }
  if (violated) throw VerificationFailed{};
}

template <class C>
void orbit_rows(const maps::MapSpec& spec, const std::vector<cplx>& start, int steps,
                std::vector<std::vector<cplx>>& states, std::vector<std::vector<cplx>>& invariants) {
  std::vector<C> x;
  for (cplx v : start) x.push_back(from_cplx<C>(v));
  for (int k = 0; k <= steps; ++k) {
    if (k > 0) x = maps::apply(spec, x);
    std::vector<cplx> s, h;
    for (const auto& v : x) s.push_back(to_cplx(v));
    for (const auto& v : maps::invariants_of(spec, x)) h.push_back(to_cplx(v));
    states.push_back(std::move(s));
    invariants.push_back(std::move(h));
  }
}

void orbit(const OrbitArgs& a, const Common& c, const std::string& meta, const json& cfg, std::ostream& os) {
  const auto id = maps::map_id_from_string(a.map);
  const auto spec = maps::make_spec(id, parse_all(a.params));
  const auto start = parse_all(a.start);
  if (start.size() != maps::dimension(id)) {
    throw UsageError("map '" + a.map + "' needs " + std::to_string(maps::dimension(id)) + " start coordinates");
  }
  if (a.steps < 0) throw UsageError("steps must be non-negative");
  std::vector<std::vector<cplx>> states, invariants;
  switch (precision_from_bits(a.precision_bits)) {
    case Precision::Double:
      orbit_rows<cplx>(spec, start, a.steps, states, invariants);
      break;
    case Precision::Digits50:
      orbit_rows<cplx50>(spec, start, a.steps, states, invariants);
      break;
    case Precision::Digits100:
      orbit_rows<cplx100>(spec, start, a.steps, states, invariants);
      break;
  }
  if (c.format == "json") {
    json out;
    out["config"] = cfg;
    out["states"] = json::array();
    for (std::size_t k = 0; k < states.size(); ++k) {
      json st = json::array(), inv = json::array();
      for (cplx v : states[k]) st.push_back(complex_json(v));
      for (cplx v : invariants[k]) inv.push_back(complex_json(v));
      out["states"].push_back({{"step", k}, {"x", st}, {"invariants", inv}});
    }
    os << out.dump(2) << "\n";
    return;
  }
  os << meta << "step";
  for (std::size_t i = 0; i < start.size(); ++i) os << ",re_x" << i + 1 << ",im_x" << i + 1;
  for (std::size_t i = 0; i < maps::invariant_count(id); ++i) os << ",re_H" << i + 1 << ",im_H" << i + 1;
  os << "\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    os << k;
    for (cplx v : states[k]) os << "," << fmt(v.real()) << "," << fmt(v.imag());
    for (cplx v : invariants[k]) os << "," << fmt(v.real()) << "," << fmt(v.imag());
    os << "\n";
  }
}

void verify(const VerifyArgs& a, const CLI::App& sub, const Common& c, const json& cfg, std::ostream& os) {
  variety::VerifyOptions opt;
  opt.seed = a.seed;
  opt.workers = c.workers;
  variety::VarietyReport rep;
  if (a.map == "2d-bc") {
    if (sub.count("--precision-bits") > 0) throw UsageError("--precision-bits applies to lv3 only");
    rep = variety::verify_variety_2d(a.period, parse_complex(a.b), a.k, a.samples, opt);
  } else if (a.map == "lv3") {
    if (sub.count("--b") > 0 || sub.count("--k") > 0) throw UsageError("--b and --k apply to 2d-bc only");
    opt.precision = precision_from_bits(a.precision_bits);
    rep = variety::verify_variety_lv(a.period, a.samples, opt);
  } else {
    throw UsageError("verify-variety supports the maps 2d-bc and lv3");
  }
  json out = variety::to_json(rep);
  out["config"] = cfg;
  os << out.dump(2) << "\n";
  if (!rep.ok()) throw VerificationFailed{};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant varieties, periodic points and Julia sets of rational maps with invariants"};
  // -h stays free: --h is the map parameter h.
  app.set_help_flag("--help", "print this help message and exit");
  app.set_config("--config", "", "TOML configuration file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool formats) {
    sub->add_option("--output,-o", common.output, "output file, '-' for standard output")->capture_default_str();
    if (formats) {
      sub->add_option("--format", common.format, "csv or json")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
  };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", common.workers, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
  };

  GammaArgs ga;
  auto* g = app.add_subcommand("gamma-series", "gamma_n polynomials of the biquadratic recursion (JSON)");
  g->add_option("--max-period", ga.max_period, "largest period")->capture_default_str();
  g->add_option("--ceiling", ga.ceiling, "largest max-period accepted")->capture_default_str();
  g->add_flag("--lv", ga.lv, "also write the Lotka-Volterra specialization");
  add_common(g, false);

  PeriodicArgs pa;
  auto* p = app.add_subcommand("periodic-points", "exact period-n points of z -> z (h' + z) / (1 + h z)");
  p->add_option("--h", pa.h, "h as re+imi")->required();
  p->add_option("--hp", pa.hp, "h' as re+imi")->required();
  p->add_option("--period,-n", pa.period, "period")->required();
  p->add_option("--precision-bits", pa.precision_bits, "starting precision: 53, up to 166 or up to 332")
      ->capture_default_str();
  add_common(p, true);

  TransitionArgs ta;
  auto* t = app.add_subcommand("transition-scan", "period-n points as h h' -> 1 with h' = (1 + delta) / h");
  t->add_option("--h", ta.h, "h as re+imi")->required();
  t->add_option("--period,-n", ta.period, "period")->required();
  t->add_option("--delta-grid", ta.delta_grid, "strictly decreasing non-negative deltas")
      ->required()
      ->delimiter(',');
  add_common(t, true);
  add_workers(t);

  JuliaArgs ja;
  auto* j = app.add_subcommand("julia-scan", "backward-orbit distances to the integrable limit set");
  j->add_option("--h", ja.h, "h as re+imi, |h| < 1")->required();
  j->add_option("--epsilon-grid", ja.epsilon_grid, "strictly decreasing non-negative epsilons")
      ->required()
      ->delimiter(',');
  j->add_option("--depth", ja.depth, "backward-orbit depth")->capture_default_str();
  j->add_option("--samples", ja.samples, "orbits per epsilon")->capture_default_str();
  j->add_option("--seed", ja.seed, "random seed")->capture_default_str();
  add_common(j, true);
  add_workers(j);

  OrbitArgs oa;
  auto* o = app.add_subcommand("orbit", "forward orbit of a catalog map with its invariants");
  o->add_option("--map", oa.map, "map id")->required();
  o->add_option("--param", oa.params, "map parameters in catalog order")->delimiter(',');
  o->add_option("--start", oa.start, "start point coordinates")->required()->delimiter(',');
  o->add_option("--steps", oa.steps, "number of steps")->capture_default_str();
  o->add_option("--precision-bits", oa.precision_bits, "53, up to 166 or up to 332")->capture_default_str();
  add_common(o, true);

  VerifyArgs va;
  auto* v = app.add_subcommand("verify-variety", "sample and verify an invariant variety of periodic points (JSON)");
  v->add_option("--map", va.map, "2d-bc (with c = 0) or lv3")->required();
  v->add_option("--period,-n", va.period, "period")->required();
  v->add_option("--b", va.b, "b of the 2d-bc map")->capture_default_str();
  v->add_option("--k", va.k, "root e^(2 pi i k / n), gcd(k, n) = 1")->capture_default_str();
  v->add_option("--samples", va.samples, "sample count")->capture_default_str();
  v->add_option("--seed", va.seed, "random seed")->capture_default_str();
  v->add_option("--precision-bits", va.precision_bits, "lv3 working precision")->capture_default_str();
  add_common(v, false);
  add_workers(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  const std::string meta = metadata(app, command);
  const json cfg = config_json(app, command);

  std::ostringstream buffer;
  int code = kExitOk;
  try {
    if (sub == g) gamma_series(ga, cfg, buffer);
    if (sub == p) periodic_points(pa, common, meta, cfg, buffer);
    if (sub == t) transition_scan(ta, common, meta, cfg, buffer);
    if (sub == j) julia_scan(ja, common, meta, cfg, buffer);
    if (sub == o) orbit(oa, common, meta, cfg, buffer);
    if (sub == v) verify(va, *v, common, cfg, buffer);
  } catch (const VerificationFailed&) {
    code = kExitVerification;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (common.output == "-") {
    out << buffer.str();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << common.output << "\n";
      return kExitUsage;
    }
    file << buffer.str();
  }
  if (code == kExitVerification) err << "verification failed\n";
  return code;
}

}  // namespace invariety::cli
