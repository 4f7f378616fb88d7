#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "invariety/cli/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "invariety");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = invariety::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("periodic-points writes one row per point") {
  auto r = run({"periodic-points", "--h", "2", "--hp", "3", "-n", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# command: periodic-points\n", 0) == 0);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "period,re_z,im_z,re_multiplier,im_multiplier,class,residual");

  auto j = run({"periodic-points", "--h", "0.6+0.1i", "--hp", "2.1", "-n", "3", "--format", "json"});
  REQUIRE(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["points"].size() == 6);
  CHECK(doc["config"]["h"] == "0.6+0.1i");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == invariety::cli::kExitUsage);
  CHECK(run({"no-such-command"}).code == invariety::cli::kExitUsage);
  CHECK(run({"gamma-series", "--max-period", "2"}).code == invariety::cli::kExitUsage);
  CHECK(run({"periodic-points", "--h", "2", "-n", "4"}).code == invariety::cli::kExitUsage);
  CHECK(run({"periodic-points", "--h", "2x", "--hp", "3", "-n", "2"}).code == invariety::cli::kExitUsage);
  CHECK(run({"verify-variety", "--map", "lv3", "-n", "3", "--k", "2"}).code == invariety::cli::kExitUsage);
  CHECK(run({"verify-variety", "--map", "2d-bc", "-n", "4", "--k", "2"}).code == invariety::cli::kExitUsage);
  CHECK(run({"orbit", "--map", "lv3", "--start", "0.5,0.5"}).code == invariety::cli::kExitUsage);
  CHECK(run({"--help"}).code == invariety::cli::kExitOk);

  auto ok = run({"verify-variety", "--map", "lv3", "-n", "3", "--samples", "20"});
  REQUIRE(ok.code == invariety::cli::kExitOk);
  CHECK(nlohmann::json::parse(ok.out)["passes"] == 20);

  // in double precision a few period-5 samples near s = -1 miss the return tolerance
  auto bad = run({"verify-variety", "--map", "lv3", "-n", "5", "--samples", "100", "--workers", "4"});
  CHECK(bad.code == invariety::cli::kExitVerification);
  auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc["passes"] < 100);
}

TEST_CASE("orbit poles are reported") {
  // 1 - z + z x = 0 at the start point
  auto r = run({"orbit", "--map", "lv3", "--start", "0.5,0.3,2", "--steps", "3"});
  CHECK(r.code == invariety::cli::kExitUsage);
  CHECK(r.err.find("1-z+zx") != std::string::npos);
}

TEST_CASE("julia-scan at epsilon = 0") {
  auto r = run({"julia-scan", "--h", "0.6", "--epsilon-grid", "0", "--depth", "8", "--samples", "100"});
  REQUIRE(r.code == 0);
  auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "epsilon,depth,count,max_dist,bound,ratio,excluded_branch_crossings");
  CHECK(rows[1] == "0,8,100,0,0,0,0");
}

TEST_CASE("output is deterministic and independent of workers") {
  std::vector<std::string> base{"transition-scan", "--h", "0.7", "-n", "3", "--delta-grid", "1e-2,1e-3"};
  auto a = run(base);
  auto b = run(base);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto c = base;
  c.insert(c.end(), {"--workers", "3"});
  CHECK(data_lines(run(c).out) == data_lines(a.out));

  std::vector<std::string> julia{"julia-scan", "--h", "0.6", "--epsilon-grid", "1e-2,1e-3", "--depth", "20",
                                 "--samples", "64", "--seed", "9"};
  auto j1 = run(julia);
  auto j2 = run(julia);
  CHECK(j1.out == j2.out);
  julia.insert(julia.end(), {"--workers", "4"});
  CHECK(data_lines(run(julia).out) == data_lines(j1.out));
}

TEST_CASE("config file and flag precedence") {
  const std::string path = "cli_test_config.toml";
  {
    std::ofstream f(path);
    f << "[verify-variety]\nmap = \"lv3\"\nperiod = 3\nsamples = 7\n";
  }
  auto from_file = run({"--config", path, "verify-variety"});
  REQUIRE(from_file.code == 0);
  CHECK(nlohmann::json::parse(from_file.out)["samples"] == 7);
  auto overridden = run({"--config", path, "verify-variety", "--samples", "9"});
  CHECK(nlohmann::json::parse(overridden.out)["samples"] == 9);
  {
    std::ofstream f(path);
    f << "[verify-variety]\nmap = \"lv3\"\nunknown_key = 1\n";
  }
  CHECK(run({"--config", path, "verify-variety", "-n", "3"}).code == invariety::cli::kExitUsage);
  std::remove(path.c_str());
}

TEST_CASE("output file") {
  const std::string path = "cli_test_output.csv";
  auto r = run({"orbit", "--map", "2d-logistic", "--start", "0.2,0.3", "--steps", "4", "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  auto rows = data_lines(text.str());
  CHECK(rows.size() == 6);
  CHECK(rows[0] == "step,re_x1,im_x1,re_x2,im_x2,re_H1,im_H1");
  std::remove(path.c_str());
}
