#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "actnet/error.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"

using namespace actnet;
using namespace actnet::cli;

namespace {

ParseResult parse(std::vector<std::string> args) {
  args.insert(args.begin(), "actnet");
  return parse_config(args);
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("actnet_test_cli_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty invocation prints usage and fails") {
  const auto r = parse({});
  CHECK(!r.config);
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.message.find("Usage") != std::string::npos);
}

TEST_CASE("unknown flag is a usage error naming the flag") {
  const auto r = parse({"theory", "--bogus", "1"});
  CHECK(r.exit_code == kExitUsage);
  CHECK(r.message.find("--bogus") != std::string::npos);
}

TEST_CASE("invalid values report the key") {
  const auto lambda = parse({"theory", "--lambda", "1.5"});
  CHECK(lambda.exit_code == kExitValidation);
  CHECK(lambda.message.find("lambda must exceed 2") != std::string::npos);

  const auto n = parse({"generate", "--n", "ten"});
  CHECK(n.exit_code == kExitValidation);
  CHECK(n.message.find("--n") != std::string::npos);

  const auto graph = parse({"generate", "--graph", "tree"});
  CHECK(graph.exit_code == kExitValidation);
  CHECK(graph.message.find("graph") != std::string::npos);

  const auto odd = parse({"generate", "--n", "11", "--k", "3"});
  CHECK(odd.exit_code == kExitValidation);
  CHECK(odd.message.find("invalid k") != std::string::npos);

  CHECK(parse({"fixation", "--v", "0.1"}).exit_code == kExitValidation);
  CHECK(parse({"mutation-freq", "--v", "0"}).exit_code == kExitValidation);
  CHECK(parse({"activate", "--harness", "component", "--lambdas", "3,1.9"}).exit_code == kExitValidation);
  CHECK(parse({"generate", "--graph", "file"}).exit_code == kExitValidation);
}

TEST_CASE("subcommand defaults are resolved") {
  const auto size = parse({"activate"});
  REQUIRE(size.config);
  CHECK(size.config->harness == Harness::Size);
  CHECK(*size.config->burn_in == 50.0);
  CHECK(*size.config->horizon == 600.0);
  CHECK(*size.config->graph.seed == size.config->seed);

  const auto sweep = parse({"activate", "--harness", "component", "--lambda", "3.0"});
  REQUIRE(sweep.config);
  CHECK(sweep.config->lambdas == std::vector<double>{3.0});
  CHECK(sweep.config->mus == std::vector<double>{2.6});

  const auto fix = parse({"fixation", "--replicates", "7"});
  REQUIRE(fix.config);
  CHECK(*fix.config->replicates == 7);
  CHECK(*fix.config->horizon == 1e5);
  CHECK(*fix.config->game.v == 0.0);

  const auto mut = parse({"mutation-freq"});
  REQUIRE(mut.config);
  CHECK(*mut.config->game.v == 0.1);
  CHECK(*mut.config->samples == 10000);
}

TEST_CASE("flags may follow or precede the subcommand") {
  const auto a = parse({"--seed", "5", "theory", "--mu", "3"});
  const auto b = parse({"theory", "--mu", "3", "--seed", "5"});
  REQUIRE(a.config);
  REQUIRE(b.config);
  CHECK(*a.config == *b.config);
  CHECK(a.config->seed == 5);
}

TEST_CASE("config file supplies values and flags override it") {
  const auto dir = scratch_dir("config");
  std::filesystem::create_directories(dir);
  const auto file = dir / "run.toml";
  std::ofstream(file) << "lambda = 4.5\nmu = 3.25\nseed = 99\n";
  const auto r = parse({"theory", "--config", file.string(), "--mu", "5"});
  REQUIRE(r.config);
  CHECK(r.config->rates.lambda == 4.5);
  CHECK(r.config->rates.mu == 5.0);
  CHECK(r.config->seed == 99);
}

TEST_CASE("manifest round trip") {
  const auto r = parse({"activate", "--harness", "mean-degree", "--graph", "wsn", "--k", "6", "--lambdas",
                        "2.6,3.5", "--mus", "6.4", "--dt", "0.1", "--seed", "123456789012345", "--t0", "0.7"});
  REQUIRE(r.config);
  const nlohmann::json j = to_json(*r.config);
  CHECK(from_json(j) == *r.config);
  CHECK(from_json(nlohmann::json::parse(j.dump())) == *r.config);

  RunConfig odd;
  odd.rates.lambda = 0.1 + 0.2 + 2.0;
  odd.burn_in = 1.0 / 3.0;
  CHECK(from_json(nlohmann::json::parse(to_json(odd).dump())) == odd);

  CHECK_THROWS_AS(from_json(nlohmann::json::object()), ValidationError);
}

TEST_CASE("theory prints the closed forms as JSON") {
  const auto dir = scratch_dir("theory");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run({"actnet", "theory", "--lambda", "3.5", "--mu", "2.6", "--n", "1000", "--out-dir",
                        dir.string()},
                       out, err);
  CHECK(code == kExitOk);
  const auto j = nlohmann::json::parse(out.str());
  const double p = (1.6 * 1.5) / (1.6 * 1.5 + 2.5 * 0.6);
  CHECK(j["p"].get<double>() == doctest::Approx(p).epsilon(1e-14));
  CHECK(j["mean"].get<double>() == doctest::Approx(1000 * p).epsilon(1e-12));
  CHECK(j["variance"].get<double>() == doctest::Approx(1000 * p * (1 - p)).epsilon(1e-12));
  CHECK(std::filesystem::exists(dir / "manifest.json"));
}

TEST_CASE("coalescence above the solver bound is a runtime failure") {
  const auto dir = scratch_dir("bound");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run({"actnet", "coalescence", "--n", "40", "--k", "4", "--solver-bound", "20", "--out-dir",
                        dir.string()},
                       out, err);
  CHECK(code == kExitRuntime);
  CHECK(err.str().find("solver bound") != std::string::npos);
}

TEST_CASE("manifest rerun reproduces the CSVs") {
  const auto first = scratch_dir("rerun_a");
  const auto second = scratch_dir("rerun_b");
  std::ostringstream out;
  std::ostringstream err;
  REQUIRE(run({"actnet", "fixation", "--n", "20", "--k", "4", "--replicates", "30", "--out-dir", first.string()}, out,
              err) == kExitOk);
  REQUIRE(run({"actnet", "--manifest", (first / "manifest.json").string(), "--out-dir", second.string(), "--workers",
               "3"},
              out, err) == kExitOk);
  for (const char* name : {"fixation_c.csv", "fixation_d.csv", "fixation_summary.csv"}) {
    std::ifstream a(first / name);
    std::ifstream b(second / name);
    std::stringstream sa;
    std::stringstream sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(!sa.str().empty());
    CHECK(sa.str() == sb.str());
  }
  CHECK(parse({"--manifest", (first / "manifest.json").string(), "--seed", "2"}).exit_code == kExitUsage);
}
