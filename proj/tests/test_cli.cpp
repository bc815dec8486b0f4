// IO-format tests plus end-to-end checks through the installed binary
// (path injected by the build as DUNKL_BIN).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "dunkl/io.hpp"

using namespace dunkl;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(DUNKL_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("polynomial json round trip") {
  auto p = parse_poly<Sqrt2>("3/2 x1^2 x3 - 1 x2", 3);
  auto j = poly_to_json(p);
  CHECK(poly_from_json<Sqrt2>(j) == p);
  CHECK_THROWS_AS(poly_from_json<Sqrt2>(nlohmann::json::object()), ConfigError);
}

TEST_CASE("custom system json") {
  nlohmann::json j;
  j["roots"] = nlohmann::json::array(
      {nlohmann::json::array({"1", "0"}), nlohmann::json::array({"0", "1"}),
       nlohmann::json::array({"1", "1"}), nlohmann::json::array({"1", "-1"})});
  j["multiplicity"] = {{"1,0", "1/2"}, {"1,1", "1"}};
  auto ctx = custom_system_from_json(j);
  CHECK(ctx.group.size() == 8);
  CHECK(ctx.num_orbits() == 2);
  CHECK(ctx.gamma() == Rational(3));
  // ordered form
  nlohmann::json j2;
  j2["roots"] = j["roots"];
  j2["k"] = {"1/2", "1"};
  auto ctx2 = custom_system_from_json(j2);
  CHECK(ctx2.gamma() == ctx.gamma());
  // conflicting per-orbit assignment
  nlohmann::json j3;
  j3["roots"] = j["roots"];
  j3["multiplicity"] = {{"1,1", "1"}, {"1,-1", "2"}};
  CHECK_THROWS_AS(custom_system_from_json(j3), ConfigError);
}

TEST_CASE("cli: evaluation commands") {
  auto pair = run_cli("pair --p x1 --q x1 --group A --dim 1 --k 1/2");
  CHECK(pair.exit_code == 0);
  CHECK(pair.out == "2\n");

  auto apply = run_cli("apply --op \"T(e1)\" --poly \"x1^2\" --group A --dim 1 --k 3/4");
  CHECK(apply.exit_code == 0);
  CHECK(apply.out == "2 x1\n");

  auto inter = run_cli("intertwine --poly \"x1^2\" --group A --dim 1 --k 1");
  CHECK(inter.exit_code == 0);
  CHECK(inter.out == "1/3 x1^2\n");

  auto heat = run_cli("heat --t 0.5 --x 1 --y 0.3 --k 0 --format json");
  CHECK(heat.exit_code == 0);
  // classical gaussian kernel value
  double expected = std::exp(-(1.0 - 0.3) * (1.0 - 0.3) / 2.0) / std::sqrt(2.0 * M_PI);
  auto j = nlohmann::json::parse(heat.out);
  CHECK(j["value"].get<double>() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("cli: group info and custom json file") {
  auto info = run_cli("group --type B --dim 2 --k 1/2,1 --info");
  CHECK(info.exit_code == 0);
  CHECK(info.out.find("group order: 8") != std::string::npos);
  CHECK(info.out.find("gamma: 3") != std::string::npos);

  std::string path = "/tmp/dunkl_custom_b2.json";
  {
    std::ofstream f(path);
    f << R"({"roots": [["1","0"],["0","1"],["1","1"],["1","-1"]], "k": ["1/2","1/2"]})";
  }
  auto custom = run_cli("group --group custom --custom " + path + " --info");
  CHECK(custom.exit_code == 0);
  CHECK(custom.out.find("group order: 8") != std::string::npos);
}

TEST_CASE("cli: verify determinism and exit codes") {
  std::string args = "verify kernel --group A --dim 1 --k 1/2 --seed 7";
  auto first = run_cli(args);
  auto second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out.find("seed 7") != std::string::npos);

  // negative multiplicity is a configuration error: exit 2
  auto bad = run_cli("verify operators --group A --dim 2 --k -1/2");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("configuration error") != std::string::npos);

  auto unknown = run_cli("verify nosuchsuite --group A --dim 1");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("cli: asympt csv and integrate rule export") {
  auto csv = run_cli("asympt --k 1/2 --x 1 --y 1 --mode ray --t 50,100");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("t,value_re,value_im,target_re,target_im,error\n", 0) == 0);
  int lines = 0;
  for (char c : csv.out)
    if (c == '\n') ++lines;
  CHECK(lines == 3);

  auto rule = run_cli("integrate --group A --dim 1 --k 1/2 --nodes 4 --measure gaussian-wk");
  CHECK(rule.exit_code == 0);
  lines = 0;
  for (char c : rule.out)
    if (c == '\n') ++lines;
  CHECK(lines == 4);

  auto val = run_cli("integrate --group A --dim 1 --k 1 --nodes 24 --expr \"x1^2\"");
  CHECK(val.exit_code == 0);
  // moment against the gamma closed form: 2^k 2^{m+k+1/2} Gamma(m+k+1/2), m = k = 1
  double expected = 2.0 * std::pow(2.0, 2.5) * std::tgamma(2.5);
  CHECK(std::fabs(std::stod(val.out) - expected) < 1e-9);
}

TEST_CASE("cli: kernel json carries diagnostics") {
  auto r = run_cli("kernel --x 0.5,0.5 --y 0.25,0.5 --group B --dim 2 --k 1/2,1 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("value_re"));
  CHECK(j.contains("tail_bound"));
  CHECK(j["truncation"].get<int>() == 40);
  CHECK(j["value_re"].get<double>() > 0.0);
}
