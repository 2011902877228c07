#include <doctest.h>

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input) {
  args.insert(args.begin(), "cstar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cstar::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

const char* kDiag = R"({"instance":"diag_real","dim":2,"entries":["3/1","-4/1"]})";

}  // namespace

TEST_CASE("norm") {
  const Run r = cli({"--precision", "4", "norm"}, kDiag);
  CHECK(r.code == 0);
  CHECK(r.out == "{\"norm_upper\":\"4/1\"}\n");
}

TEST_CASE("norm0 and transform") {
  const Run n0 = cli({"--precision", "3", "norm0"}, kDiag);
  CHECK(n0.code == 0);
  CHECK(json::parse(n0.out)["norm0_upper"] == "33/8");
  const Run t = cli({"transform"}, kDiag);
  CHECK(t.code == 0);
  const json j = json::parse(t.out);
  CHECK(j["values"][1]["re"] == "-4/1");
  CHECK(j["sup_upper"] == "4/1");
}

TEST_CASE("sqrt of one") {
  const Run r = cli({"--iters", "5", "sqrt"}, R"({"instance":"diag_real","dim":1,"entries":["1/1"]})");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["residual"] == "0/1");
  CHECK(j["root"]["entries"] == json::array({"1/1"}));
  CHECK(j["iterations"] == 5);
}

TEST_CASE("abs and inv") {
  const Run a = cli({"--iters", "12", "abs"}, R"({"instance":"diag_complex","dim":1,"entries":[{"re":"3/1","im":"4/1"}]})");
  CHECK(a.code == 0);
  const Run i = cli({"inv"}, R"({"element":{"instance":"diag_real","dim":1,"entries":["1/1"]},"epsilon":"1/100"})");
  CHECK(i.code == 0);
  CHECK(json::parse(i.out)["inverse"]["entries"] == json::array({"1/2"}));
  const Run plain = cli({"inv"}, R"({"instance":"diag_real","dim":2,"entries":["1/1","2/1"]})");
  CHECK(plain.code == 0);
}

TEST_CASE("entail") {
  const Run r = cli({"entail"}, R"({"left":[],"right":[[{"instance":"diag_real","dim":2,"entries":["1/1","2/1"]}]]})");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["spatial"] == true);
  CHECK(j["certificate"]["replays"] == true);

  const Run no = cli({"entail"}, R"({"left":[],"right":[[{"instance":"diag_real","dim":2,"entries":["1/1","-1/1"]}]]})");
  CHECK(no.code == 4);
  CHECK(json::parse(no.out)["certificate"] == "none-at-degree");
  CHECK(json::parse(no.out)["spatial"] == false);

  const Run dnf = cli({"entail"}, R"({"left":[{"instance":"diag_real","dim":2,"entries":["1/1","1/1"]}],
    "right":[[{"instance":"diag_real","dim":2,"entries":["1/1","2/1"]},{"instance":"diag_real","dim":2,"entries":["3/1","1/1"]}]]})");
  CHECK(dnf.code == 0);
  CHECK(json::parse(dnf.out)["certificate"]["choices"].size() == 2);
}

TEST_CASE("certkey") {
  const Run r = cli({"certkey"}, R"({"a":{"instance":"diag_real","dim":2,"entries":["2/1","3/1"]},
    "c":{"instance":"diag_real","dim":2,"entries":["1/1","1/1"]}})");
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["N"] == 3);
  CHECK(j["L"] == 1);
  CHECK(j["bound"] == "1/2");
  const Run bad = cli({"certkey"}, R"({"a":{"instance":"diag_real","dim":1,"entries":["-2/1"]},
    "c":{"instance":"diag_real","dim":1,"entries":["1/1"]}})");
  CHECK(bad.code == 2);
}

TEST_CASE("exit codes and error lines") {
  const Run pre = cli({"sqrt"}, R"({"instance":"diag_real","dim":1,"entries":["3/1"]})");
  CHECK(pre.code == 2);
  CHECK(json::parse(pre.err).contains("error"));
  const Run schema = cli({"norm"}, R"({"instance":"diag_real","dim":3,"entries":["1/1"]})");
  CHECK(schema.code == 3);
  CHECK(json::parse(schema.err).contains("error"));
  CHECK(cli({"norm"}, "not json").code == 3);
  CHECK(cli({"--precision", "0", "norm"}, kDiag).code == 3);
  CHECK(cli({"--iters", "0", "sqrt"}, kDiag).code == 3);
  CHECK(cli({"--degree", "0", "entail"}, "{}").code == 3);
  CHECK(cli({"frobnicate"}, kDiag).code == 3);
  CHECK(cli({}, kDiag).code == 3);
  CHECK(cli({"--help"}, "").code == 0);
  CHECK(cli({"norm0"}, R"({"instance":"circulant","dim":1,"entries":[{"re":"1/1","im":"0/1"}]})").code == 3);
}

TEST_CASE("output is deterministic") {
  const std::string q = R"({"left":[{"instance":"diag_real","dim":3,"entries":["1/1","-1/1","2/1"]}],
    "right":[[{"instance":"diag_real","dim":3,"entries":["2/1","-1/1","1/1"]}],[{"instance":"diag_real","dim":3,"entries":["-1/1","0/1","3/1"]}]]})";
  const Run a = cli({"entail"}, q), b = cli({"entail"}, q);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Run s1 = cli({"--iters", "8", "sqrt"}, R"({"instance":"diag_real","dim":2,"entries":["1/3","5/4"]})");
  const Run s2 = cli({"--iters", "8", "sqrt"}, R"({"instance":"diag_real","dim":2,"entries":["1/3","5/4"]})");
  CHECK(s1.out == s2.out);
}
