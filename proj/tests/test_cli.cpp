#include "qortho/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <sstream>

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qortho::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0) {
  args.insert(args.begin(), {"--format", "json"});
  Outcome o = run(args);
  CHECK(o.code == expected_code);
  return nlohmann::json::parse(o.out);
}

}  // namespace

TEST_CASE("ybe --n 4 passes") {
  auto j = run_json({"ybe", "--n", "4"});
  CHECK(j["command"] == "ybe");
  CHECK(j["n"] == 4);
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() == 1);
}

TEST_CASE("table --n 6 --regime real has 10 rows") {
  auto j = run_json({"table", "--n", "6", "--regime", "real"});
  const auto& count = j["checks"][0];
  CHECK(count["name"] == "count_real");
  CHECK(count["data"]["count"] == 10);
  CHECK(count["data"]["table"].size() == 10);
  CHECK(count["data"]["table"][0]["label"] == "SO(6,0)");
  CHECK(count["data"]["table"][0]["spec"]["base"] == "star");
  CHECK(count["data"]["table"][0]["signature"] == nlohmann::json::array({6, 0}));
  CHECK(j["checks"][1]["pass"] == true);
}

TEST_CASE("quotient --sign plus passes") {
  CHECK(run({"quotient", "--sign", "plus"}).code == 0);
  CHECK(run({"quotient", "--sign", "minus"}).code == 0);
  CHECK(run({"quotient", "--sign", "plus", "--without-t"}).code == 1);
}

TEST_CASE("usage errors exit 2") {
  Outcome o = run({"rmat", "--n", "2"});
  CHECK(o.code == 2);
  CHECK(o.out.empty());
  CHECK(o.err.find("BadN") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"ybe"}).code == 2);
  CHECK(run({"ybe", "--n", "13"}).code == 2);
  CHECK(run({"classify", "--n", "4", "--spec", "base:star;autos:bogus"}).code == 2);
  CHECK(run({"classify", "--n", "4", "--spec", "base:cross;regime:real"}).code == 2);
  CHECK(run({"classify", "--n", "4", "--spec", "base:star", "--base", "cross"}).code == 2);
  CHECK(run({"--format", "xml", "ybe", "--n", "3"}).code == 2);
}

TEST_CASE("ybe cap can be forced") {
  // N = 13 would be slow; the cap check happens before any work.
  CHECK(run({"ybe", "--n", "12"}).code == 0);
}

TEST_CASE("classify through both interfaces") {
  auto a = run_json({"classify", "--n", "4", "--spec", "base:star;autos:canonical;regime:real"});
  auto b = run_json({"classify", "--n", "4", "--regime", "real", "--base", "star", "--autos", "canonical"});
  CHECK(a == b);
  CHECK(a["regime"] == "real");
  CHECK(a["checks"].back()["data"]["label"] == "SO(3,1)");
  auto c = run_json({"classify", "--n", "4", "--regime", "unit"});
  CHECK(c["checks"].back()["data"]["label"] == "SO(2,2)");
  auto d = run_json({"classify", "--n", "4", "--autos", "dsecond:++--"});
  CHECK(d["checks"].back()["data"]["label"] == "SO*(4)");
}

TEST_CASE("other subcommands") {
  CHECK(run({"rmat", "--n", "4"}).code == 0);
  CHECK(run({"projectors", "--n", "4"}).code == 0);
  auto p = run_json({"plane", "--n", "4", "--relations"});
  CHECK(p["checks"].size() == 1);
  CHECK(p["checks"][0]["data"]["rules"].size() == 6);
  CHECK(p["checks"][0]["data"]["rules"][0]["lhs"] == nlohmann::json::array({1, 2}));
  CHECK(p["checks"][0]["data"]["rules"][0]["rhs"][0]["coeff"] == "1/1*s^2");
  CHECK(run({"plane", "--n", "5"}).code == 0);
  CHECK(run({"plane-conj", "--n", "4", "--spec", "base:star;autos:canonical", "--check"}).code == 0);
  auto nc = run_json({"plane-conj", "--n", "4", "--spec", "base:star;autos:dsecond:++--"}, 1);
  CHECK(nc["checks"][0]["witness"]["where"] == "NoPlaneConjugation");
  CHECK(run({"verify-all", "--n", "4"}).code == 0);
}

TEST_CASE("text output") {
  Outcome o = run({"--format", "text", "ybe", "--n", "3"});
  CHECK(o.out.rfind("qortho ybe n=3: PASS\n", 0) == 0);
  Outcome q = run({"--format", "text", "quotient", "--sign", "plus", "--without-t"});
  CHECK(q.out.find("FAIL quotient_plus at ") != std::string::npos);
}

TEST_CASE("QORTHO_FORMAT selects the default format") {
  setenv("QORTHO_FORMAT", "json", 1);
  Outcome o = run({"ybe", "--n", "3"});
  CHECK(nlohmann::json::parse(o.out)["pass"] == true);
  Outcome t = run({"--format", "text", "ybe", "--n", "3"});
  CHECK(t.out.rfind("qortho", 0) == 0);
  setenv("QORTHO_FORMAT", "yaml", 1);
  CHECK(run({"ybe", "--n", "3"}).code == 2);
  unsetenv("QORTHO_FORMAT");
  CHECK(run({"ybe", "--n", "3"}).out.rfind("qortho", 0) == 0);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"--format", "json", "table", "--n", "8", "--regime", "real"},
        std::vector<std::string>{"--format", "json", "plane", "--n", "4"},
        std::vector<std::string>{"--format", "text", "verify-all", "--n", "3"}}) {
    Outcome a = run(args);
    Outcome b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
