#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qoi/cli.hpp"

namespace {

struct Outcome {
  int code = 0;
  std::string out;
};

Outcome run_with(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  int code = qoi::run(std::move(args), in, out);
  return {code, out.str()};
}

std::string trimmed(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

const std::string worked_doc =
    R"({"kind":"charseq","d":3,"lambdas":[["1/3","0","0"],["5/9","1/9","0"]]})";
const std::string worked_short_doc =
    R"({"kind":"shortform","vars":2,"groups":{"s1":1,"s2":0,"s0":1},"numerator":[[99,36]],"denominator":[[0,1],[0,3],[3,1],[11,4]]})";
const std::string cone2_doc = R"({"kind":"charseq","d":2,"lambdas":[["1/2","1/2"]]})";

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qoi_cli_test_" + name);
}

}  // namespace

TEST_CASE("golden outputs") {
  auto inv = run_with({"invert"}, worked_short_doc);
  CHECK(inv.code == 0);
  CHECK(trimmed(inv.out) == R"({"d":3,"g":1,"c":2,"n":[9],"lambdas":[["11/3","1/9","0"]]})");

  auto quad = run_with({"poincare", "--short"}, cone2_doc);
  CHECK(quad.code == 0);
  auto j = nlohmann::json::parse(quad.out);
  CHECK(j["numerator"] == nlohmann::json::parse("[[2]]"));
  CHECK(j["denominator"] == nlohmann::json::parse("[[1],[1],[1]]"));

  auto bad = run_with({"validate"},
                      R"({"kind":"charseq","d":3,"lambdas":[["1/3","0","0"],["1/3","0","0"]]})");
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["error"] == "NotStrictlyIncreasing");

  auto text = run_with({"poincare", "--short", "--format", "text"}, worked_doc);
  CHECK(trimmed(text.out) == "(1 - t1^99 t2^36) / ((1 - t2)(1 - t2^3)(1 - t1^3 t2)(1 - t1^11 t2^4))");

  auto val = run_with({"validate"}, worked_doc);
  CHECK(trimmed(val.out) == R"({"valid":true,"d":3,"g":2,"c":2,"n":[3,9],"normalized":false})");
}

TEST_CASE("every command on the worked example") {
  for (std::vector<std::string> args : {std::vector<std::string>{"validate"},
                                        {"invariants"},
                                        {"essential"},
                                        {"poincare"},
                                        {"poincare", "--short"},
                                        {"count", "--bound", "12,5"},
                                        {"zeta"}}) {
    auto r = run_with(args, worked_doc);
    CHECK(r.code == 0);
    nlohmann::json parsed;
    CHECK_NOTHROW(parsed = nlohmann::json::parse(r.out));
  }
  auto ess = nlohmann::json::parse(run_with({"essential"}, worked_doc).out);
  CHECK(ess["ws"] == nlohmann::json::parse("[[9,0,0],[3,3,1]]"));
  auto zeta = nlohmann::json::parse(run_with({"zeta"}, worked_doc).out);
  CHECK(zeta["case"] == "B");
  CHECK(zeta["identity_verified"] == true);
}

TEST_CASE("expansion matches counting through the tool") {
  auto expanded = run_with({"expand", "--bound", "12,5"}, worked_short_doc);
  auto counted = run_with({"count", "--bound", "12,5"}, worked_doc);
  CHECK(expanded.code == 0);
  CHECK(counted.code == 0);
  CHECK(expanded.out == counted.out);
}

TEST_CASE("equisingularity pairs") {
  auto cone = [](std::size_t d) {
    std::string lam = "[\"1/2\",\"1/2\"";
    for (std::size_t k = 2; k < d; ++k) lam += ",\"0\"";
    lam += "]";
    return run_with({"poincare", "--short"},
                    "{\"kind\":\"charseq\",\"d\":" + std::to_string(d) + ",\"lambdas\":[" + lam + "]}")
        .out;
  };
  auto r = run_with({"equi"}, "{\"kind\":\"pair\",\"first\":" + cone(4) + ",\"second\":" + cone(3) + "}");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["k"] == 1);
  auto none = run_with({"equi"}, "{\"kind\":\"pair\",\"first\":" + worked_short_doc + ",\"second\":" + cone(3) + "}");
  CHECK(none.code == 0);
  CHECK(nlohmann::json::parse(none.out)["k"].is_null());
}

TEST_CASE("malformed input exits with code two") {
  CHECK(run_with({"validate"}, "{bad").code == 2);
  CHECK(run_with({"validate"}, R"({"d":2,"lambdas":[["1/2","1/2"]]})").code == 2);
  CHECK(run_with({"validate"}, R"({"kind":"charseq","d":2,"lambdas":[["2/4","1/2"]]})").code == 2);
  CHECK(run_with({"validate"}, R"({"kind":"charseq","d":2,"lambdas":[["1/2","x"]]})").code == 2);
  CHECK(run_with({}).code == 2);
  CHECK(run_with({"frobnicate"}).code == 2);
  CHECK(run_with({"expand"}, worked_short_doc).code == 2);
  CHECK(run_with({"invert"}, R"({"kind":"pair","first":{},"second":{}})").code == 2);
  CHECK(run_with({"equi"}, worked_short_doc).code == 2);
  CHECK(run_with({"validate", "/nonexistent/qoi.json"}).code == 2);
  auto r = run_with({"validate", "--format", "yaml"}, worked_doc);
  CHECK(r.code == 2);
}

TEST_CASE("domain errors exit with code one") {
  auto r = run_with({"invert"},
                    R"({"kind":"shortform","vars":2,"groups":{"s1":1,"s2":0,"s0":1},"numerator":[[5,5]],"denominator":[[2,2],[1,0],[0,1],[1,2]]})");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["error"] == "NoPairing");
  auto e = run_with({"expand", "--bound", "3,3"},
                    R"({"kind":"shortform","vars":2,"groups":{"s1":1,"s2":0,"s0":1},"numerator":[],"denominator":[[0,0]]})");
  CHECK(e.code == 1);
  CHECK(nlohmann::json::parse(e.out)["error"] == "DivergentAtOrigin");
}

TEST_CASE("file input") {
  auto path = scratch("worked.json");
  std::ofstream(path) << worked_doc;
  auto from_file = run_with({"invariants", path.string()});
  auto from_stdin = run_with({"invariants"}, worked_doc);
  CHECK(from_file.code == 0);
  CHECK(from_file.out == from_stdin.out);
  std::filesystem::remove(path);
}

TEST_CASE("output does not depend on the worker count") {
  const std::string doc =
      R"({"kind":"charseq","d":3,"lambdas":[["3/2","1/3","0"],["2","1/2","1/4"],["5/2","2/3","3/8"]]})";
  std::vector<std::vector<std::string>> commands{{"invariants"}, {"essential"}, {"poincare", "--short"},
                                                 {"count", "--bound", "20,30,30,60"}, {"zeta"}};
  for (const auto& args : commands) {
    setenv("QOI_THREADS", "1", 1);
    auto one = run_with(args, doc);
    setenv("QOI_THREADS", "5", 1);
    auto five = run_with(args, doc);
    unsetenv("QOI_THREADS");
    auto dflt = run_with(args, doc);
    CHECK(one.code == 0);
    CHECK(one.out == five.out);
    CHECK(one.out == dflt.out);
  }
}

TEST_CASE("poincare then invert through files reproduces the golden corpus") {
  int checked = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QOI_GOLDEN_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().filename().string());
    std::ifstream in(entry.path());
    auto input = nlohmann::json::parse(in);
    auto series_path = scratch(entry.path().filename().string());
    auto forward = run_with({"poincare", "--short", entry.path().string()});
    REQUIRE(forward.code == 0);
    std::ofstream(series_path) << forward.out;
    auto back = run_with({"invert", series_path.string()});
    std::filesystem::remove(series_path);
    REQUIRE(back.code == 0);
    auto recovered = nlohmann::json::parse(back.out);
    CHECK(recovered["d"] == input["d"]);
    CHECK(recovered["lambdas"] == input["lambdas"]);
    ++checked;
  }
  CHECK(checked >= 10);
}
