#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "itm/cli.hpp"
#include "itm/json_io.hpp"

using itm::io::Json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "itmtool_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = itm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kHalfCollapse = R"({"map":{"breakpoints":["0","1/2"],"shifts":["0","1/2"]}})";

}  // namespace

TEST_CASE("attractor on half-collapse") {
  auto r = run({"attractor", "--config", write_config("hc.json", kHalfCollapse)});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["stabilizedAt"] == 1);
  CHECK(j["result"]["attractor"]["arcs"][0]["start"] == "0");
  CHECK(j["result"]["attractor"]["arcs"][0]["length"] == "1/2");
  CHECK(j["config"]["budgets"]["maxIter"] == 4096);
  CHECK(j["version"] == itm::cli::kVersion);
}

TEST_CASE("validate reports the violating index") {
  auto r = run({"validate", "--config",
                write_config("bad.json", R"({"map":{"breakpoints":["1/2","0"],"shifts":["0","0"]}})")});
  CHECK(r.code == 1);
  CHECK(r.err.find("index 1") != std::string::npos);
  CHECK(r.err.find("Itm") != std::string::npos);
  CHECK(run({"validate", "--config", write_config("ok.json", kHalfCollapse)}).code == 0);
  CHECK(run({"validate", "--config", write_config("garbage.json", "{nope")}).code == 1);
  CHECK(run({"validate", "--config", (scratch() / "missing.json").string()}).code == 1);
  CHECK(run({"frobnicate", "--config", "x"}).code == 1);
}

TEST_CASE("budget and verification exit codes") {
  std::string two = write_config("two.json", R"({"map":{"breakpoints":["0","1/2"],"shifts":["1/3","1/4"]}})");
  CHECK(run({"attractor", "--config", two, "--max-arcs", "1"}).code == 2);
  CHECK(run({"measure", "--config", two, "--max-iter", "1"}).code == 2);
  std::string notinv = write_config(
      "notinv.json", R"({"map":{"breakpoints":["0","1/2"],"shifts":["0","1/2"]},"measure":"lebesgue"})");
  auto r = run({"conjugate", "--config", notinv});
  CHECK(r.code == 3);
  CHECK(r.err.find("induce_iem") != std::string::npos);
  std::string ex = write_config("ex01.json", R"({"piecewiseMap":{"domain":"segment","pieces":[{"interval":{"lo":"0","hi":"1"},
      "affine":{"a":"1/2","b":"0"}}],"boundaryValues":{"0":"1"}},"x0":"1","length":200,
      "family":{"kind":"monomial","degree":1}})");
  auto v = run({"verify-limit", "--config", ex, "--levels", "10"});
  CHECK(v.code == 3);
  Json j = Json::parse(v.out);
  CHECK(j["result"]["report"]["massCondition"] == false);
  CHECK(j["config"]["levels"] == 10);
}

TEST_CASE("approximate on the golden rotation") {
  std::string cfg = write_config("golden.json", R"({"schedule":{"target":{"breakpoints":["0"],
      "shifts":["0.6180339887498948482"],"precision":19},"denominators":[2,3,5,8,13,21]}})");
  auto r = run({"approximate", "--config", cfg});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["cauchy"]["cauchy"] == true);
  CHECK(j["result"]["limitIsLebesgue"] == true);
  for (const auto& lv : j["result"]["levels"]) CHECK(lv["isLebesgue"] == true);
  CHECK(j["result"]["levels"][3]["shifts"][0] == "5/8");
}

TEST_CASE("reports are deterministic and artifacts are written") {
  std::string cfg = write_config("meas.json", R"({"map":{"breakpoints":["0","1/3","3/4"],"shifts":["1/5","2/3","1/4"]},
      "recurrence":{"samples":20}})");
  fs::path a = scratch() / "run_a", b = scratch() / "run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  REQUIRE(run({"measure", "--config", cfg, "--out", a.string(), "--plot", "--seed", "9"}).code == 0);
  REQUIRE(run({"measure", "--config", cfg, "--out", b.string(), "--plot", "--seed", "9"}).code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p);
    return std::string(std::istreambuf_iterator<char>(f), {});
  };
  CHECK(slurp(a / "measure.json") == slurp(b / "measure.json"));
  CHECK(fs::exists(a / "cdf.csv"));
  CHECK(fs::exists(a / "density.svg"));
  CHECK(slurp(a / "cdf.csv").rfind("x,F(x)\n", 0) == 0);
  Json j = Json::parse(slurp(a / "measure.json"));
  CHECK(j["result"]["invarianceResidualExact"] == "0");
  CHECK(j["config"]["seed"] == 9);
}

TEST_CASE("other commands run") {
  std::string hc = write_config("hc2.json", kHalfCollapse);
  auto h = run({"homtervals", "--config", hc, "--depth", "1"});
  REQUIRE(h.code == 0);
  CHECK(Json::parse(h.out)["result"]["homtervals"].size() == 2);
  auto rel = run({"relations", "--config", hc, "--depth", "1"});
  REQUIRE(rel.code == 0);
  CHECK(!Json::parse(rel.out)["result"]["relations"].empty());
  auto c = run({"conjugate", "--config", hc});
  REQUIRE(c.code == 0);
  Json cj = Json::parse(c.out);
  CHECK(cj["result"]["verification"]["ok"] == true);
  CHECK(cj["result"]["d"] == Json::array({"0"}));
  std::string emp = write_config("emp.json", R"({"piecewiseMap":{"domain":"circle","pieces":[{"interval":{"lo":"0","hi":"1"},
      "affine":{"a":"1","b":"2584/4181"}}],"h":["0"]},"x0":"0","lengths":[10,100],"reference":"lebesgue"})");
  auto e = run({"empirical", "--config", emp});
  REQUIRE(e.code == 0);
  Json ej = Json::parse(e.out);
  CHECK(ej["result"]["empirical"][1]["defect"]["identityHolds"] == true);
  CHECK(ej["result"]["empirical"][1]["defect"]["norm"] == "1/50");
}
