#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "ordlab_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  fs::path out = scratch() / "out.txt";
  std::string cmd = std::string("\"") + ORDLAB_CLI_PATH + "\" " + args + " > " + out.string() +
                    " 2> " + (scratch() / "err.txt").string();
  int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

fs::path fixture(const char* name, const char* text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text << "\n";
  return p;
}

}  // namespace

TEST_CASE("cli: presentation parse errors exit 2") {
  fs::path bad = fixture("bad.pres", "gens: x,x\nrels:");
  CHECK(run("ball --presentation " + bad.string() + " -k 1").exit_code == 2);
  CHECK(run("ball --presentation /nonexistent.pres -k 1").exit_code == 2);
}

TEST_CASE("cli: usage errors exit 2") {
  fs::path z2 = fixture("z2.pres", fixtures::kZ2);
  CHECK(run("ball --presentation " + z2.string() + " -k 0").exit_code == 2);
  CHECK(run("ball --presentation " + z2.string() + " -k 2..1").exit_code == 2);
  CHECK(run("ball --presentation " + z2.string() + " -k 1..3").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("test lo --presentation " + z2.string()).exit_code == 2);  // missing -k
  CHECK(run("verify-cone dehornoy --presentation " + z2.string() + " -k 1").exit_code == 2);
  CHECK(run("verify-cone lex:3 --presentation " + z2.string() + " -k 1").exit_code == 2);
}

TEST_CASE("cli: constraint errors") {
  fs::path z2 = fixture("z2.pres", fixtures::kZ2);
  std::string base = "enumerate --presentation " + z2.string();
  CHECK(run(base + " -k 1 --constrain \"ab>1\"").exit_code == 2);  // outside ball
  CHECK(run(base + " -k 1 --constrain \"a>2\"").exit_code == 2);   // bad grammar
  CHECK(run(base + " -k 1..2 --constrain \"a>1\"").exit_code == 2);  // range + constraint
  RunResult ok = run(base + " -k 1 --constrain \"a<1\" --format json");
  CHECK(ok.exit_code == 0);
  CHECK(json::parse(ok.output)["count"] == 2);
}

TEST_CASE("cli: solver node cap exits 4") {
  fs::path f2 = fixture("f2.pres", fixtures::kF2);
  CHECK(run("test lo --presentation " + f2.string() + " -k 3 --node-cap 1").exit_code == 4);
}

TEST_CASE("cli: check-cert on malformed JSON exits 2") {
  fs::path bad = scratch() / "bad.cert.json";
  std::ofstream(bad) << "{\"kind\": \"preorder\"";
  CHECK(run("check-cert " + bad.string()).exit_code == 2);
}

TEST_CASE("cli: enumerate counts on Z over a range") {
  fs::path z1 = fixture("z1.pres", fixtures::kZ1);
  RunResult r = run("enumerate --presentation " + z1.string() + " -k 1..4 --format json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  REQUIRE(j["diagram"]["levels"].size() == 4);
  for (const auto& level : j["diagram"]["levels"]) CHECK(level["count"] == 2);
}

TEST_CASE("cli: ball dump on the Poincare presentation stays within the group order") {
  fs::path poin = fixture("poincare.pres", fixtures::kPoincare);
  RunResult r = run("ball --presentation " + poin.string() + " -k 7 --format json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j["ball"]["size"].get<int>() <= 120);
}

TEST_CASE("cli: human output mirrors the JSON report") {
  fs::path klein = fixture("klein.pres", fixtures::kKlein);
  fs::path out = scratch() / "mirror.json";
  RunResult human = run("test bo --presentation " + klein.string() + " -k 1 --out " +
                        out.string());
  CHECK(human.exit_code == 1);
  json j = json::parse(slurp(out));
  // Every key and scalar of the JSON report appears in the human rendering.
  CHECK(human.output.find("unsat_at: 1") != std::string::npos);
  CHECK(human.output.find("mode: \"bo\"") != std::string::npos);
  CHECK(human.output.find("pair: \"y\"") != std::string::npos);
  CHECK(j["unsat_at"] == 1);

  RunResult as_json = run("test bo --presentation " + klein.string() + " -k 1 --format json");
  CHECK(json::parse(as_json.output) == j);
}

TEST_CASE("cli: --out writes the same JSON as --format json prints") {
  fs::path z2 = fixture("z2.pres", fixtures::kZ2);
  fs::path out = scratch() / "same.json";
  RunResult printed = run("ball --presentation " + z2.string() + " -k 2 --format json --out " +
                          out.string());
  REQUIRE(printed.exit_code == 0);
  CHECK(printed.output == slurp(out));
}
