#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace testing_support;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  static const fs::path dir = fs::temp_directory_path() / "gdrazin_cli_test";
  fs::create_directories(dir);
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string(GDRAZIN_CLI) + " " + args + " >" + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / "gdrazin_cli_test" / name; }

}  // namespace

TEST_CASE("reproduce") {
  Run r = cli("reproduce");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS shift-pierce: x^d = 0") != std::string::npos);
  CHECK(r.out.find("PASS block-2i: M^d matches the printed matrix") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("FINDING") != std::string::npos);
}

TEST_CASE("drazin and exit codes") {
  cli("");  // creates the scratch directory
  write_json_file(scratch("n3.json"), matrix_to_json(shift3()));
  Run r = cli("drazin --verify-axioms " + scratch("n3.json").string());
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["index"] == 3);
  CHECK(doc["axioms"]["all"] == true);
  CHECK(matrix_from_json(doc["dinv"]).as<G>().is_zero());

  CHECK(cli("drazin /nonexistent.json").code == 2);
  CHECK(cli("--backend float drazin x").code == 2);
  CHECK(cli("").code == 2);
  write_json_file(scratch("near.json"), matrix_to_json(ApproxMatrix{{1.0, 0.0}, {0.0, 3e-10}}));
  CHECK(cli("--backend approx drazin " + scratch("near.json").string()).code == 3);
  CHECK(cli("drazin " + scratch("near.json").string()).code == 2);  // approx data on the exact backend
}

TEST_CASE("check and apply on the fixtures") {
  write_json_file(scratch("block.json"), bundle_to_json(fixture_block_2i()));
  write_json_file(scratch("pierce.json"), bundle_to_json(fixture_shift_pierce()));
  const std::string block = scratch("block.json").string(), pierce = scratch("pierce.json").string();

  Run ok = cli("check " + block);
  CHECK(ok.code == 0);
  CHECK(json::parse(ok.out)["report"]["lambda"] == "2i");
  Run unit = cli("check " + pierce + " --lambda 1");
  CHECK(unit.code == 1);
  CHECK(json::parse(unit.out)["report"]["first_failure"] == "a^pi b d = lambda a b");

  Run applied = cli("apply " + pierce);
  REQUIRE(applied.code == 0);
  json doc = json::parse(applied.out);
  CHECK(doc["agree"] == true);
  CHECK(matrix_from_json(doc["result"]).as<G>().is_zero());

  Run printed = cli("apply " + block);
  CHECK(printed.code == 0);
  CHECK(json::parse(printed.out)["agree"] == false);
  CHECK(cli("apply --strict " + block).code == 1);
  CHECK(cli("apply " + block + " --lambda 1").code == 1);
  CHECK(cli("apply " + block + " --theorem T31").code == 2);
  CHECK(cli("--backend approx apply " + pierce).code == 0);
}

TEST_CASE("generate, verify") {
  const std::string bundle = scratch("g.json").string();
  REQUIRE(cli("--seed 5 --out " + bundle + " generate --family G5 --target C42 --dim 5").code == 0);
  Run r = cli("apply " + bundle + " --route delegated");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["agree"] == true);
  CHECK(cli("verify --count 0").code == 0);
  Run v = cli("verify --suite G1,G2 --count 3 --dim 3-4 --jobs 2");
  CHECK(v.code == 0);
  CHECK(json::parse(v.out)["summary"]["agree"] == 6);
  CHECK(cli("verify --suite G7").code == 2);
  CHECK(cli("verify --dim 1-3").code == 2);
}
