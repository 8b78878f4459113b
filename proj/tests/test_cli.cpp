#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "rispace/cli.hpp"

using namespace rispace;

namespace {
std::filesystem::path scratch_dir() {
  auto p = std::filesystem::temp_directory_path() / "rispace_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

RunConfig config(const std::string& text) {
  RunConfig rc;
  rc.settings = ConfigFile::parse(text);
  return rc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("catalogue") {
  const auto& cat = suite_catalogue();
  CHECK(cat.size() >= 12);
  std::set<std::string> ids;
  for (const auto& s : cat) {
    ids.insert(s.id);
    CHECK_FALSE(s.anchor.empty());
  }
  for (const char* id : {"thm21", "cor22", "cor23", "cor24", "cor27", "thm35", "thm36", "blasco-endpoints", "grand-chain"})
    CHECK(ids.count(id) == 1);
  CHECK(list_suites().find("grand-chain") != std::string::npos);
}

TEST_CASE("run writes reports and maps verdicts to exit codes") {
  const auto dir = scratch_dir();
  const auto json = (dir / "young.json").string();
  auto rc = config("suite = classical-young\np = 3/2\nq = 3/2\nr = 3\nsize = 10\nout = " + json + "\n");
  std::ostringstream out, err;
  CHECK(run(rc, out, err) == 0);
  CHECK(std::filesystem::exists(json));
  CHECK(std::filesystem::exists(dir / "young.csv"));
  CHECK(out.str().find("ConstantExactOK") != std::string::npos);
  const auto text = slurp(json);
  CHECK(text.find("\"run_config\"") != std::string::npos);
  CHECK(text.find("\"seed\": 7") != std::string::npos);

  auto bad = config("suite = classical-young\np = 3/2\nq = 3/2\nr = 3\nsize = 10\nclaimed_constant = 0.5\nout = " +
                    json + "\n");
  CHECK(run(bad, out, err) == 2);
}

TEST_CASE("configuration errors exit with 3") {
  std::ostringstream out, err;
  auto unknown_suite = config("suite = nope\n");
  CHECK(run(unknown_suite, out, err) == 3);
  auto typo = config("suite = cor22\nthetta = 0.3\n");
  CHECK(run(typo, out, err) == 3);
  CHECK(err.str().find("line 2") != std::string::npos);
  auto mismatch = config("suite = classical-young\np = 3/2\nq = 3\nr = 3\n");
  CHECK(run(mismatch, out, err) == 3);
  auto bad_value = config("suite = thm21\nE = lebesgue(\n");
  CHECK(run(bad_value, out, err) == 3);
  auto missing = config("p = 2\n");
  CHECK(run(missing, out, err) == 3);
}

TEST_CASE("resolved settings cover defaults") {
  auto rc = config("suite = cor22\nsize = 4\n");
  const auto rep = run_suite(rc);
  const auto& r = rep.parameters["run_config"];
  CHECK(r["phi0"] == "t^2");
  CHECK(r["theta"] == 0.5);
  CHECK(r["size"] == 4);
  CHECK_FALSE(r.contains("threads"));
}

TEST_CASE("output directory override") {
  const auto dir = scratch_dir() / "env";
  setenv("RISPACE_OUT_DIR", dir.string().c_str(), 1);
  auto rc = config("suite = classical-young\nsize = 3\np = 2\nq = 1\nr = 2\n");
  std::ostringstream out, err;
  CHECK(run(rc, out, err) == 0);
  unsetenv("RISPACE_OUT_DIR");
  CHECK(std::filesystem::exists(dir / "classical-young.json"));
}
