#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#ifndef CASIMIR_BIN
#error "CASIMIR_BIN must point at the CLI binary"
#endif

namespace {

// an ambient cache would couple unrelated test cases
const bool env_cleared = [] {
  unsetenv("CASIMIR_CACHE");
  return true;
}();

struct CmdResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string& scratch_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/casimir_cli_XXXXXX";
    char* p = mkdtemp(tmpl);
    REQUIRE(p != nullptr);
    return std::string(p);
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string base = scratch_dir() + "/run" + std::to_string(counter++);
  const std::string cmd =
      std::string(CASIMIR_BIN) + " " + args + " >" + base + ".out 2>" + base + ".err";
  int rc = std::system(cmd.c_str());
  CmdResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(base + ".out");
  r.err = slurp(base + ".err");
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> cells_of(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

long count_lines(const std::string& path) {
  std::ifstream in(path);
  long n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("compute: csv layout and closed-form values") {
  CmdResult r = run_cli("compute --bc dirichlet --dim 3 --digits 30");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "D,bc,energy_beta,sign,max_abs_term,cancellation_digits_lost");
  auto cells = cells_of(ls[1]);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0] == "3");
  CHECK(cells[1] == "dirichlet");
  CHECK(starts_with(cells[2], "-0.0156646531681464766"));
  CHECK(cells[3] == "-");

  CmdResult n = run_cli("compute --bc neumann --dim 1 --digits 30");
  REQUIRE(n.code == 0);
  auto ncells = cells_of(lines_of(n.out)[1]);
  CHECK(starts_with(ncells[2], "-0.130899693899574718"));
  CHECK(ncells[3] == "-");
}

TEST_CASE("scan: exact header and the D=36 sign") {
  CmdResult r = run_cli("scan --bc dirichlet --from 36 --to 36 --digits 20");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "D,energy_beta,sign,scaled,cancellation_digits_lost");
  auto cells = cells_of(ls[1]);
  REQUIRE(cells.size() == 5);
  CHECK(cells[0] == "36");
  CHECK(cells[2] == "-");
  CHECK(!cells[3].empty());  // |E(36)| < 1, so the scaled column is filled
}

TEST_CASE("csv output is byte deterministic") {
  const std::string cmd = "scan --bc dirichlet --from 1 --to 6 --digits 15";
  CmdResult a = run_cli(cmd);
  CmdResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines_of(a.out).size() == 7);
}

TEST_CASE("json schema, with and without timestamp") {
  CmdResult r = run_cli("compute --bc dirichlet --dim 2 --digits 12 --format json");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["command"] == "compute");
  CHECK(j["units"] == "beta");
  CHECK(j["parameters"]["dim"] == "2");
  CHECK(j["columns"].size() == 6);
  CHECK(j["rows"][0][0] == "2");
  CHECK(j["summary"].contains("working_digits"));
  REQUIRE(j.contains("timestamp"));
  std::string ts = j["timestamp"].get<std::string>();
  CHECK(ts.size() == 20);
  CHECK(ts.back() == 'Z');

  CmdResult q =
      run_cli("compute --bc dirichlet --dim 2 --digits 12 --format json --no-timestamp");
  REQUIRE(q.code == 0);
  nlohmann::json j2 = nlohmann::json::parse(q.out);
  CHECK(!j2.contains("timestamp"));
  CHECK(j2["rows"] == j["rows"]);
}

TEST_CASE("--out writes the payload to a file") {
  const std::string path = scratch_dir() + "/payload.csv";
  CmdResult r = run_cli("compute --bc dirichlet --dim 1 --digits 12 --out " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::string payload = slurp(path);
  CHECK(starts_with(payload, "D,bc,energy_beta"));
  CHECK(payload.find("-0.1308996939") != std::string::npos);
}

TEST_CASE("result cache: hit, append, corruption tolerance") {
  const std::string cache = scratch_dir() + "/cache.jsonl";
  const std::string cmd = "compute --bc dirichlet --dim 4 --digits 20 --cache " + cache;
  CmdResult first = run_cli(cmd);
  REQUIRE(first.code == 0);
  CHECK(count_lines(cache) == 1);
  CmdResult second = run_cli(cmd);
  REQUIRE(second.code == 0);
  CHECK(second.out == first.out);
  CHECK(count_lines(cache) == 1);  // hit: nothing appended

  // different parameters append a second entry
  CmdResult other =
      run_cli("compute --bc dirichlet --dim 5 --digits 20 --cache " + cache);
  REQUIRE(other.code == 0);
  CHECK(count_lines(cache) == 2);

  // a corrupt line is skipped without invalidating its neighbours
  {
    std::string good = slurp(cache);
    std::ofstream out(cache, std::ios::trunc | std::ios::binary);
    out << "this is not json{{{\n" << good;
  }
  CmdResult third = run_cli(cmd);
  REQUIRE(third.code == 0);
  CHECK(third.out == first.out);
  CHECK(count_lines(cache) == 3);  // both real entries still hit

  // the cached record is format-independent
  CmdResult as_json = run_cli(cmd + " --format json --no-timestamp");
  REQUIRE(as_json.code == 0);
  nlohmann::json j = nlohmann::json::parse(as_json.out);
  CHECK(j["rows"][0][0] == "4");
}

TEST_CASE("cache path from the environment") {
  const std::string cache = scratch_dir() + "/env_cache.jsonl";
  setenv("CASIMIR_CACHE", cache.c_str(), 1);
  CmdResult r = run_cli("compute --bc dirichlet --dim 6 --digits 20");
  unsetenv("CASIMIR_CACHE");
  REQUIRE(r.code == 0);
  CHECK(count_lines(cache) == 1);
}

TEST_CASE("oracle: negativity verification row") {
  CmdResult r = run_cli("oracle --verify-negativity --max-dim 12");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "max_dim,pairs_checked,violations");
  CHECK(ls[1] == "12,78,0");
}

TEST_CASE("oracle: quick D=1 extraction stays close to the closed form") {
  CmdResult r = run_cli("oracle --bc dirichlet --dim 1 --digits 30 --grid-points 8");
  REQUIRE(r.code == 0);
  auto ls = lines_of(r.out);
  REQUIRE(ls.size() == 2);
  auto cells = cells_of(ls[1]);
  REQUIRE(cells.size() == 7);
  double extracted = std::stod(cells[2]);
  CHECK(extracted < -0.1307);
  CHECK(extracted > -0.1311);
  CHECK(std::stod(cells[4]) < 1e-4);  // abs_difference against the closed form
}

TEST_CASE("precision study: json summary types") {
  CmdResult r = run_cli(
      "precision-study --from 10 --to 14 --digits 16 --reference 40 --format json "
      "--no-timestamp");
  REQUIRE(r.code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["columns"] == nlohmann::json::array({"D", "reference", "digits_16"}));
  CHECK(j["rows"].size() == 5);
  REQUIRE(j["summary"]["settings"].size() == 1);
  CHECK(j["summary"]["settings"][0]["digits"] == 16);
  CHECK(j["summary"]["settings"][0]["first_sign_error"].is_null());
  CHECK(j["summary"]["settings"][0]["first_digit_error"].is_null());
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("compute").code == 2);                      // missing --dim
  CHECK(run_cli("compute --dim 0").code == 2);
  CHECK(run_cli("compute --dim 3 --digits 5").code == 2);
  CHECK(run_cli("compute --dim 3 --bogus").code == 2);
  CHECK(run_cli("compute --dim 3 --bc robin").code == 2);
  CHECK(run_cli("scan --from 5 --to 3").code == 2);
  CHECK(run_cli("oracle --dim 5").code == 2);
  CHECK(run_cli("oracle").code == 2);
  CHECK(run_cli("precision-study --digits 16 --reference 30").code == 2);
}

TEST_CASE("refusals and numerical failures get distinct exit codes") {
  CmdResult refusal = run_cli("compute --bc dirichlet --dim 800 --digits 10");
  CHECK(refusal.code == 3);
  CHECK(refusal.err.find("insufficient precision") != std::string::npos);

  CmdResult sick = run_cli("oracle --bc dirichlet --dim 1 --digits 10");
  CHECK(sick.code == 4);
  CHECK(sick.err.find("ill-conditioned") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("compute --help").code == 0);
}
