#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "atlas/report.hpp"
#include "atlas/rootdata.hpp"
#include "json.hpp"

using namespace atlas::rootdata;
using atlas::report::RunConfig;
using json = nlohmann::json;

namespace {

std::string run_command(const std::string& cmd, int* exit_code) {
  std::string full = cmd + " 2>/dev/null";
  FILE* pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  *exit_code = WEXITSTATUS(status);
  return out;
}

std::string atlas_bin() {
  const char* bin = std::getenv("ATLAS_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

std::string golden_dir() {
  if (const char* d = std::getenv("ATLAS_GOLDEN_DIR")) return d;
  return ATLAS_GOLDEN_DIR_DEF;
}

Mask mask_of(const std::vector<int>& xs) {
  Mask m = 0;
  for (int x : xs) m |= bit(x);
  return m;
}

}  // namespace

TEST_CASE("JSON listing round-trips to identical profiles") {
  for (int n = 1; n <= 5; ++n) {
    RunConfig cfg;
    cfg.n = n;
    cfg.format = "json";
    std::ostringstream os, err;
    REQUIRE(atlas::report::cmd_borel(cfg, os, err) == 0);
    json root = json::parse(os.str());
    CHECK(root["schema"] == atlas::report::kSchema);
    CHECK(root["n"] == n);
    auto thetas = enumerate_theta(n);
    REQUIRE(root["records"].size() == thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i) {
      const json& rec = root["records"][i];
      RootSequence th{n, rec["theta"].get<std::vector<int>>()};
      CHECK(th == thetas[i]);
      RTProfile rebuilt = build_RT(th);
      for (int k = 1; k <= n; ++k) {
        CHECK(rebuilt.r_at(k) ==
              mask_of(rec["R"][static_cast<size_t>(k - 1)].get<std::vector<int>>()));
        CHECK(rebuilt.t_at(k) ==
              mask_of(rec["T"][static_cast<size_t>(k - 1)].get<std::vector<int>>()));
      }
      CHECK(rec["hopf"] == is_hopf(th));
      CHECK(rec["adr_invariant"] == is_adr_invariant(rebuilt));
      CHECK(rec["pbw"].size() == pbw_generators(rebuilt).size());
    }
  }
}

TEST_CASE("n=3 borel listing carries the (2,2,0) worked row") {
  RunConfig cfg;
  cfg.n = 3;
  cfg.format = "json";
  std::ostringstream os, err;
  REQUIRE(atlas::report::cmd_borel(cfg, os, err) == 0);
  json root = json::parse(os.str());
  bool found = false;
  for (const json& rec : root["records"]) {
    if (rec["theta"].get<std::vector<int>>() != std::vector<int>{2, 2, 0}) continue;
    found = true;
    CHECK(mask_of(rec["R"][1].get<std::vector<int>>()) == mask_of({2, 3}));
    CHECK(mask_of(rec["T"][1].get<std::vector<int>>()) == mask_of({2, 3}));
    CHECK(mask_of(rec["R"][0].get<std::vector<int>>()) == mask_of({2}));
    CHECK(mask_of(rec["T"][0].get<std::vector<int>>()) == mask_of({2}));
    std::set<std::string> words;
    for (const json& g : rec["pbw"]) words.insert(g["word"].get<std::string>());
    CHECK(words == std::set<std::string>{"x_2", "[x_3x_2]", "[x_1x_2]"});
  }
  CHECK(found);
}

TEST_CASE("tableau output matches the golden file byte for byte") {
  int code = 0;
  std::string out = run_command(atlas_bin() + " tableau --n 3", &code);
  CHECK(code == 0);
  std::ifstream f(golden_dir() + "/tableau_n3.txt", std::ios::binary);
  REQUIRE(f.good());
  std::stringstream golden;
  golden << f.rdbuf();
  CHECK(out == golden.str());
}

TEST_CASE("tableau structure: sixteen rows, six starred") {
  int code = 0;
  std::string out = run_command(atlas_bin() + " tableau --n 3", &code);
  REQUIRE(code == 0);
  std::istringstream in(out);
  std::string line;
  int rows = 0, starred = 0;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.find(")*") != std::string::npos) ++starred;
  }
  CHECK(rows == 16);
  CHECK(starred == 6);
}

TEST_CASE("exit code contract") {
  int code = 0;
  run_command(atlas_bin() + " count borel --n 3", &code);
  CHECK(code == 0);  // success
  run_command(atlas_bin() + " pair 1,0 2,0 --n 2", &code);
  CHECK(code == 1);  // pair rejection
  run_command(atlas_bin() + " verify omega --n 2", &code);
  CHECK(code == 0);  // verification pass
  run_command(atlas_bin() + " verify nosuchsuite --n 2", &code);
  CHECK(code == 2);  // unknown suite
  run_command(atlas_bin() + " nosuchcommand", &code);
  CHECK(code == 2);  // unknown command
  run_command(atlas_bin() + " tableau --n 4", &code);
  CHECK(code == 2);  // unsupported rank for the tableau
  run_command(atlas_bin() + " pair 9 9 --n 1", &code);
  CHECK(code == 2);  // invalid sequence bounds
}

TEST_CASE("count output reports the exact values") {
  int code = 0;
  std::string out = run_command(atlas_bin() + " count full --n 3 --format json", &code);
  REQUIRE(code == 0);
  json j = json::parse(out);
  CHECK(j["schema"] == atlas::report::kSchema);
  CHECK(j["count"] == 252);
  CHECK(j["via_cond1"].get<long long>() + j["via_cond2"].get<long long>() == 252);
  out = run_command(atlas_bin() + " count borel --n 5 --format json", &code);
  REQUIRE(code == 0);
  CHECK(json::parse(out)["count"] == 720);
}

TEST_CASE("pair command accepts the trivial and rank-1 examples") {
  int code = 0;
  std::string out = run_command(atlas_bin() + " pair 0,0 0,0 --n 2", &code);
  CHECK(code == 0);
  CHECK(out.find("ACCEPT") != std::string::npos);
  out = run_command(atlas_bin() + " pair 1 1 --n 1 --symbolic", &code);
  CHECK(code == 0);
  CHECK(out.find("condition 2 holds") != std::string::npos);
  CHECK(out.find("[x_1, x_1^-]") != std::string::npos);
}

TEST_CASE("verify consistency at rank 2 reports 26 of 36") {
  int code = 0;
  std::string out =
      run_command(atlas_bin() + " verify consistency --n 2 --bound 6", &code);
  CHECK(code == 0);
  CHECK(out.find("pairs: 36, agreements: 36, accepted: 26") != std::string::npos);
}
