#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "qk/digraph.hpp"
#include "qk/generate.hpp"
#include "qk/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr merged
};

RunResult run(const std::string& cmd) {
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string qk_bin() {
  const char* bin = std::getenv("QK_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / "qk_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("generate then solve end to end") {
  fs::path file = scratch() / "c6.dg";
  RunResult gen = run(qk_bin() + " gen --family cycle --n 6 --out " + file.string());
  REQUIRE(gen.exit_code == 0);
  json meta = json::parse(gen.output);
  CHECK(meta["command"] == "gen");
  CHECK(meta["n"] == 6);
  CHECK(meta["m"] == 6);

  RunResult solve = run(qk_bin() + " solve " + file.string());
  REQUIRE(solve.exit_code == 0);
  json j = json::parse(solve.output);
  CHECK(j["q"] == json::array({0, 2, 4}));
  CHECK(j["valid"] == true);
  CHECK(j["bound_guaranteed"] == true);
  CHECK(j["bound_satisfied"] == true);
  CHECK(j["t"] == "1");
  CHECK(j["tail_method"] == "recursed-to-empty");

  // The produced set verifies against the instance through the library too.
  qk::Digraph g = qk::load_instance(file.string());
  qk::VertexSet q = j["q"].get<qk::VertexSet>();
  CHECK(qk::is_quasi_kernel(g, q));
}

TEST_CASE("instances pipe between subcommands") {
  RunResult piped = run(qk_bin() + " gen --family cycle --n 4 | " + qk_bin() +
                        " solve - --strategy baseline");
  REQUIRE(piped.exit_code == 0);
  json j = json::parse(piped.output);
  CHECK(j["strategy"] == "baseline");
  CHECK(j["q"] == json::array({0, 2}));
}

TEST_CASE("solve output is deterministic modulo timing") {
  fs::path file = scratch() / "scf.dg";
  REQUIRE(run(qk_bin() +
              " gen --family short-cycle-free --n 40 --d 2 --seed 11 --out " +
              file.string())
              .exit_code == 0);
  std::string cmd =
      qk_bin() + " solve " + file.string() + " --strategy short-cycle-free --d 2 --trace";
  json a = json::parse(run(cmd).output);
  json b = json::parse(run(cmd).output);
  a.erase("wall_ms");
  b.erase("wall_ms");
  CHECK(a == b);
}

TEST_CASE("exit codes identify error families") {
  fs::path garbage = scratch() / "garbage.dg";
  std::ofstream(garbage) << "not an instance\n";
  RunResult parse = run(qk_bin() + " solve " + garbage.string());
  CHECK(parse.exit_code == 2);
  CHECK(json::parse(parse.output)["error"] == "parse");

  fs::path sourced = scratch() / "sourced.dg";
  std::ofstream(sourced) << "p dg 2 1\ne 0 1\n";
  RunResult src = run(qk_bin() + " solve " + sourced.string());
  CHECK(src.exit_code == 3);
  CHECK(json::parse(src.output)["error"] == "not-sourceless");

  fs::path big = scratch() / "big.dg";
  qk::save_instance(qk::disjoint_c4s(3), big.string());
  RunResult budget = run(qk_bin() + " exact " + big.string() + " --max-n 8");
  CHECK(budget.exit_code == 4);
  CHECK(json::parse(budget.output)["error"] == "budget-exceeded");

  fs::path digon = scratch() / "digon.dg";
  std::ofstream(digon) << "p dg 2 2\ne 0 1\ne 1 0\n";
  RunResult detect = run(qk_bin() + " detect " + digon.string() + " --class oriented");
  CHECK(detect.exit_code == 5);
  json dj = json::parse(detect.output);
  CHECK(dj["holds"] == false);
  CHECK(dj["violation"]["kind"] == "digon");

  RunResult gen = run(qk_bin() + " gen --family paley --q 9");
  CHECK(gen.exit_code == 6);
  CHECK(json::parse(gen.output)["error"] == "generation");
}

TEST_CASE("detect passes on a certified instance") {
  fs::path file = scratch() / "certified.dg";
  REQUIRE(run(qk_bin() +
              " gen --family short-cycle-free --n 30 --d 3 --seed 2 --out " +
              file.string())
              .exit_code == 0);
  RunResult detect =
      run(qk_bin() + " detect " + file.string() + " --class short-cycle-free --d 3");
  CHECK(detect.exit_code == 0);
  CHECK(json::parse(detect.output)["holds"] == true);
}

TEST_CASE("verify reports verdicts without failing") {
  fs::path file = scratch() / "c4.dg";
  qk::save_instance(qk::directed_cycle(4), file.string());

  RunResult good = run(qk_bin() + " verify " + file.string() + " --set 2,0");
  REQUIRE(good.exit_code == 0);
  json gj = json::parse(good.output);
  CHECK(gj["set"] == json::array({0, 2}));  // normalized
  CHECK(gj["independent"] == true);
  CHECK(gj["quasi_kernel"] == true);
  CHECK(gj["kernel"] == true);

  RunResult bad = run(qk_bin() + " verify " + file.string() + " --set 0");
  REQUIRE(bad.exit_code == 0);
  json bj = json::parse(bad.output);
  CHECK(bj["quasi_kernel"] == false);
  CHECK(bj["uncovered"] == json::array({3}));
}

TEST_CASE("results directory keys by content and flags") {
  fs::path file = scratch() / "keyed.dg";
  qk::save_instance(qk::directed_cycle(8), file.string());
  fs::path dir = scratch() / "results";
  fs::remove_all(dir);

  std::string base = qk_bin() + " solve " + file.string() + " --results-dir " + dir.string();
  REQUIRE(run(base).exit_code == 0);
  REQUIRE(run(base).exit_code == 0);  // same key, same file
  auto count = [&]() {
    int c = 0;
    for (auto& entry : fs::directory_iterator(dir)) {
      CHECK(entry.path().extension() == ".json");
      ++c;
    }
    return c;
  };
  CHECK(count() == 1);
  REQUIRE(run(base + " --strategy baseline").exit_code == 0);
  CHECK(count() == 2);
}

TEST_CASE("frozen ratio rows survive") {
  RunResult r = run(qk_bin() + " ratios --max-d 4");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  REQUIRE(j["rows"].size() == 4);  // d = 4, 25, 50, 100
  CHECK(j["rows"][0]["d"] == 4);
  CHECK(j["rows"][0]["star_free"]["t"] == "10/3");
  CHECK(j["rows"][0]["star_free"]["ratio"] == "10/13");
  CHECK(j["rows"][0]["short_cycle_free"]["t"] == "5/4");
  CHECK(j["rows"][0]["short_cycle_free"]["ratio"] == "5/9");
}

TEST_CASE("scan reproduces the no-witness profile") {
  fs::path file = scratch() / "ps.dg";
  REQUIRE(run(qk_bin() + " gen --family paley-sinks --q 7 --k 3 --out " + file.string())
              .exit_code == 0);
  RunResult scan = run(qk_bin() + " scan " + file.string() + " --t 1 --rows");
  REQUIRE(scan.exit_code == 0);
  json j = json::parse(scan.output);
  CHECK(j["witness_count"] == 0);
  CHECK(j["profile_holds"] == true);
  CHECK(j["profile_holds_posdeg"] == true);
  REQUIRE(j["rows"].size() == 28);
  CHECK(j["rows"][0]["s_size"] == 9);
  CHECK(j["rows"][0]["union_size"] == 6);
}

TEST_CASE("bound measurements emit rows and a summary") {
  fs::path csv = scratch() / "rows.csv";
  RunResult r = run(qk_bin() + " bounds --trials 6 --max-n 24 --seed 5 --csv " +
                    csv.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j["trials"] == 6);
  CHECK(j["bound_violations"] == 0);

  std::ifstream in(csv);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0].rfind("instance,family,n,d,seed", 0) == 0);

  // Threading must not change anything but timings.
  fs::path csv2 = scratch() / "rows2.csv";
  REQUIRE(run(qk_bin() + " bounds --trials 6 --max-n 24 --seed 5 --jobs 3 --csv " +
              csv2.string())
              .exit_code == 0);
  std::ifstream in2(csv2);
  std::vector<std::string> lines2;
  while (std::getline(in2, line)) lines2.push_back(line);
  REQUIRE(lines2.size() == lines.size());
  auto strip_timing = [](const std::string& s) {
    return s.substr(0, s.rfind(','));
  };
  for (size_t i = 0; i < lines.size(); ++i)
    CHECK(strip_timing(lines[i]) == strip_timing(lines2[i]));
}

TEST_CASE("exact subcommand finds optima and kernels") {
  fs::path file = scratch() / "tri.dg";
  qk::save_instance(qk::directed_cycle(3), file.string());
  RunResult r = run(qk_bin() + " exact " + file.string() + " --kernel");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.output);
  CHECK(j["size"] == 1);
  CHECK(j["quasi_kernel"] == json::array({0}));
  CHECK(j["kernel"]["exists"] == false);
}
