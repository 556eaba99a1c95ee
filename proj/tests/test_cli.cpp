#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "slimlat/diagram.hpp"
#include "slimlat/multifork.hpp"
#include "slimlat/slimming.hpp"
#include "support/oracles.hpp"

using namespace slimlat;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(SLIMLAT_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "slimlat_cli_test";
  fs::create_directories(p);
  return p;
}

std::string put(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kB2 = "elements 4\nup 0: 1 2\nup 1: 3\nup 2: 3\nup 3:\n";
const char* kM3 = "elements 5\nup 0: 1 2 3\nup 1: 4\nup 2: 4\nup 3: 4\nup 4:\n";

}  // namespace

TEST_CASE("validate and props") {
  std::string b2 = put("b2.slat", kB2);
  CHECK(run("validate " + b2).code == 0);
  std::string bad = put("bad.slat", "elements 3\nup 0: 1 2\nup 1:\nup 2:\n");
  auto r = run("validate " + bad + " --json");
  CHECK(r.code == 1);
  CHECK(nlohmann::json::parse(r.out)["valid"] == false);
  CHECK(run("validate " + (scratch() / "missing.slat").string()).code == 2);
  auto e = run("--json validate " + (scratch() / "missing.slat").string());
  CHECK(e.code == 2);
  CHECK(nlohmann::json::parse(e.out).contains("error"));
  CHECK(run("frobnicate").code == 2);

  auto p = nlohmann::json::parse(run("props " + b2 + " --json").out);
  CHECK(p["elements"] == 4);
  CHECK(p["slim"] == true);
  CHECK(p["rectangular"] == true);
  CHECK(p["jh_permutation"] == nlohmann::json::array({2, 1}));
  auto pm = nlohmann::json::parse(run("props " + put("m3.slat", kM3) + " --json").out);
  CHECK(pm["slim"] == false);
  CHECK(pm["eyes"] == 1);
}

TEST_CASE("coordinates and extension") {
  std::string b2 = put("b2.slat", kB2);
  auto c = nlohmann::json::parse(run("coords " + b2 + " --json").out);
  CHECK(c["coords"] == nlohmann::json::parse("[[0,0],[1,0],[0,1],[1,1]]"));
  CHECK(run("coords " + put("m3.slat", kM3)).code == 2);

  std::string l = std::string(SLIMLAT_TEST_DATA) + "/counter_l.slat";
  std::string out = (scratch() / "r.slat").string();
  auto r = run("extend-rect " + l + " -o " + out + " --verify --json");
  CHECK(r.code == 0);
  Diagram ext = read_diagram_file(out);
  CHECK(is_rectangular(ext));
  CHECK(ext.size() > 19);
}

TEST_CASE("slimming") {
  std::string m3 = put("m3.slat", kM3);
  std::string out = (scratch() / "s.slat").string();
  std::string nu = (scratch() / "nu.json").string();
  CHECK(run("slim " + m3 + " -o " + out + " --nu " + nu).code == 0);
  CHECK(read_diagram_file(out) == parse_diagram(kB2));
  std::string back = (scratch() / "back.slat").string();
  CHECK(run("antislim " + out + " --nu " + nu + " -o " + back).code == 0);
  CHECK(oracle::isomorphic(read_diagram_file(back), parse_diagram(kM3)));
}

TEST_CASE("generation and decomposition") {
  std::string d = (scratch() / "g.slat").string();
  std::string q = (scratch() / "g.json").string();
  CHECK(run("gen --seed 5 --steps 3 --max-k 2 -o " + d + " --seq " + q).code == 0);
  Diagram g = read_diagram_file(d);
  auto seq = sequence_from_json(read_text_file(q));
  CHECK(replay(seq).final_diagram() == g);
  auto again = run("gen --seed 5 --steps 3 --max-k 2 --json");
  CHECK(nlohmann::json::parse(again.out)["diagram"] == serialize_diagram(g));

  auto dec = nlohmann::json::parse(run("decompose " + d + " --json").out);
  CHECK(sequence_from_json(dec.dump()) == decompose_sequence(g));

  auto tr = nlohmann::json::parse(run("trajectories " + d + " --json").out);
  size_t edges = 0;
  for (const auto& t : tr["trajectories"]) edges += t["edges"].size();
  size_t want = 0;
  for (int x = 0; x < g.size(); ++x) want += g.upper_covers(x).size();
  CHECK(edges == want);
}

TEST_CASE("congruences and swings") {
  std::string b2 = put("b2.slat", kB2);
  auto cj = nlohmann::json::parse(run("conjir " + b2 + " --json").out);
  CHECK(cj["jir_congruences"].size() == 2);

  CHECK(run("swing " + b2 + " --p 0,1 --q 2,3").code == 0);
  CHECK(run("swing " + b2 + " --p 0,1 --q 1,3").code == 1);
  CHECK(run("swing " + b2 + " --p 0,3 --q 2,3").code == 2);
  auto s = nlohmann::json::parse(run("swing " + b2 + " --p 0,1 --q 2,3 --json").out);
  CHECK(s["holds"] == true);
  CHECK(s["con_geq"] == true);

  // non-rectangular input falls back to the congruence oracle
  std::string c3 = put("c3.slat", serialize_diagram(chain_diagram(3)));
  auto f = nlohmann::json::parse(run("swing " + c3 + " --p 0,1 --q 1,2 --json").out);
  CHECK(f["holds"] == false);
  CHECK(f["method"] != "swing");

  CHECK(run("verify --suite swing --count 3 --seed 1").code == 0);
  CHECK(run("verify --suite coloring --count 3 --seed 1").code == 0);
  CHECK(run("verify --suite terthm --count 3 --seed 1").code == 0);
  CHECK(run("verify --suite nonsense").code == 2);
}

TEST_CASE("render") {
  std::string b2 = put("b2.slat", kB2);
  auto a = run("render " + b2 + " --class D");
  auto b = run("render " + b2 + " --class D");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("<svg") == 0);
  std::string t = put("t.json", R"({"delta":[0,0],"rho_left":[1],"rho_right":[2]})");
  CHECK(run("render " + b2 + " --class B --triplet " + t).code == 0);
  std::string wrong = put("w.json", R"({"delta":[0,0],"rho_left":[1,1],"rho_right":[2]})");
  CHECK(run("render " + b2 + " --class B --triplet " + wrong).code == 2);
  CHECK(run("render " + b2 + " --class C --r 2").code == 0);
}
