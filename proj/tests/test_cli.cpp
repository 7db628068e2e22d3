#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

#include "bnatlas/json_io.hpp"
#include "bnatlas/noncontainment.hpp"

using namespace bnatlas;
namespace fs = std::filesystem;

static std::string g_cli;  // path to the command-line binary under test

int main(int argc, char** argv) {
  int first_doctest_arg = 1;
  if (argc > 1 && argv[1][0] != '-') {
    g_cli = argv[1];
    first_doctest_arg = 2;
  } else {
    g_cli = "./tools/bnatlas";  // sensible default when run by hand
  }
  doctest::Context context;
  context.applyCommandLine(argc - first_doctest_arg + 1,
                           argv + first_doctest_arg - 1);
  return context.run();
}

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = "\"" + g_cli + "\" " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
    res.output.append(buf, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/* Fresh directory under the working directory, destroyed on scope exit. */
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("rho output forms") {
  CliResult plain = run_cli("rho --g 12 --r 2 --d 9");
  CHECK(plain.exit_code == 0);
  CHECK(plain.output == "-3\n");

  CliResult json = run_cli("rho --g 12 --r 2 --d 9 --json");
  CHECK(json.exit_code == 0);
  CHECK(json.output == "{\n  \"rho\": -3\n}\n");

  CliResult marked = run_cli("rho --g 12 --r 2 --d 9 --ram 3,4,5");
  CHECK(marked.exit_code == 0);
  CHECK(marked.output == "-12\n");

  CliResult twice = run_cli("rho --g 12 --r 2 --d 9 --ram 3,4,5 --ram 4,5,6");
  CHECK(twice.exit_code == 0);
  CHECK(twice.output == "-24\n");
}

TEST_CASE("maximal table") {
  CliResult res = run_cli("maximal --g 4");
  CHECK(res.exit_code == 0);
  CHECK(res.output ==
        "expected-maximal loci at genus 4: 1\n"
        "  r  d  rho\n"
        "  1  2  -2\n"
        "conjecture: exceptional=no verified-small=yes ckk-family=yes(n=3)\n");

  CliResult deep = run_cli("maximal --g 12");
  CHECK(deep.exit_code == 0);
  CHECK(deep.output ==
        "expected-maximal loci at genus 12: 3\n"
        "  r  d  rho\n"
        "  1  6  -2\n"
        "  2  9  -3\n"
        "  3  11  -4\n"
        "conjecture: exceptional=no verified-small=yes ckk-family=no\n");

  CliResult lcm = run_cli("maximal --g 59");
  CHECK(lcm.exit_code == 0);
  CHECK(lcm.output.ends_with(
      "conjecture: exceptional=no verified-small=no ckk-family=yes(n=5)\n"));

  CliResult json = run_cli("maximal --g 4 --json");
  CHECK(json.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(json.output);
  CHECK(j.at("genus").get<Int>() == 4);
  CHECK(j.at("loci").size() == 1);
  CHECK(j.at("status").at("ckk_n").get<Int>() == 3);
}

TEST_CASE("chain rendering") {
  CliResult balanced = run_cli("chain --g 12 --r 2 --d 9");
  CHECK(balanced.exit_code == 0);
  CHECK(balanced.output ==
        "chain decomposition of (12,2,9)  mode=prop31-odd  k=2\n"
        "  component 1: genus 7 degree 6 rho -2  right=[3,4,5]\n"
        "  component 2: genus 5 degree 5 rho -1  left=[4,5,6]\n"
        "verification: all-pass (7 checks)\n");

  CliResult search =
      run_cli("chain --g 24 --r 1 --d 10 --mode search --allowed -1");
  CHECK(search.exit_code == 0);
  CHECK(search.output ==
        "chain decomposition of (24,1,10)  mode=search  k=6\n"
        "  component 1: genus 19 degree 10 rho -1  right=[0,1]\n"
        "  component 2: genus 1 degree 1 rho -1  left=[9,10]  right=[0,1]\n"
        "  component 3: genus 1 degree 1 rho -1  left=[9,10]  right=[0,1]\n"
        "  component 4: genus 1 degree 1 rho -1  left=[9,10]  right=[0,1]\n"
        "  component 5: genus 1 degree 1 rho -1  left=[9,10]  right=[0,1]\n"
        "  component 6: genus 1 degree 1 rho -1  left=[9,10]\n"
        "verification: all-pass (7 checks)\n");

  CliResult json = run_cli("chain --g 12 --r 2 --d 9 --json");
  CHECK(json.exit_code == 0);
  const auto dec =
      nlohmann::json::parse(json.output).get<ChainDecomposition>();
  CHECK(dec.source == LocusId{12, 2, 9});
  CHECK(verify_chain(dec).all_passed());
}

TEST_CASE("chain search exhaustion is a finding, not an error") {
  CliResult res =
      run_cli("chain --g 12 --r 2 --d 9 --mode search --allowed -2");
  CHECK(res.exit_code == 3);
  const nlohmann::json j = nlohmann::json::parse(res.output);
  CHECK(j.at("finding").at("code").get<std::string>() ==
        "no-decomposition-found");
  CHECK(j.at("finding").contains("message"));
}

TEST_CASE("poset listing") {
  CliResult res = run_cli("poset --g 7");
  CHECK(res.exit_code == 0);
  CHECK(res.output ==
        "stratification graph at genus 7: 2 nodes, 2 edges\n"
        "  (7,1,4) -> (7,2,6): not-contained [dim-thm34]\n"
        "  (7,2,6) -> (7,1,4): unknown [open]\n"
        "consistency: all-pass (7 checks)\n");

  CliResult deep = run_cli("poset --g 12");
  CHECK(deep.exit_code == 0);
  CHECK(deep.output ==
        "stratification graph at genus 12: 3 nodes, 6 edges\n"
        "  (12,1,6) -> (12,2,9): not-contained [dim-thm34]\n"
        "  (12,1,6) -> (12,3,11): not-contained [dim-thm34]\n"
        "  (12,2,9) -> (12,1,6): unknown [open]\n"
        "  (12,2,9) -> (12,3,11): not-contained [dim-thm34]\n"
        "  (12,3,11) -> (12,1,6): unknown [open]\n"
        "  (12,3,11) -> (12,2,9): unknown [open]\n"
        "consistency: all-pass (7 checks)\n");
}

TEST_CASE("poset file outputs match the library renderers") {
  TempDir dir("cli_poset_out");
  fs::create_directories(dir.path);
  const std::string dot_path = (dir.path / "g12.dot").string();
  const std::string json_path = (dir.path / "g7.json").string();

  CliResult dot = run_cli("poset --g 12 --dot " + dot_path);
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.empty());
  CHECK(read_file(dot_path) == to_dot(build_stratification_graph(12)));

  CliResult js = run_cli("poset --g 7 --json " + json_path);
  CHECK(js.exit_code == 0);
  CHECK(js.output.empty());
  const auto G = read_json_file(json_path).get<StratificationGraph>();
  CHECK(G == build_stratification_graph(7));
  CHECK(consistency_check(G).all_passed());
}

TEST_CASE("dimcert rendering") {
  CliResult res = run_cli("dimcert --g 12 --r 2 --d 9");
  CHECK(res.exit_code == 0);
  CHECK(res.output ==
        "expected-dimension certificate for (12,2,9)  rho=-3\n"
        "  (12,2,9) => (12,2,9)  rho=-3  case-I-split\n"
        "    (4,2,4) => (4,1,2)  rho=-2  base-hyperelliptic\n"
        "    (8,2,7) => (8,2,7)  rho=-1  base-divisor\n"
        "verification: all-pass (7 checks)\n");
}

TEST_CASE("prym rendering and the rank-pair finding") {
  CliResult res = run_cli("prym --r 5 --eps 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output ==
        "prym parameters r=5 eps=1: g_base=17 g_tilde=33 target=(33,5,32)"
        " rho=-3\n"
        "non-containment certificates: 2\n"
        "  prym-parity: (33,5,32) not contained in (33,1,17)\n"
        "  prym-schwarz: (33,5,32) not contained in (33,2,23)\n");

  CliResult gap = run_cli("prym --r 2 --cor55");
  CHECK(gap.exit_code == 3);
  const nlohmann::json j = nlohmann::json::parse(gap.output);
  CHECK(j.at("finding").at("code").get<std::string>() == "hypothesis-gap");
  CHECK(j.at("finding").at("failed_clause").get<std::string>() ==
        "d-is-odd");
  const auto result = j.at("finding").at("result").get<Cor55Result>();
  CHECK(result.a == LocusId{7, 2, 6});
  CHECK(result.b == LocusId{7, 1, 4});
}

TEST_CASE("domain failures exit 2 with a coded message") {
  CliResult quiet = run_cli("rho --g -1 --r 1 --d 1");
  CHECK(quiet.exit_code == 2);
  CHECK(quiet.output.empty());

  CliResult loud = run_cli("rho --g -1 --r 1 --d 1", true);
  CHECK(loud.exit_code == 2);
  CHECK(loud.output ==
        "error[domain]: rho needs 0 <= g <= 10^9, got g = -1\n");

  CliResult star = run_cli("chain --g 20 --r 4 --d 19", true);
  CHECK(star.exit_code == 2);
  CHECK(star.output.starts_with("error[star-violated]:"));

  CliResult eps = run_cli("prym --r 2 --eps 1", true);
  CHECK(eps.exit_code == 2);
  CHECK(eps.output.starts_with("error[domain]:"));

  // option-parser failures are outside the 0/2/3/4 contract but nonzero
  CliResult missing = run_cli("rho --g 12 --r 2");
  CHECK(missing.exit_code != 0);
}

TEST_CASE("scan writes a deterministic atlas") {
  TempDir a("cli_scan_a"), b("cli_scan_b"), c("cli_scan_c");

  CliResult first = run_cli("scan --from 3 --to 10 --out " +
                            a.path.string());
  CHECK(first.exit_code == 0);
  for (Int g = 3; g <= 10; ++g)
    CHECK(fs::exists(a.path / ("g-" + std::to_string(g) + ".json")));
  CHECK(fs::exists(a.path / "summary.json"));
  CHECK(fs::exists(a.path / "meta.json"));

  CliResult second = run_cli("scan --from 3 --to 10 --out " +
                             b.path.string());
  CHECK(second.exit_code == 0);
  CliResult third = run_cli("scan --from 3 --to 10 --jobs 4 --out " +
                            c.path.string());
  CHECK(third.exit_code == 0);

  for (Int g = 3; g <= 10; ++g) {
    const std::string name = "g-" + std::to_string(g) + ".json";
    const std::string payload = read_file(a.path / name);
    CHECK(payload == read_file(b.path / name));
    CHECK(payload == read_file(c.path / name));
  }
  CHECK(read_file(a.path / "summary.json") ==
        read_file(b.path / "summary.json"));
  CHECK(read_file(a.path / "summary.json") ==
        read_file(c.path / "summary.json"));

  SUBCASE("summary content") {
    const nlohmann::json summary = read_json_file(
        (a.path / "summary.json").string());
    CHECK(summary.at("from").get<Int>() == 3);
    CHECK(summary.at("to").get<Int>() == 10);
    REQUIRE(summary.at("genera").size() == 8);
    const nlohmann::json& g7 = summary.at("genera").at(4);
    CHECK(g7.at("g").get<Int>() == 7);
    CHECK(g7.at("nodes").get<Int>() == 2);
    CHECK(g7.at("not-contained").get<Int>() == 1);
    CHECK(g7.at("unknown").get<Int>() == 1);
    CHECK(g7.at("contained").get<Int>() == 0);
  }

  SUBCASE("meta sidecar is the only timestamp home") {
    const nlohmann::json meta = read_json_file(
        (a.path / "meta.json").string());
    CHECK(meta.contains("command"));
    CHECK(meta.contains("from"));
    CHECK(meta.contains("to"));
    CHECK(meta.contains("generated_at"));
  }

  SUBCASE("rescanning an intact atlas verifies and leaves bytes alone") {
    const std::string before = read_file(a.path / "g-9.json");
    CliResult rerun = run_cli("scan --from 3 --to 10 --out " +
                              a.path.string());
    CHECK(rerun.exit_code == 0);
    CHECK(read_file(a.path / "g-9.json") == before);
  }

  SUBCASE("a corrupted graph file fails re-verification") {
    const fs::path victim = a.path / "g-7.json";
    nlohmann::json doctored = read_json_file(victim.string());
    doctored["edges"][0]["label"] = "contained";
    std::ofstream(victim) << doctored.dump();
    CliResult rerun = run_cli(
        "scan --from 3 --to 10 --out " + a.path.string(), true);
    CHECK(rerun.exit_code == 4);
    CHECK(rerun.output.find("re-verification failed: " +
                            victim.string()) != std::string::npos);
  }

  SUBCASE("unparseable graph files also fail re-verification") {
    const fs::path victim = a.path / "g-5.json";
    std::ofstream(victim) << "not json";
    CliResult rerun = run_cli(
        "scan --from 3 --to 10 --out " + a.path.string(), true);
    CHECK(rerun.exit_code == 4);
    CHECK(rerun.output.find("re-verification failed") !=
          std::string::npos);
  }
}

TEST_CASE("scan argument guards") {
  TempDir dir("cli_scan_guard");
  CliResult inverted = run_cli(
      "scan --from 9 --to 3 --out " + dir.path.string(), true);
  CHECK(inverted.exit_code == 2);
  CHECK(inverted.output.starts_with("error[domain]:"));

  CliResult tiny = run_cli(
      "scan --from 2 --to 5 --out " + dir.path.string(), true);
  CHECK(tiny.exit_code == 2);

  CliResult jobs = run_cli(
      "scan --from 3 --to 5 --jobs 0 --out " + dir.path.string(), true);
  CHECK(jobs.exit_code == 2);
}
