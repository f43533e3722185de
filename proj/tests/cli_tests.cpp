#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"

// End-to-end checks of the command-line tool: exit codes are a stable
// contract (0 true/ok, 1 false verdict, 2 invalid lattice, 3 parse or I/O,
// 4 budget, 5 unknown labels), results go to stdout.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(FCL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

class TempDir {
public:
  TempDir() : path_(fs::temp_directory_path() / "fcl-cli-test") {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name, const std::string& content) const {
    fs::path p = path_ / name;
    std::ofstream out(p);
    out << content;
    return p;
  }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
};

const std::string kCounterexample =
    "lattice builtin godel 3\nattributes star\nobject x 0\nobject y 1/2\n";

}  // namespace

TEST_CASE("lattice-validate verdicts and exit codes") {
  RunResult good = run_cli("lattice-validate --builtin 'godel(3)'");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("axioms: ok") != std::string::npos);
  CHECK(good.output.find("double negation: fails (witness: 1/2)") != std::string::npos);

  RunResult dne = run_cli("lattice-validate --builtin 'lukasiewicz(5)'");
  CHECK(dne.exit_code == 0);
  CHECK(dne.output.find("double negation: holds") != std::string::npos);

  TempDir dir;
  fs::path bad = dir.file("bad.lat",
                          "elements 0 a 1\nleq 0 a\nleq a 1\n"
                          "tensor 0 0 0 0\ntensor a 0 0 1\ntensor 1 0 1 1\n");
  RunResult invalid = run_cli("lattice-validate --lattice " + bad.string());
  CHECK(invalid.exit_code == 2);
  CHECK(invalid.output.find("non-associative-tensor") != std::string::npos);

  RunResult missing = run_cli("lattice-validate --lattice /nonexistent.lat");
  CHECK(missing.exit_code == 3);
}

TEST_CASE("concepts counts the three-chain instances") {
  TempDir dir;
  fs::path ctx = dir.file("ce.ctx", kCounterexample);

  RunResult rst = run_cli("concepts --context " + ctx.string() + " --mode rst --negate");
  CHECK(rst.exit_code == 0);
  CHECK(rst.output.find("concepts: 3") != std::string::npos);

  RunResult fca = run_cli("concepts --context " + ctx.string() + " --mode fca");
  CHECK(fca.output.find("concepts: 3") != std::string::npos);

  RunResult json = run_cli("concepts --context " + ctx.string() + " --mode rst --negate --format json");
  CHECK(json.exit_code == 0);
  CHECK(json.output.find("\"count\": 3") != std::string::npos);
  CHECK(json.output.find("\"order\"") != std::string::npos);
  CHECK(json.output.find("\"concepts\"") != std::string::npos);

  fs::path empty = dir.file("empty.ctx", "lattice builtin godel 3\nattributes\nobject x\n");
  RunResult degenerate = run_cli("concepts --context " + empty.string() + " --mode fca");
  CHECK(degenerate.exit_code == 0);
  CHECK(degenerate.output.find("concepts: 1") != std::string::npos);

  RunResult budget = run_cli("concepts --context " + ctx.string() +
                             " --mode fca --method exhaustive --budget 5");
  CHECK(budget.exit_code == 4);
}

TEST_CASE("reduct-check is scriptable through exit codes") {
  TempDir dir;
  fs::path ctx = dir.file("ce.ctx", kCounterexample);

  RunResult fca = run_cli("reduct-check --context " + ctx.string() +
                          " --mode fca --objects x --attributes star");
  CHECK(fca.exit_code == 1);
  CHECK(fca.output.find("verdict: not a reduct") != std::string::npos);
  CHECK(fca.output.find("star=1/2") != std::string::npos);

  RunResult rst = run_cli("reduct-check --context " + ctx.string() +
                          " --negate --mode rst --objects x --attributes star");
  CHECK(rst.exit_code == 0);
  CHECK(rst.output.find("verdict: reduct") != std::string::npos);

  RunResult full = run_cli("reduct-check --context " + ctx.string() + " --mode fca");
  CHECK(full.exit_code == 0);

  RunResult unknown = run_cli("reduct-check --context " + ctx.string() +
                              " --mode fca --objects nosuch");
  CHECK(unknown.exit_code == 5);

  RunResult broken = run_cli("reduct-check --context /nonexistent.ctx --mode fca");
  CHECK(broken.exit_code == 3);

  fs::path ragged = dir.file("ragged.ctx",
                             "lattice builtin godel 3\nattributes p q\nobject x 0\n");
  RunResult parse = run_cli("reduct-check --context " + ragged.string() + " --mode fca");
  CHECK(parse.exit_code == 3);
}

TEST_CASE("empty kept sets differ from omitted flags") {
  TempDir dir;
  fs::path ctx = dir.file("ce.ctx", kCounterexample);
  RunResult none = run_cli("reduct-check --context " + ctx.string() +
                           " --negate --mode rst --attributes \"\"");
  CHECK(none.exit_code == 1);
  CHECK(none.output.find("kept attributes: (none)") != std::string::npos);
}

TEST_CASE("reduct-search lists minimal reducts") {
  TempDir dir;
  fs::path dup = dir.file("dup.ctx",
                          "lattice builtin boolean\nattributes p q\n"
                          "object u 1 0\nobject v 1 0\nobject w 0 1\n");
  RunResult minimal = run_cli("reduct-search --context " + dup.string() + " --mode fca");
  CHECK(minimal.exit_code == 0);
  CHECK(minimal.output.find("minimal reducts: 2") != std::string::npos);
  CHECK(minimal.output.find("objects: u w | attributes: p q") != std::string::npos);
  CHECK(minimal.output.find("objects: v w | attributes: p q") != std::string::npos);

  RunResult all = run_cli("reduct-search --context " + dup.string() + " --mode fca --all");
  CHECK(all.output.find("reducts: 3") != std::string::npos);

  fs::path ce = dir.file("ce.ctx", kCounterexample);
  RunResult rst = run_cli("reduct-search --context " + ce.string() + " --negate --mode rst");
  CHECK(rst.output.find("objects: x | attributes: star") != std::string::npos);
}

TEST_CASE("verify-theorem matches the expected behavior per lattice") {
  RunResult god = run_cli("verify-theorem --builtin 'godel(3)' --samples 5 --seed 1");
  CHECK(god.exit_code == 0);
  CHECK(god.output.find("witness found: yes") != std::string::npos);
  CHECK(god.output.find("x: 0") != std::string::npos);
  CHECK(god.output.find("y: 1/2") != std::string::npos);

  RunResult luk = run_cli("verify-theorem --builtin 'lukasiewicz(3)' --samples 10 --seed 7");
  CHECK(luk.exit_code == 0);
  CHECK(luk.output.find("equivalence violations: 0") != std::string::npos);

  RunResult boolean = run_cli(
      "verify-theorem --builtin boolean --exhaustive --max-objects 2 --max-attributes 2");
  CHECK(boolean.exit_code == 0);
  CHECK(boolean.output.find("contexts checked: 31") != std::string::npos);

  RunResult seedless = run_cli("verify-theorem --builtin boolean --samples 3");
  CHECK(seedless.exit_code != 0);  // refuses to run without a seed
}

TEST_CASE("identical configuration and seed give byte-identical reports") {
  const std::string args =
      "verify-theorem --builtin 'lukasiewicz(3)' --samples 12 --seed 99 --format json";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("\"schema_version\": 1") != std::string::npos);

  TempDir dir;
  fs::path ctx = dir.file("ce.ctx", kCounterexample);
  const std::string check_args = "reduct-check --context " + ctx.string() +
                                 " --mode fca --objects x --attributes star --format json";
  RunResult a = run_cli(check_args);
  RunResult b = run_cli(check_args);
  CHECK(a.exit_code == 1);
  CHECK(a.output == b.output);
  CHECK(a.output.find("\"verdict\": false") != std::string::npos);
  CHECK(a.output.find("\"witness\"") != std::string::npos);
}

TEST_CASE("results can be written to a file") {
  TempDir dir;
  fs::path out = dir.path() / "report.json";
  RunResult r = run_cli("lattice-validate --builtin 'godel(3)' --format json --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(out);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content.find("\"double_negation\": false") != std::string::npos);
}
