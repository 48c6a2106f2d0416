#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ERGO_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(ERGO_TEST_DATA) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::filesystem::path scratch(const char* name) {
  auto p = std::filesystem::temp_directory_path() / ("ergo_cli_test_" + std::string(name));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("analyze A2") {
  const auto dir = scratch("analyze");
  const auto r = run("analyze " + data("a2.json") + " --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("m(A) = 0") != std::string::npos);
  CHECK(r.out.find("gamma = 1") != std::string::npos);
  CHECK(r.out.find("(2 distinct)") != std::string::npos);
  CHECK(r.out.find("turning cut: 0(1)|1(0)") != std::string::npos);
  CHECK(r.out.find("transport cost = -1/2") != std::string::npos);
  for (const char* f : {"analysis.json", "kernel.csv", "b.csv", "plan.csv"})
    CHECK(std::filesystem::exists(dir / f));
  CHECK(slurp(dir / "analysis.json").find("\"gamma\"") != std::string::npos);

  // byte-identical reruns
  const auto dir2 = scratch("analyze2");
  const auto r2 = run("analyze " + data("a2.json") + " --out " + dir2.string());
  CHECK(r2.out == r.out);
  for (const char* f : {"analysis.json", "kernel.csv", "b.csv", "plan.csv"})
    CHECK(slurp(dir / f) == slurp(dir2 / f));
}

TEST_CASE("analyze refusals") {
  const auto flat = run("analyze " + data("constant.json"));
  CHECK(flat.code == 3);
  CHECK(flat.out.find("maximizing measure not unique") != std::string::npos);
  CHECK(run("analyze " + data("malformed.json")).code == 2);
  CHECK(run("analyze " + data("does_not_exist.json")).code == 2);
  CHECK(run("analyze").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("scan") {
  const auto dir = scratch("scan");
  const auto r = run("scan " + data("a2.json") + " --out " + dir.string());
  CHECK(r.code == 0);
  const auto csv = slurp(dir / "scan.csv");
  CHECK(lines(csv) == 8);
  CHECK(csv.find("ldp_gap") != std::string::npos);
  const auto one = run("scan " + data("a2.json") + " --beta 3");
  CHECK(one.code == 0);
  CHECK(lines(one.out) == 2);
  const auto flat = run("scan " + data("constant.json") + " --betas 1,2");
  CHECK(flat.code == 0);
  CHECK(flat.out.find("ldp_gap") == std::string::npos);
  CHECK(run("scan " + data("a2.json") + " --betas 2,1").code == 2);
}

TEST_CASE("verify") {
  const auto ok = run("verify " + data("a2.json"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);
  const auto bad = run("verify " + data("a2.json") + " --corrupt-w");
  CHECK(bad.code == 4);
  CHECK(bad.out.find("FAIL FR") != std::string::npos);
  CHECK(run("verify " + data("depth1.json")).code == 0);
  CHECK(run("verify " + data("a2.json") + " --base-point '1(0)'").code == 0);
}

TEST_CASE("generic") {
  const auto r = run("generic --seed 5 --samples 20 --depth 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("unique: 20/20") != std::string::npos);
  CHECK(run("generic --seed 5 --samples 20 --depth 3").out == r.out);
}
