#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, bool keep_stderr = false) {
  const std::string cmd =
      std::string(YAMABE_LAB_CLI) + " " + args + (keep_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args) {
  const Run r = run(args);
  REQUIRE(r.status == 0);
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("--help").status == 0);
  CHECK(run("").status == 2);
  CHECK(run("bogus").status == 2);
  CHECK(run("energy --no-such-option").status == 2);
  CHECK(run("annulus --r 1.5").status == 1);
  CHECK(run("escobar --n 3 --a 1,0,0").status == 1);
  CHECK(run("cr-energy --csv /nonexistent/file.csv").status == 1);
  const Run e = run("annulus --r 1.5", true);
  CHECK(e.out.find("error:") != std::string::npos);
}

TEST_CASE("every subcommand has help") {
  for (const char* sub : {"energy", "quotient", "minimize", "steklov", "check-thm1", "check-corollary",
                          "check-nonpositive", "cherrier", "annulus", "escobar", "bump", "cr-energy",
                          "check-cr"}) {
    const Run r = run(std::string(sub) + " --help");
    CHECK_MESSAGE(r.status == 0, sub);
    CHECK_MESSAGE(r.out.find("Usage") != std::string::npos, sub);
  }
}

TEST_CASE("json reports carry the schema and command") {
  const auto j = run_json("annulus --n 3 --r 0.5 --m 0");
  CHECK(j.at("schema") == "yamabe-lab/1");
  CHECK(j.at("command") == "annulus");
  const double pi = 3.14159265358979323846;
  CHECK(j.at("energy").get<double>() == doctest::Approx(8 * pi / std::sqrt(5 * pi)).epsilon(1e-14));
  CHECK(std::abs(j.at("euclid_energy_quadrature").get<double>() / j.at("euclid_energy").get<double>() - 1) < 1e-10);

  const auto s = run_json("steklov --n 3 --lmax 3 --H 2");
  CHECK(s.at("verdict") == "degenerate");
  const auto c = run_json("check-cr --gamma 1 --R-theta 2 --R-Theta 2 --ratio-sup 0.9");
  CHECK(c.at("conclusion") == "unique_cr_yamabe");
}

TEST_CASE("identical argv and seed give byte-identical output") {
  const std::string args = "--seed 7 minimize --domain annulus --r 0.5 --H 2,-1 --lmax 2 --init random --max-iters 40 --starts 2";
  const Run a = run(args), b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const Run c = run("--seed 8 minimize --domain annulus --r 0.5 --H 2,-1 --lmax 2 --init random --max-iters 40 --starts 2");
  CHECK(c.out != a.out);
}

TEST_CASE("formats and output file") {
  const Run csv = run("--format csv steklov --n 3 --lmax 2");
  REQUIRE(csv.status == 0);
  CHECK(csv.out.rfind("degree,value,multiplicity\n", 0) == 0);
  CHECK(csv.out.find("\n2,2,5\n") != std::string::npos);

  const Run human = run("--format human cherrier --n 4");
  CHECK(human.out.find("satisfied: true") != std::string::npos);

  const std::string path = "cli_test_output.json";
  std::remove(path.c_str());
  const Run w = run("--output " + path + " bump --amplitude 0.1 --samples 11");
  REQUIRE(w.status == 0);
  CHECK(w.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(nlohmann::json::parse(ss.str()).at("command") == "bump");
  std::remove(path.c_str());
}
