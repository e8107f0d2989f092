#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(MEHTALAB_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string tmp(const std::string& name) { return std::string(MEHTALAB_TMP) + "/" + name; }

}  // namespace

TEST_CASE("mehta quadrature for m = 2") {
  const auto r = run("mehta --m 2 --method quadrature");
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["estimate"].get<double>() == doctest::Approx(7.089815).epsilon(1e-6));
  CHECK(j["reference"].get<double>() == doctest::Approx(7.089815).epsilon(1e-6));
  CHECK(j["pass"] == true);
  CHECK(j["config"]["method"] == "quadrature");
  CHECK(j["config"]["seed"] == 42);
}

TEST_CASE("critpoints on the bundled diag(1, 2) fixture") {
  const auto r = run(std::string("critpoints ") + MEHTALAB_FIXTURE);
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["critical_points"].size() == 4);
  const double expect[] = {1, 1, 2, 2};
  for (int k = 0; k < 4; ++k) CHECK(j["critical_points"][k]["value"].get<double>() == doctest::Approx(expect[k]));
}

TEST_CASE("eig on the fixture, csv") {
  const auto r = run(std::string("eig --format csv --matrix ") + MEHTALAB_FIXTURE);
  CHECK(r.status == 0);
  CHECK(r.out.find("eigenvalue\n1\n2\n") != std::string::npos);
  CHECK(r.out.rfind("# config: ", 0) == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("mehta --bogus 1").status == 2);
  CHECK(run("mehta --method nope").status == 2);
  CHECK(run("mehta --v -1").status == 2);
  CHECK(run("eig").status == 2);
}

TEST_CASE("environment overrides") {
  const auto r = run("mehta --method closed");
  const std::string cmd = "MEHTA_M=3 " + std::string(MEHTALAB_CLI) + " mehta --method closed";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  pclose(p);
  CHECK(json::parse(out)["config"]["m"] == 3);
  CHECK(json::parse(r.out)["config"]["m"] == 2);
}

TEST_CASE("output is identical for any worker count") {
  const auto a = run("mehta --m 3 --method mc --n 50000 --workers 1");
  const auto b = run("mehta --m 3 --method mc --n 50000 --workers 4");
  REQUIRE(a.status == 0);
  auto ja = json::parse(a.out), jb = json::parse(b.out);
  ja["config"].erase("workers");
  jb["config"].erase("workers");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("report, render and the exit-code contract") {
  const std::string path = tmp("cli_report.json");
  const auto r = run("report --n 5000 --only 2,4 --out " + path);
  CHECK(r.status == 0);
  const auto rendered = run("render " + path);
  CHECK(rendered.status == 0);
  CHECK(rendered.out.find("PASS") != std::string::npos);

  std::ifstream in(path);
  json report = json::parse(in);
  report["criteria"][0]["z_score"] = 5.0;
  report["criteria"][0]["tolerance"] = 4.0;
  const std::string bad = tmp("cli_report_bad.json");
  std::ofstream(bad) << report.dump();
  const auto failed = run("render " + bad);
  CHECK(failed.status == 1);
  CHECK(failed.out.find("FAIL") != std::string::npos);

  const std::string junk = tmp("cli_report_junk.json");
  std::ofstream(junk) << "{not json";
  CHECK(run("render " + junk).status == 2);
}

TEST_CASE("sample emits the requested number of matrices") {
  const auto r = run("sample --m 3 --u -0.5 --v 1 --n 5");
  CHECK(r.status == 0);
  const auto j = json::parse(r.out);
  CHECK(j["matrices"].size() == 5);
  CHECK(j["matrices"][0].size() == 3);
}
