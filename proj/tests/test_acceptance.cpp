#include <doctest.h>

#include <algorithm>

#include "mehtalab/acceptance.hpp"

using namespace mehtalab;
using nlohmann::json;

namespace {

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("render: empty report gives the header only") {
  const std::string t = render_report(json{{"criteria", json::array()}});
  CHECK(lines(t) == 1);
  CHECK(t.find("criterion") != std::string::npos);
  CHECK(report_passes(json{{"criteria", json::array()}}));
}

TEST_CASE("render: one passing row") {
  const json r{{"criteria", {{{"id", 1}, {"name", "x"}, {"estimate", 1.0}, {"reference", 1.0}, {"z_score", 0.5}, {"tolerance", 4.0}, {"pass", true}}}}};
  const std::string t = render_report(r);
  CHECK(lines(t) == 2);
  CHECK(t.find("PASS") != std::string::npos);
  CHECK(report_passes(r));
}

TEST_CASE("render: |z| = 5 is a failure even if flagged pass") {
  const json r{{"criteria", {{{"id", 1}, {"name", "x"}, {"estimate", 1.0}, {"reference", 0.5}, {"z_score", 5.0}, {"tolerance", 4.0}, {"pass", true}}}}};
  CHECK(render_report(r).find("FAIL") != std::string::npos);
  CHECK_FALSE(report_passes(r));
}

TEST_CASE("render: malformed reports") {
  CHECK_THROWS(render_report(json::array()));
  CHECK_THROWS(render_report(json{{"criteria", 3}}));
  CHECK_THROWS(render_report(json{{"criteria", {{{"id", 1}}}}}));
}

TEST_CASE("strip_timing and determinism check") {
  const json a{{"wall_time_s", 1.0}, {"criteria", {{{"wall_time_s", 2.0}, {"x", 1}}}}};
  const json b{{"wall_time_s", 3.0}, {"criteria", {{{"wall_time_s", 9.0}, {"x", 1}}}}};
  const json c{{"wall_time_s", 3.0}, {"criteria", {{{"wall_time_s", 9.0}, {"x", 2}}}}};
  CHECK(strip_timing(a).dump() == R"({"criteria":[{"x":1}]})");
  CHECK(determinism_check(a, b).pass);
  CHECK_FALSE(determinism_check(a, c).pass);
}

TEST_CASE("criterion 4 runs and serializes") {
  AcceptanceOptions opts;
  const auto c = run_criterion(4, opts);
  CHECK(c.pass);
  const json j = c;
  CHECK(j["details"].size() == 20);
  CHECK_THROWS(run_criterion(12, opts));
}

TEST_CASE("capped runs are reproducible across worker counts") {
  AcceptanceOptions one, four;
  one.max_samples = four.max_samples = 20000;
  one.only = four.only = {3, 5};
  four.workers = 4;
  const auto a = make_report(one, run_acceptance(one));
  const auto b = make_report(four, run_acceptance(four));
  CHECK(strip_timing(a)["criteria"].dump() == strip_timing(b)["criteria"].dump());
}
