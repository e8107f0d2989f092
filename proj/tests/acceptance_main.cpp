// Acceptance suite: one PASS/FAIL line per criterion.
//
//   mehtalab_acceptance [--seed S] [--workers K] [--only 1,3,...] [--json PATH] [--no-determinism]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mehtalab/acceptance.hpp"

namespace {

void print_line(const mehtalab::CriterionResult& c) {
  std::printf("[%s] %2d  %-70s", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
  if (c.z_score) std::printf("  worst|z|=%.3f", std::abs(*c.z_score));
  if (c.time_limit_s > 0)
    std::printf("  %.1fs/%.0fs%s", c.wall_time_s, c.time_limit_s, c.wall_time_s > c.time_limit_s ? " (over time)" : "");
  std::printf("\n");
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mehtalab acceptance suite"};
  mehtalab::AcceptanceOptions opts;
  opts.workers = 4;
  std::string only, json_path;
  bool skip_determinism = false;
  app.add_option("--seed", opts.seed);
  app.add_option("--workers", opts.workers);
  app.add_option("--only", only, "comma-separated criterion ids");
  app.add_option("--json", json_path, "write the report here");
  app.add_flag("--no-determinism", skip_determinism);
  CLI11_PARSE(app, argc, argv);
  std::stringstream ids(only);
  for (std::string tok; std::getline(ids, tok, ',');)
    if (!tok.empty()) opts.only.push_back(std::stoi(tok));

  std::vector<mehtalab::CriterionResult> results;
  std::vector<int> run = opts.only;
  if (run.empty())
    for (int id = 1; id <= 10; ++id) run.push_back(id);
  for (int id : run) {
    results.push_back(mehtalab::run_criterion(id, opts));
    print_line(results.back());
  }
  const auto first = mehtalab::make_report(opts, results);
  if (!json_path.empty()) std::ofstream(json_path) << first.dump(2) << '\n';

  bool ok = mehtalab::report_passes(first);
  if (!skip_determinism) {
    const auto second = mehtalab::make_report(opts, mehtalab::run_acceptance(opts));
    const auto d = mehtalab::determinism_check(first, second);
    print_line(d);
    ok = ok && d.pass;
  }
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
