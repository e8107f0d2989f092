#include <doctest.h>

#include <cmath>
#include <limits>

#include "mehtalab/estimator.hpp"

using namespace mehtalab;

TEST_CASE("running stats merge matches a single pass") {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(std::sin(i * 0.37) * 3 + i * 1e-3);
  RunningStats all;
  for (double x : xs) all.add(x);
  std::vector<RunningStats> parts(7);
  for (std::size_t i = 0; i < xs.size(); ++i) parts[i * 7 / xs.size()].add(xs[i]);
  const RunningStats merged = merge_pairwise(parts);

  double mean = 0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() - 1;

  CHECK(merged.count == xs.size());
  CHECK(merged.mean == doctest::Approx(mean).epsilon(1e-13));
  CHECK(merged.variance() == doctest::Approx(var).epsilon(1e-12));
  CHECK(all.variance() == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("monte carlo results do not depend on the worker count") {
  const auto run = [](unsigned workers) {
    McConfig cfg{99, workers, 1000};
    return mc_mean(25000, cfg, StreamTag::mehta_mc, [](Stream& s) { return s.normal() * s.normal() + s.uniform(); });
  };
  const auto one = run(1);
  for (unsigned w : {2u, 3u, 8u}) {
    const auto other = run(w);
    CHECK(other.mean == one.mean);
    CHECK(other.m2 == one.m2);
    CHECK(other.count == one.count);
  }
}

TEST_CASE("seed changes the estimate") {
  const auto f = [](Stream& s) { return s.normal(); };
  CHECK(mc_mean(5000, McConfig{1}, StreamTag::weyl, f).mean != mc_mean(5000, McConfig{2}, StreamTag::weyl, f).mean);
}

TEST_CASE("exceptions inside workers reach the caller") {
  McConfig cfg{1, 4, 10};
  CHECK_THROWS_AS(run_chunks(100, cfg, StreamTag::weyl,
                             [](Stream&, std::uint64_t) -> int { throw std::runtime_error("boom"); }),
                  std::runtime_error);
}

TEST_CASE("z score and pass rules") {
  EstimatorResult r;
  r.estimate = 1.0;
  r.std_error = 0.1;
  CHECK_FALSE(r.z_score().has_value());
  CHECK(r.pass());
  r.reference = 1.5;
  CHECK(*r.z_score() == doctest::Approx(-5.0));
  CHECK_FALSE(r.pass());
  r.reference_std_error = 0.1;
  CHECK(*r.z_score() == doctest::Approx(-5.0 / std::sqrt(2.0)));
  CHECK(r.pass());

  EstimatorResult exact;
  exact.estimate = 4.0;
  exact.reference = 4.0;
  CHECK(*exact.z_score() == 0.0);
  exact.estimate = 4.1;
  CHECK(std::isinf(*exact.z_score()));
  CHECK_FALSE(exact.pass());
  const nlohmann::json j = exact;
  CHECK(j["z_score"].is_null());
  CHECK(j["pass"] == false);
}

TEST_CASE("make_result scales the estimate and its error") {
  RunningStats st;
  for (double x : {1.0, 2.0, 3.0, 4.0}) st.add(x);
  const auto r = make_result(st, 5, 2.0);
  CHECK(r.estimate == doctest::Approx(5.0));
  CHECK(r.std_error == doctest::Approx(2.0 * st.std_error()));
  CHECK(r.n_samples == 4);
  CHECK(r.seed == 5);
}
