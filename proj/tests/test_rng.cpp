#include <doctest.h>

#include <cmath>
#include <set>

#include "mehtalab/rng.hpp"

using namespace mehtalab;

TEST_CASE("philox known-answer vectors") {
  using C = Philox4x32::counter_type;
  using K = Philox4x32::key_type;
  CHECK(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  Stream a(7, 3, 11), b(7, 3, 11), c(7, 3, 12), d(8, 3, 11), e(7, 4, 11);
  std::set<double> firsts;
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  firsts.insert(Stream(7, 3, 11).uniform());
  firsts.insert(c.uniform());
  firsts.insert(d.uniform());
  firsts.insert(e.uniform());
  CHECK(firsts.size() == 4);
}

TEST_CASE("normal variates have the right first moments") {
  Stream s(1, 1, 0);
  const int n = 200000;
  double sum = 0, sum2 = 0, sum4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s.normal(2.0);
    sum += x;
    sum2 += x * x;
    sum4 += x * x * x * x;
  }
  // Var = 2, fourth moment = 3 * 2^2.
  CHECK(std::abs(sum / n) < 4 * std::sqrt(2.0 / n));
  CHECK(std::abs(sum2 / n - 2.0) < 4 * std::sqrt(8.0 / n));
  CHECK(std::abs(sum4 / n - 12.0) < 4 * std::sqrt((105.0 * 16 - 144) / n));
}

TEST_CASE("uniform variates lie in [0, 1)") {
  Stream s(3, 2, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = s.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
