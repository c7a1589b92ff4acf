#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sds/toeplitz.hpp"

using namespace sds;

namespace {

long long pow3(int k) {
  long long p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

// literal membership in the first three progressions: period 3 through 0,
// period 9 through 2, period 27 through 8, with fillers one period-third on
long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

TEST_CASE("values on [0,8] follow the residue rule") {
  ToeplitzWindow w = toeplitz_generate({1, 1, 1}, 0, 8);
  std::vector<int> expect = {1, 3, 1, 1, 3, 3, 1, 3, 1};
  CHECK(w.values == expect);
  std::vector<int> levels;
  for (long long i = 0; i <= 8; ++i) levels.push_back(w.coverage_at(i).level);
  CHECK(levels == std::vector<int>{1, 1, 2, 1, 1, 2, 1, 1, 3});
  for (long long i = 0; i <= 8; ++i)
    CHECK(w.coverage_at(i).kind != ToeplitzWindow::Coverage::Kind::Uncovered);
}

TEST_CASE("a mixed prefix lands where the progressions say") {
  ToeplitzWindow w = toeplitz_generate({1, 2, 1}, 0, 8);
  CHECK(w.values == std::vector<int>{1, 3, 2, 1, 3, 3, 1, 3, 1});
  // literal check against the paper-level progressions
  for (long long i = 0; i <= 8; ++i) {
    if (mod_pos(i, 3) == 0) CHECK(w.value_at(i) == 1);
    else if (mod_pos(i, 3) == 1) CHECK(w.value_at(i) == 3);
    else if (mod_pos(i, 9) == 2) CHECK(w.value_at(i) == 2);
    else if (mod_pos(i, 9) == 5) CHECK(w.value_at(i) == 3);
    else if (mod_pos(i, 27) == 8) CHECK(w.value_at(i) == 1);
  }
}

TEST_CASE("position -1 stays uncovered at every truncation") {
  ToeplitzWindow w = toeplitz_generate({1}, -1, -1);
  CHECK(w.value_at(-1) == 3);
  CHECK(w.coverage_at(-1).kind == ToeplitzWindow::Coverage::Kind::Uncovered);
  ToeplitzWindow w4 = toeplitz_generate({1, 2, 1, 2}, -1, -1);
  CHECK(w4.coverage_at(-1).kind == ToeplitzWindow::Coverage::Kind::Uncovered);
}

TEST_CASE("coverage partitions the window") {
  for (int K = 1; K <= 4; ++K) {
    std::vector<int> omega;
    for (int i = 0; i < K; ++i) omega.push_back(1 + (i % 2));
    ToeplitzWindow w = toeplitz_generate(omega, 0, pow3(K) - 1);
    long long uncovered = 0;
    std::vector<long long> per_level(static_cast<size_t>(K + 1), 0);
    for (long long i = w.lo; i <= w.hi; ++i) {
      const auto& c = w.coverage_at(i);
      if (c.kind == ToeplitzWindow::Coverage::Kind::Uncovered) {
        ++uncovered;
        CHECK(mod_pos(i, pow3(K)) == pow3(K) - 1);
      } else if (c.kind == ToeplitzWindow::Coverage::Kind::Value) {
        ++per_level[static_cast<size_t>(c.level)];
      }
    }
    CHECK(uncovered == 1);
    // level-k value positions have density 3^-k: exactly 3^{K-k} of them
    for (int k = 1; k <= K; ++k)
      CHECK(per_level[static_cast<size_t>(k)] == pow3(K - k));
  }
}

TEST_CASE("recover undoes generate for every prefix of length four") {
  for (int bits = 0; bits < 16; ++bits) {
    std::vector<int> omega;
    for (int i = 0; i < 4; ++i) omega.push_back(((bits >> i) & 1) + 1);
    ToeplitzWindow w = toeplitz_generate(omega, 0, 80);
    RecoverResult r = toeplitz_recover(w, 4);
    CHECK_FALSE(r.corrupted);
    CHECK(r.omega == omega);
    // unlimited recovery stops at the filler residue past the prefix
    RecoverResult all = toeplitz_recover(w);
    CHECK_FALSE(all.corrupted);
    CHECK(all.omega == omega);
  }
}

TEST_CASE("short windows recover partial prefixes") {
  ToeplitzWindow w = toeplitz_generate({1, 2, 1}, 0, 26);
  RecoverResult full = toeplitz_recover(w);
  CHECK_FALSE(full.corrupted);
  CHECK(full.omega == std::vector<int>{1, 2, 1});
  ToeplitzWindow clipped = toeplitz_generate({1, 2, 1}, 0, 2);
  RecoverResult part = toeplitz_recover(clipped);
  CHECK_FALSE(part.corrupted);
  CHECK(part.omega == std::vector<int>{1, 2});  // omega1 at 0, omega2 at 2
  ToeplitzWindow lone = toeplitz_generate({1}, -1, -1);
  CHECK(toeplitz_recover(lone).omega.empty());
}

TEST_CASE("inconsistent level values are corruption") {
  ToeplitzWindow w = toeplitz_generate({1, 2}, 0, 8);
  w.values[3] = 2;  // position 3 is a level-1 value slot holding omega1 = 1
  RecoverResult r = toeplitz_recover(w);
  CHECK(r.corrupted);
  CHECK(r.corrupt_position == 3);
}

TEST_CASE("periodicity holds by construction and fails when planted") {
  ToeplitzWindow w = toeplitz_generate({1, 1}, 0, 17);
  CHECK(periodicity_check(w).pass);
  w.values[6] = 2;  // overwrite one level-1 slot
  PeriodicityReport rep = periodicity_check(w);
  CHECK_FALSE(rep.pass);
  CHECK(!rep.failures.empty());
  ToeplitzWindow tiny = toeplitz_generate({1}, 5, 5);
  CHECK(periodicity_check(tiny).pass);
}

TEST_CASE("window serialization round trips") {
  ToeplitzWindow w = toeplitz_generate({2, 1, 2}, -5, 12);
  ToeplitzWindow back = parse_toeplitz_window(toeplitz_window_str(w));
  CHECK(back.lo == w.lo);
  CHECK(back.hi == w.hi);
  CHECK(back.values == w.values);
  for (long long i = w.lo; i <= w.hi; ++i) {
    CHECK(back.coverage_at(i).kind == w.coverage_at(i).kind);
    CHECK(back.coverage_at(i).level == w.coverage_at(i).level);
  }
  CHECK_THROWS_AS(parse_toeplitz_window("interval 3 1\n"), input_error);
}

TEST_CASE("bad prefixes are rejected") {
  CHECK_THROWS_AS(toeplitz_generate({}, 0, 5), input_error);
  CHECK_THROWS_AS(toeplitz_generate({3}, 0, 5), input_error);
  CHECK_THROWS_AS(toeplitz_generate({1}, 5, 0), input_error);
}
