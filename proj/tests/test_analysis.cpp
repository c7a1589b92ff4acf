#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "sds/analysis.hpp"

using namespace sds;

namespace {

Group z_group() { return Group({FactorSpec::infinite_cyclic()}); }

GroupElement z_el(int n) {
  return n == 0 ? identity_element() : GroupElement{{Syllable{0, n}}};
}

Support z_interval(int lo, int hi) {
  std::vector<GroupElement> v;
  for (int i = lo; i <= hi; ++i) v.push_back(z_el(i));
  return sorted_support(std::move(v));
}

Sft edge_sft(const std::vector<std::string>& names, const std::set<std::pair<int, int>>& edges) {
  std::set<std::vector<int>> allowed;
  for (auto [u, v] : edges) allowed.insert({u, v});
  return make_sft(z_group(), names, z_interval(0, 1), allowed);
}

ZGraph zg(std::vector<std::string> names, std::set<std::pair<int, int>> edges) {
  ZGraph g;
  g.names = std::move(names);
  g.edges = std::move(edges);
  return g;
}

ZGraph example225_graph() { return zg({"-1", "0", "1"}, {{0, 0}, {0, 2}, {2, 1}, {1, 1}}); }

Sft example225_sft() {
  return edge_sft({"-1", "0", "1"}, {{0, 0}, {0, 2}, {2, 1}, {1, 1}});
}

Sft full_shift2() { return edge_sft({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

Sft golden_mean() { return edge_sft({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}}); }

// brute-force: does some proper nonempty sub-sft at window <= wmax share the
// interval-F patterns / hit all cylinders? enumerates all subsets, so keep
// the sizes tiny.
bool oracle_has_witness(const Sft& x, int f_len, int wmax) {
  for (int w = 2; w <= wmax; ++w) {
    auto xw = exact_z_words(x, w);
    std::vector<std::vector<int>> words(xw.begin(), xw.end());
    auto xf = exact_z_words(x, f_len);
    for (unsigned mask = 1; mask + 1 < (1u << words.size()); ++mask) {
      std::set<std::vector<int>> sub;
      for (size_t i = 0; i < words.size(); ++i)
        if (mask & (1u << i)) sub.insert(words[i]);
      if (sub.size() == words.size()) continue;
      std::vector<GroupElement> supp;
      for (int i = 0; i < w; ++i) supp.push_back(z_el(i));
      Sft y = make_sft(x.group, x.alphabet, sorted_support(std::move(supp)), sub);
      ZRecode zy = z_first_step(y);
      if (zy.graph.empty()) continue;
      if (z_letter_words(zy.graph, zy.letter_map, f_len) == xf) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("nmc holds for the three-letter example graph") {
  NmcReport rep = nmc_check(example225_graph());
  CHECK(rep.nmc);
}

TEST_CASE("nmc holds for a single cycle") {
  CHECK(nmc_check(zg({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}})).nmc);
}

TEST_CASE("nmc fails for the full shift graph") {
  NmcReport rep = nmc_check(zg({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  CHECK_FALSE(rep.nmc);
  REQUIRE(rep.witness_cycle.has_value());
}

TEST_CASE("nmc vertex cap raises a budget error") {
  std::vector<std::string> names;
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < 13; ++i) {
    names.push_back("v" + std::to_string(i));
    edges.insert({i, (i + 1) % 13});
  }
  CHECK_THROWS_AS(nmc_check(zg(names, edges)), budget_error);
}

TEST_CASE("degree condition") {
  CHECK(degree_condition_ok(example225_graph()));
  CHECK_FALSE(degree_condition_ok(zg({"0", "1"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})));
}

TEST_CASE("three-letter example sft is certified isolated") {
  IsolationVerdict v = isolated_check(example225_sft(), 2, 4, 8);
  CHECK(v.status == IsolationVerdict::Status::IsolatedCertified);
  REQUIRE(v.nmc_level.has_value());
  CHECK(*v.nmc_level == 1);
}

TEST_CASE("full shift is refuted with a validated witness") {
  IsolationVerdict v = isolated_check(full_shift2(), 2, 4, 8);
  REQUIRE(v.status == IsolationVerdict::Status::NotIsolated);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->window_len == 3);
  CHECK(v.witness->removed_word == std::vector<int>{1, 1, 1});
  CHECK(v.witness->difference_length == 3);
  CHECK(v.witness->missing_word == std::vector<int>{1, 1, 1});
  // validate: the witness shares 2-letter patterns with the full shift
  std::vector<GroupElement> supp;
  for (int i = 0; i < v.witness->window_len; ++i) supp.push_back(z_el(i));
  std::set<std::vector<int>> sub(v.witness->allowed_words.begin(),
                                 v.witness->allowed_words.end());
  Sft y = make_sft(z_group(), {"0", "1"}, sorted_support(std::move(supp)), sub);
  CHECK(exact_z_words(y, 2) == exact_z_words(full_shift2(), 2));
  CHECK(exact_z_words(y, 3).count({1, 1, 1}) == 0);
}

TEST_CASE("a fixed point is certified isolated") {
  Sft pt = edge_sft({"0", "1"}, {{0, 0}});
  IsolationVerdict v = isolated_check(pt, 2, 4, 8);
  CHECK(v.status == IsolationVerdict::Status::IsolatedCertified);
}

TEST_CASE("empty sft is rejected") {
  Sft none = make_sft(z_group(), {"0", "1"}, z_interval(0, 1), {{0, 1}});
  CHECK_THROWS_AS(isolated_check(none, 2, 4, 8), input_error);
}

TEST_CASE("nmc certificates never coexist with witnesses") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> nv(2, 6);
  std::bernoulli_distribution edge(0.35);
  int tested = 0;
  for (int trial = 0; trial < 300 && tested < 25; ++trial) {
    int n = nv(rng);
    std::set<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (edge(rng)) edges.insert({u, v});
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    ZGraph g = essential_z(zg(names, edges));
    if (g.empty()) continue;
    ++tested;
    bool nmc = nmc_check(g).nmc;
    Sft x = zgraph_to_sft(g);
    IsolationVerdict v = isolated_check(x, 2, 4, 8, 1);
    if (nmc) {
      CHECK(v.status == IsolationVerdict::Status::IsolatedCertified);
    }
    if (v.status == IsolationVerdict::Status::NotIsolated) {
      CHECK_FALSE(nmc);
    }
  }
  CHECK(tested >= 25);
}

TEST_CASE("plain minimality is the single-cycle test") {
  Sft cyc3 = edge_sft({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(minimal_check(cyc3, std::nullopt, 4).status == MinimalVerdict::Status::Minimal);
  CHECK(minimal_check(golden_mean(), std::nullopt, 4).status ==
        MinimalVerdict::Status::NotMinimal);
}

TEST_CASE("plain minimality agrees with the enumeration oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> nv(1, 4);
  std::bernoulli_distribution edge(0.4);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 20; ++trial) {
    int n = nv(rng);
    std::set<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (edge(rng)) edges.insert({u, v});
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    ZGraph g = essential_z(zg(names, edges));
    if (g.empty()) continue;
    ++tested;
    Sft x = zgraph_to_sft(g);
    MinimalVerdict v = minimal_check(x, std::nullopt, 4);
    // oracle: minimal iff no proper nonempty sub-sft shares nothing... a
    // proper nonempty sub-sft of a minimal shift cannot exist at all
    bool oracle_minimal = true;
    for (int w = 2; w <= 4 && oracle_minimal; ++w) {
      auto xw = exact_z_words(x, w);
      std::vector<std::vector<int>> words(xw.begin(), xw.end());
      if (words.size() > 12) break;  // keep the subset loop tight
      for (unsigned mask = 1; mask + 1 < (1u << words.size()) && oracle_minimal; ++mask) {
        std::set<std::vector<int>> sub;
        for (size_t i = 0; i < words.size(); ++i)
          if (mask & (1u << i)) sub.insert(words[i]);
        if (sub.size() == words.size()) continue;
        std::vector<GroupElement> supp;
        for (int i = 0; i < w; ++i) supp.push_back(z_el(i));
        Sft y = make_sft(x.group, x.alphabet, sorted_support(std::move(supp)), sub);
        if (!z_first_step(y).graph.empty()) oracle_minimal = false;
      }
    }
    CHECK((v.status == MinimalVerdict::Status::Minimal) == oracle_minimal);
  }
  CHECK(tested >= 20);
}

TEST_CASE("cylinder minimality of the three-letter example") {
  Sft x = example225_sft();
  // all four 2-cylinders
  std::vector<Pattern> cyls;
  for (const auto& w : std::vector<std::vector<int>>{{0, 0}, {0, 2}, {2, 1}, {1, 1}})
    cyls.push_back(make_pattern(z_interval(0, 1), w, 3));
  MinimalVerdict v = minimal_check(x, cyls, 4);
  CHECK(v.status == MinimalVerdict::Status::Minimal);

  // a single cylinder admits the constant -1 witness
  std::vector<Pattern> one = {make_pattern(z_interval(0, 1), {0, 0}, 3)};
  MinimalVerdict v1 = minimal_check(x, one, 4);
  CHECK(v1.status == MinimalVerdict::Status::NotMinimal);
  REQUIRE(v1.witness.has_value());
}

TEST_CASE("disallowed cylinder patterns are rejected") {
  Sft x = example225_sft();
  std::vector<Pattern> bad = {make_pattern(z_interval(0, 1), {1, 0}, 3)};  // word "0 -1"
  CHECK_THROWS_AS(minimal_check(x, bad, 4), input_error);
}

TEST_CASE("refutation search is consistent with the complete subset oracle") {
  // tiny corpus where every subset can be enumerated
  std::vector<Sft> corpus = {golden_mean(), full_shift2(), example225_sft(),
                             edge_sft({"a", "b"}, {{0, 0}, {1, 1}})};
  for (const Sft& x : corpus) {
    IsolationVerdict v = isolated_check(x, 2, 3, 8, 1);
    bool found = (v.status == IsolationVerdict::Status::NotIsolated);
    CHECK(found == oracle_has_witness(x, 2, 3));
  }
}
