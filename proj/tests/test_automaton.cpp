#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <queue>

#include "oracles.hpp"
#include "sds/automaton.hpp"

using namespace sds;

namespace {

Group z_group() { return Group({FactorSpec::infinite_cyclic()}); }

GroupElement z_el(int n) {
  return n == 0 ? identity_element() : GroupElement{{Syllable{0, n}}};
}

ColoringAutomaton period_swap() {
  return make_automaton(z_group(), {"a", "b"}, {{1, 0}, {1, 0}});
}

// All configurations of the full shift over the cyclic group of order n.
std::vector<Pattern> full_configs(const Group& g, int letters) {
  Support whole = ball(g, 1);
  std::vector<Pattern> out;
  std::vector<int> v(whole.size(), 0);
  while (true) {
    out.push_back(make_pattern(whole, v, letters));
    int i = 0;
    while (i < static_cast<int>(v.size()) && ++v[static_cast<size_t>(i)] == letters) {
      v[static_cast<size_t>(i)] = 0;
      ++i;
    }
    if (i == static_cast<int>(v.size())) break;
  }
  return out;
}

ZGraph example225_graph() {
  ZGraph g;
  g.names = {"-1", "0", "1"};
  g.edges = {{0, 0}, {0, 2}, {2, 1}, {1, 1}};
  return g;
}

AlphabetMap eval_at_identity(const ColoringAutomaton& a, const std::vector<Pattern>& configs) {
  std::vector<int> m;
  for (const Pattern& p : configs) m.push_back(p.at(identity_element()));
  return make_alphabet_map(a.colors, {"0", "1"}, m);
}

struct Five {
  ColoringAutomaton swap_z = period_swap();
  ColoringAutomaton nmc225;
  ColoringAutomaton z3;
  ColoringAutomaton z2z3;
  ColoringAutomaton f2;
  Five() {
    nmc225 = case2_nmc_automaton(example225_graph()).automaton;
    Group gz3({FactorSpec::cyclic(3)});
    z3 = case1_automaton(gz3, full_configs(gz3, 2));
    Group gz2({FactorSpec::cyclic(2)});
    ColoringAutomaton az2 = case1_automaton(gz2, full_configs(gz2, 2));
    AlphabetMap phi = eval_at_identity(az2, full_configs(gz2, 2));
    AlphabetMap psi = eval_at_identity(z3, full_configs(gz3, 2));
    z2z3 = product_automaton(az2, phi, z3, psi);
    AlphabetMap id = identity_map(swap_z.colors);
    f2 = product_automaton(swap_z, id, swap_z, id);
  }
};

}  // namespace

TEST_CASE("period swap run matches the hand sweep") {
  ColoringAutomaton a = period_swap();
  TrackedConfig cfg = run(a, identity_element(), 0, 2);
  REQUIRE(cfg.support.size() == 5);
  // colors alternate a b a b a on -2..2
  CHECK(cfg.at(z_el(-2)).color == 0);
  CHECK(cfg.at(z_el(-1)).color == 1);
  CHECK(cfg.at(z_el(0)).color == 0);
  CHECK(cfg.at(z_el(1)).color == 1);
  CHECK(cfg.at(z_el(2)).color == 0);
  // generator order: +1 then -1
  int plus = a.group.generator_index(z_el(1));
  int minus = a.group.generator_index(z_el(-1));
  CHECK(cfg.at(z_el(0)).dirs == std::vector<Dir>{Dir::Right, Dir::Right});
  CHECK(cfg.at(z_el(1)).dirs[static_cast<size_t>(minus)] == Dir::Left);
  CHECK(cfg.at(z_el(1)).dirs[static_cast<size_t>(plus)] == Dir::Right);
  CHECK(cfg.at(z_el(-1)).dirs[static_cast<size_t>(plus)] == Dir::Left);
  CHECK(cfg.at(z_el(-1)).dirs[static_cast<size_t>(minus)] == Dir::Right);
}

TEST_CASE("a radius-0 run is the seeded cell") {
  ColoringAutomaton a = period_swap();
  TrackedConfig cfg = run(a, z_el(3), 1, 0);
  REQUIRE(cfg.support.size() == 1);
  CHECK(cfg.at(z_el(3)).color == 1);
  CHECK(cfg.at(z_el(3)).dirs == std::vector<Dir>{Dir::Right, Dir::Right});
}

TEST_CASE("case-1 run fills a finite group in one sweep") {
  Group g({FactorSpec::cyclic(3)});
  ColoringAutomaton a = case1_automaton(g, full_configs(g, 2));
  TrackedConfig cfg = run(a, identity_element(), 5, 1);
  CHECK(cfg.support.size() == 3);  // the whole group
  // markers: start all-Right, others Left toward the start and None across
  for (const GroupElement& h : cfg.support) {
    const TrackedLetter& l = cfg.at(h);
    int lefts = 0, nones = 0;
    for (Dir d : l.dirs) {
      lefts += d == Dir::Left;
      nones += d == Dir::None;
    }
    if (h.is_identity()) {
      CHECK(lefts == 0);
      CHECK(nones == 0);
    } else {
      CHECK(lefts == 1);
      CHECK(nones == 1);
    }
  }
}

TEST_CASE("runs satisfy the pointwise local rules") {
  Five five;
  for (const ColoringAutomaton& a :
       {five.swap_z, five.nmc225, five.z3, five.z2z3, five.f2}) {
    for (int c = 0; c < static_cast<int>(a.colors.size()); ++c) {
      TrackedConfig cfg = run(a, identity_element(), c, a.group.single_z() ? 5 : 4);
      auto violation = check_local_rules(a, cfg);
      CHECK_FALSE(violation.has_value());
    }
  }
}

TEST_CASE("tampered runs are caught") {
  ColoringAutomaton a = period_swap();
  TrackedConfig cfg = run(a, identity_element(), 0, 3);
  cfg.letters[0].color ^= 1;
  CHECK(check_local_rules(a, cfg).has_value());
  TrackedConfig cfg2 = run(a, identity_element(), 0, 3);
  auto it = std::lower_bound(cfg2.support.begin(), cfg2.support.end(), z_el(2));
  cfg2.letters[static_cast<size_t>(it - cfg2.support.begin())].dirs = {Dir::None, Dir::None};
  CHECK(check_local_rules(a, cfg2).has_value());
}

TEST_CASE("period swap tilde sft stabilizes by radius 3") {
  TildeSft t = tilde_sft(period_swap(), 5);
  REQUIRE(t.stabilized_at.has_value());
  CHECK(*t.stabilized_at == 3);
  CHECK(t.letters.size() == 6);  // two sources, two left-movers, two right-movers
}

TEST_CASE("finite-group tilde saturates immediately") {
  Group g({FactorSpec::cyclic(3)});
  ColoringAutomaton a = case1_automaton(g, full_configs(g, 2));
  TildeSft t = tilde_sft(a, 2);
  REQUIRE(t.stabilized_at.has_value());
  CHECK(*t.stabilized_at == 1);  // ball(1) is the whole group
}

TEST_CASE("one-color constant automaton produces one tracked family") {
  ColoringAutomaton a = make_automaton(z_group(), {"a"}, {{0}, {0}});
  TildeSft t = tilde_sft(a, 4);
  CHECK(t.letters.size() == 3);  // source, left-mover, right-mover
  CHECK(generated_z_words(a, 4).size() == 1);
}

TEST_CASE("dichotomy holds for sampled automata") {
  Five five;
  CHECK(dichotomy_check(tilde_sft(five.swap_z, 5), 3).pass);
  CHECK(dichotomy_check(tilde_sft(five.nmc225, 5), 3).pass);
  CHECK(dichotomy_check(tilde_sft(five.z3, 2), 1).pass);
}

TEST_CASE("a planted two-left letter fails the dichotomy") {
  TildeSft t = tilde_sft(period_swap(), 4);
  // splice a letter with two Lefts into the alphabet and allow it alone
  TrackedLetter bad{0, {Dir::Left, Dir::Left}};
  t.letters.push_back(bad);
  std::vector<std::string> names = t.sft.alphabet;
  names.push_back(tracked_letter_name(t.automaton, bad));
  int b = static_cast<int>(names.size()) - 1;
  std::set<std::vector<int>> allowed = t.sft.allowed;
  allowed.insert({b, b, b});
  t.sft = make_sft(t.sft.group, names, t.sft.window, allowed);
  DichotomyReport rep = dichotomy_check(t, 2);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.witness.has_value());
}

TEST_CASE("case2 automaton on a single cycle rotates it") {
  ZGraph cyc;
  cyc.names = {"x", "y", "z"};
  cyc.edges = {{0, 1}, {1, 2}, {2, 0}};
  NmcAutomaton na = case2_nmc_automaton(cyc);
  CHECK(na.level == 1);
  CHECK(na.automaton.rule[0] == std::vector<int>{1, 2, 0});
  CHECK(na.automaton.rule[1] == std::vector<int>{2, 0, 1});
  auto words = generated_z_words(na.automaton, 3);
  CHECK(words == z_vertex_words(cyc, 3));
}

TEST_CASE("case2 automaton on the three-letter example graph") {
  NmcAutomaton na = case2_nmc_automaton(example225_graph());
  CHECK(na.level == 1);
  // vertices -1,0,1 at indices 0,1,2; cycle successors: -1 -> -1, 0 -> 0,
  // and the off-cycle vertex 1 takes its only successor 0
  CHECK(na.automaton.rule[0] == std::vector<int>{0, 1, 1});
  CHECK(na.automaton.rule[1] == std::vector<int>{0, 1, 0});
  for (int len = 1; len <= 8; ++len)
    CHECK(generated_z_words(na.automaton, len) == z_vertex_words(example225_graph(), len));
}

TEST_CASE("case2 language matches on two fixed points") {
  ZGraph two;
  two.names = {"0", "1"};
  two.edges = {{0, 0}, {1, 1}};
  NmcAutomaton na = case2_nmc_automaton(two);
  for (int len = 1; len <= 8; ++len)
    CHECK(generated_z_words(na.automaton, len) == z_vertex_words(two, len));
}

TEST_CASE("middle cycles at every level are rejected") {
  ZGraph full;  // full shift graph: the 0-loop has external in and out
  full.names = {"0", "1"};
  full.edges = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  CHECK_THROWS_AS(case2_nmc_automaton(full, 3), not_applicable);
}

TEST_CASE("product automaton over the free product of two lines") {
  Five five;
  CHECK(five.f2.group.factors().size() == 2);
  CHECK(five.f2.colors == std::vector<std::string>{"(a,a)", "(b,b)"});
  auto violation = check_local_rules(five.f2, run(five.f2, identity_element(), 0, 4));
  CHECK_FALSE(violation.has_value());
}

TEST_CASE("mixed product runs stay inside the restricted free product") {
  Group gz2({FactorSpec::cyclic(2)});
  Group gz3({FactorSpec::cyclic(3)});
  ColoringAutomaton az2 = case1_automaton(gz2, full_configs(gz2, 2));
  ColoringAutomaton az3 = case1_automaton(gz3, full_configs(gz3, 2));
  AlphabetMap phi = eval_at_identity(az2, full_configs(gz2, 2));
  AlphabetMap psi = eval_at_identity(az3, full_configs(gz3, 2));
  ColoringAutomaton prod = product_automaton(az2, phi, az3, psi);
  CHECK(prod.colors.size() == 16);

  // color-level sfts of the two factors: window = whole group, allowed =
  // the generated configurations
  auto color_sft = [](const ColoringAutomaton& a) {
    Support whole = ball(a.group, 1);
    std::set<std::vector<int>> allowed;
    for (const Pattern& p : generated_configs_finite(a)) allowed.insert(p.letters);
    return make_sft(a.group, a.colors, whole, allowed);
  };
  Sft rfp = restricted_free_product(color_sft(az2), color_sft(az3), phi.map, psi.map);
  // the product colors are exactly the rfp letters, in the same order
  REQUIRE(rfp.alphabet == prod.colors);
  TrackedConfig cfg = run(prod, identity_element(), 7, 2);
  std::vector<int> letters;
  for (const GroupElement& h : cfg.support) letters.push_back(cfg.at(h).color);
  Pattern base = make_pattern(cfg.support, letters, static_cast<int>(rfp.alphabet.size()));
  CHECK(locally_admissible(rfp, base));
}

TEST_CASE("product automaton rejects bad maps") {
  ColoringAutomaton a = period_swap();
  AlphabetMap not_onto = make_alphabet_map(a.colors, {"0", "1"}, {0, 0});
  CHECK_FALSE(not_onto.surjective);
  CHECK_THROWS_AS(product_automaton(a, not_onto, a, not_onto), input_error);
  // disjoint images force an empty restricted alphabet
  AlphabetMap lo = make_alphabet_map(a.colors, {"0", "1", "2", "3"}, {0, 1});
  AlphabetMap hi = make_alphabet_map(a.colors, {"0", "1", "2", "3"}, {2, 3});
  CHECK_THROWS_AS(product_automaton(a, lo, a, hi), input_error);
}

TEST_CASE("tilde patterns from the sft equal those from runs") {
  Five five;
  struct Case {
    const ColoringAutomaton* a;
    int sample, radius, margin, run_radius;
  };
  std::vector<Case> cases = {
      {&five.swap_z, 6, 2, 2, 8},
      {&five.nmc225, 6, 2, 2, 8},
      {&five.f2, 4, 1, 2, 5},
  };
  for (const Case& c : cases) {
    TildeSft t = tilde_sft(*c.a, c.sample);
    auto sft_route = oracles::pattern_tuples(global_patterns(t.sft, c.radius, c.margin).patterns);
    auto run_route = run_ball_patterns(t, c.radius, c.run_radius);
    CHECK(sft_route == run_route);
    // projections agree as well
    CHECK(project_to_colors(t, sft_route) == project_to_colors(t, run_route));
  }
}

TEST_CASE("allowed window patterns are reachable from the seeds") {
  Five five;
  for (const ColoringAutomaton* ap : {&five.swap_z, &five.nmc225}) {
    TildeSft t = tilde_sft(*ap, 6);
    const Group& g = t.sft.group;
    std::vector<std::vector<int>> tuples(t.sft.allowed.begin(), t.sft.allowed.end());
    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < tuples.size(); ++i) id[tuples[i]] = static_cast<int>(i);
    // seeds: window tuples whose center is an all-Right letter
    int id_slot = -1;
    for (size_t i = 0; i < t.sft.window.size(); ++i)
      if (t.sft.window[i].is_identity()) id_slot = static_cast<int>(i);
    std::vector<int> queue;
    std::vector<char> seen(tuples.size(), 0);
    for (size_t i = 0; i < tuples.size(); ++i) {
      const TrackedLetter& center =
          t.letters[static_cast<size_t>(tuples[i][static_cast<size_t>(id_slot)])];
      bool all_right = true;
      for (Dir d : center.dirs) all_right &= (d == Dir::Right);
      if (all_right) {
        queue.push_back(static_cast<int>(i));
        seen[i] = 1;
      }
    }
    REQUIRE(!queue.empty());
    // overlap edges: neighbor tuples agreeing across one generator step
    std::vector<int> slot_of_gen(static_cast<size_t>(g.generator_count()));
    for (size_t i = 0; i < t.sft.window.size(); ++i) {
      int gi = g.generator_index(t.sft.window[i]);
      if (gi >= 0) slot_of_gen[static_cast<size_t>(gi)] = static_cast<int>(i);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const std::vector<int>& cur = tuples[static_cast<size_t>(queue[qi])];
      for (int gi = 0; gi < g.generator_count(); ++gi) {
        int inv = g.inverse_generator(gi);
        for (size_t j = 0; j < tuples.size(); ++j) {
          if (seen[j]) continue;
          const std::vector<int>& nxt = tuples[j];
          if (cur[static_cast<size_t>(slot_of_gen[static_cast<size_t>(gi)])] ==
                  nxt[static_cast<size_t>(id_slot)] &&
              nxt[static_cast<size_t>(slot_of_gen[static_cast<size_t>(inv)])] ==
                  cur[static_cast<size_t>(id_slot)]) {
            seen[j] = 1;
            queue.push_back(static_cast<int>(j));
          }
        }
      }
    }
    for (size_t i = 0; i < tuples.size(); ++i) CHECK(seen[i] == 1);
  }
}

TEST_CASE("case-1 generation equals the seeded configuration set") {
  Group g({FactorSpec::cyclic(3)});
  // full shift and a proper invariant subset
  std::vector<Pattern> full = full_configs(g, 2);
  ColoringAutomaton a = case1_automaton(g, full);
  std::set<Pattern> want;
  Support whole = ball(g, 1);
  std::map<Pattern, int> cidx;
  for (size_t i = 0; i < full.size(); ++i) cidx[full[i]] = static_cast<int>(i);
  for (const Pattern& b : full) {
    // configuration h -> color index of h^{-1} b
    std::vector<int> conf;
    for (const GroupElement& h : whole) conf.push_back(cidx.at(translate(g, g.inverse(h), b)));
    want.insert(make_pattern(whole, conf, 8));
  }
  // generated configs use color indices; colors are in full-config order
  std::set<Pattern> got = generated_configs_finite(a);
  CHECK(got.size() == want.size());
  CHECK(got == want);
}

TEST_CASE("run patterns are locally admissible for the sampled sft") {
  Five five;
  struct Case {
    const ColoringAutomaton* a;
    int sample;
  };
  for (const Case& c : std::vector<Case>{{&five.swap_z, 5}, {&five.nmc225, 5}, {&five.f2, 4}}) {
    TildeSft t = tilde_sft(*c.a, c.sample);
    std::map<TrackedLetter, int> index;
    for (size_t i = 0; i < t.letters.size(); ++i) index[t.letters[i]] = static_cast<int>(i);
    for (int col = 0; col < static_cast<int>(c.a->colors.size()); ++col) {
      TrackedConfig cfg = run(*c.a, identity_element(), col, c.sample + 2);
      std::vector<int> letters;
      bool known = true;
      for (const TrackedLetter& l : cfg.letters) {
        auto it = index.find(l);
        if (it == index.end()) known = false;
        letters.push_back(known ? it->second : 0);
      }
      REQUIRE(known);
      Pattern p =
          make_pattern(cfg.support, letters, static_cast<int>(t.sft.alphabet.size()));
      CHECK(locally_admissible(t.sft, p));
    }
  }
}
