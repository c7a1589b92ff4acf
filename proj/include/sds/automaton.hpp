#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/analysis.hpp"
#include "sds/sofic.hpp"

namespace sds {

// Coloring rule on the canonical symmetric generating set: rule[s][a] is the
// color written one step in direction s from a cell colored a.
struct ColoringAutomaton {
  Group group;
  std::vector<std::string> colors;
  std::vector<std::vector<int>> rule;  // [generator index][color]
};

ColoringAutomaton make_automaton(Group group, std::vector<std::string> colors,
                                 std::vector<std::vector<int>> rule);

enum class Dir : unsigned char { Right, Left, None };

// Tracking letter: the color plus one direction marker per generator. The
// marker is Left toward the cell the sweep came from, None across the rest
// of the finite-factor coset entered, Right elsewhere.
struct TrackedLetter {
  int color = 0;
  std::vector<Dir> dirs;
  auto operator<=>(const TrackedLetter&) const = default;
};

std::string tracked_letter_name(const ColoringAutomaton& a, const TrackedLetter& l);

// One run of the automaton: colors and tracking on a ball around the start.
struct TrackedConfig {
  GroupElement start;
  int color = 0;
  int radius = 0;
  Support support;
  std::vector<TrackedLetter> letters;  // aligned with support

  const TrackedLetter& at(const GroupElement& g) const;
};

TrackedConfig run(const ColoringAutomaton& a, const GroupElement& start, int color, int radius);

// Pointwise re-derivation of the sweep rules from normal forms; nullopt when
// every position checks out, otherwise a description of the first violation.
std::optional<std::string> check_local_rules(const ColoringAutomaton& a, const TrackedConfig& c);

// SFT on the tracking alphabet with window {1} u S; the allowed set is
// sampled from runs.
struct TildeSft {
  ColoringAutomaton automaton;
  Sft sft;
  std::vector<TrackedLetter> letters;  // aligned with sft.alphabet
  int sample_radius = 0;
  std::optional<int> stabilized_at;
};

TildeSft tilde_sft(const ColoringAutomaton& a, int sample_radius);

struct DichotomyReport {
  bool pass = false;
  long long checked = 0;
  std::optional<Pattern> witness;
};

// Every globally admissible ball pattern either contains an all-Right cell or
// consists of cells with exactly one Left marker.
DichotomyReport dichotomy_check(const TildeSft& t, int radius, int margin = 2);

// Ball patterns of the tracking subshift collected directly from runs
// (tuples aligned with the sorted ball support).
std::set<std::vector<int>> run_ball_patterns(const TildeSft& t, int radius, int run_radius);
// The same patterns through the color projection.
std::set<std::vector<int>> project_to_colors(const TildeSft& t,
                                             const std::set<std::vector<int>>& patterns);

// Finite-group automaton whose colors are whole configurations and whose rule
// shifts them; generates exactly the given configuration set.
ColoringAutomaton case1_automaton(const Group& g, const std::vector<Pattern>& configs);
// Configurations generated over a finite group, as color patterns on the
// whole group.
std::set<Pattern> generated_configs_finite(const ColoringAutomaton& a);

struct NmcAutomaton {
  ColoringAutomaton automaton;
  int level = 1;                  // higher-block level used
  std::vector<int> first_vertex;  // color -> vertex of the input graph
  ZGraph graph;                   // the recoded graph the colors live on
};

// Deterministic cycle-following automaton for a graph with the no-middle-
// cycles property, recoding to higher blocks until both it and the degree
// condition hold.
NmcAutomaton case2_nmc_automaton(const ZGraph& g, int level_cap = 6);

// Language of the subshift generated over Z, as words over the color indices.
std::set<std::vector<int>> generated_z_words(const ColoringAutomaton& a, int len);

// Product automaton over G * H on the restricted pair alphabet; the loose
// companion coordinate is the least letter satisfying the pairing.
ColoringAutomaton product_automaton(const ColoringAutomaton& ax, const AlphabetMap& phi,
                                    const ColoringAutomaton& ay, const AlphabetMap& psi);

}  // namespace sds
