#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sds/rauzy.hpp"

namespace sds {

// Total map between two alphabets; surjectivity is tracked because some
// constructions require it.
struct AlphabetMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<int> map;  // source index -> target index
  bool surjective = false;
};

AlphabetMap make_alphabet_map(std::vector<std::string> source, std::vector<std::string> target,
                              std::vector<int> map);
AlphabetMap identity_map(const std::vector<std::string>& alphabet);
AlphabetMap compose(const AlphabetMap& outer, const AlphabetMap& inner);  // outer . inner

// Sliding-block code: a local rule on a finite window.
struct SlidingBlockCode {
  std::vector<std::string> source_alphabet;
  std::vector<std::string> target_alphabet;
  Support window;
  std::map<std::vector<int>, int> rule;  // window tuple -> target letter
};

SlidingBlockCode one_block_code(const AlphabetMap& m);
// Composite code: apply `inner` first, then `outer`; windows multiply.
SlidingBlockCode compose_codes(const Group& g, const SlidingBlockCode& outer,
                               const SlidingBlockCode& inner);

// Output support = {g : g*window inside p's support}; empty output is a
// degenerate value, not an error.
Pattern apply_code(const Group& g, const SlidingBlockCode& c, const Pattern& p);

// Edge-labeled graph over Z presenting a sofic shift.
struct SoficPresentation {
  std::vector<std::string> labels;
  int vertex_count = 0;
  std::set<std::array<int, 3>> edges;  // (source, target, label)

  bool operator==(const SoficPresentation&) const = default;
  bool empty() const { return vertex_count == 0; }
};

SoficPresentation make_presentation(std::vector<std::string> labels, int vertex_count,
                                    std::set<std::array<int, 3>> edges);

// Image of a one-step vertex shift under a letter map: edge (u,v) carries the
// image of u.
SoficPresentation image_sofic(const ZGraph& x, const AlphabetMap& m);

// Right-resolving, follower-separated, essential canonical presentation.
// Equal canonical forms iff equal sofic shifts; deterministic vertex order.
SoficPresentation canonical_form(const SoficPresentation& s);

bool sofic_equal(const SoficPresentation& a, const SoficPresentation& b);

// Label words readable along paths of the essential part, exact length.
std::set<std::vector<int>> presentation_language(const SoficPresentation& s, int len);

std::string presentation_str(const SoficPresentation& s);

}  // namespace sds
