#pragma once

#include <set>
#include <string>
#include <vector>

#include "sds/pattern.hpp"

namespace sds {

// Subshift of finite type: alphabet, defining window, and the set of allowed
// window patterns (stored as letter tuples aligned with the window order).
// The forbidden set is the complement within alphabet^window.
struct Sft {
  Group group;
  std::vector<std::string> alphabet;
  Support window;
  std::set<std::vector<int>> allowed;

  int letter_index(const std::string& name) const;  // -1 when absent
};

Sft make_sft(Group group, std::vector<std::string> alphabet, Support window,
             std::set<std::vector<int>> allowed);

// True iff every translate of the window inside p's support restricts to an
// allowed pattern.
bool locally_admissible(const Sft& x, const Pattern& p);

struct GlobalPatterns {
  std::vector<Pattern> patterns;  // sorted
  bool stabilized = false;        // last two margins produced equal sets
};

// All patterns on `target` that extend to a locally admissible pattern on
// target extended by a margin-ball around every element. Exact over Z in
// one-step form once margin >= vertex count (any longer path pumps through a
// repeated vertex); for other groups it is an upper approximation that
// shrinks as the margin grows.
std::vector<Pattern> admissible_on(const Sft& x, const Support& target, int margin,
                                   long long node_budget = 200'000'000);
GlobalPatterns global_patterns(const Sft& x, int radius, int margin,
                               long long node_budget = 200'000'000);

// Words of X on the interval [0, len) for single-Z SFTs with an interval-hull
// window; exact (uses a pumping margin of |window words|).
std::set<std::vector<int>> z_language(const Sft& x, int len);

// Free product over G * H; forbidden sets are pooled, i.e. the allowed set on
// the union window is the conjunction of both windows' constraints.
Sft free_product(const Sft& x, const Sft& y);

// Restricted free product: alphabet {(b,c) : phi0[b] == psi0[c]}, constraints
// pulled back through the coordinate projections. phi0/psi0 map the letters
// of x resp. y into a common target alphabet.
Sft restricted_free_product(const Sft& x, const Sft& y, const std::vector<int>& phi0,
                            const std::vector<int>& psi0);

// Pair decomposition of a restricted-free-product letter name "(b,c)".
std::pair<std::string, std::string> rfp_letter_components(const std::string& name);

}  // namespace sds
