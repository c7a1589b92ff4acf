#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/group.hpp"

namespace sds {

// Finite partial configuration: a letter at every element of a finite
// support. Letters are indices into some alphabet; the alphabet size is kept
// for range/compatibility checks.
struct Pattern {
  Support support;            // sorted
  std::vector<int> letters;   // aligned with support
  int alphabet_size = 0;

  bool empty() const { return support.empty(); }
  std::optional<int> find(const GroupElement& g) const;
  int at(const GroupElement& g) const;  // input_error when absent
  auto operator<=>(const Pattern&) const = default;
};

Pattern make_pattern(Support support, std::vector<int> letters, int alphabet_size);

// Shift action on patterns: support becomes g*F and (g.p)(g.f) = p(f).
Pattern translate(const Group& grp, const GroupElement& g, const Pattern& p);

// Restriction to a sub-support; every element must be present.
Pattern restrict_to(const Pattern& p, const Support& s);

bool support_subset(const Support& small, const Support& big);

std::string pattern_str(const Pattern& p, const std::vector<std::string>& alphabet);

}  // namespace sds
