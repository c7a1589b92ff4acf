#pragma once

#include <compare>
#include <string>
#include <vector>

#include "sds/errors.hpp"

namespace sds {

// One factor of a free product: either Z or a finite group given by its
// multiplication table (row-major, identity is index 0).
struct FactorSpec {
  enum class Kind { InfiniteCyclic, Finite };

  Kind kind = Kind::InfiniteCyclic;
  int order = 0;            // finite factors only
  std::vector<int> table;   // finite factors only, order*order entries

  static FactorSpec infinite_cyclic();
  static FactorSpec cyclic(int n);
  // Validates the group axioms (identity 0, associativity, Latin square).
  static FactorSpec finite_table(int n, std::vector<int> table);

  bool finite() const { return kind == Kind::Finite; }
  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const;
};

// Normal-form syllable: for cyclic factors `value` is a nonzero exponent,
// for finite factors a nonzero table index.
struct Syllable {
  int factor = 0;
  int value = 0;
  auto operator<=>(const Syllable&) const = default;
};

// Reduced word in the free product. The empty syllable list is the identity.
// Normal form is unique, so the derived ordering is a total order on the
// group and equality of values is equality of elements.
struct GroupElement {
  std::vector<Syllable> syllables;
  bool is_identity() const { return syllables.empty(); }
  auto operator<=>(const GroupElement&) const = default;
};

using Support = std::vector<GroupElement>;  // sorted, duplicate-free

class Group {
 public:
  Group() = default;
  explicit Group(std::vector<FactorSpec> factors);

  const std::vector<FactorSpec>& factors() const { return factors_; }
  // Canonical symmetric generating set: for every infinite-cyclic factor the
  // generator and its inverse, for every finite factor all non-identity
  // elements. Order: factors ascending; +1 then -1 for cyclic, table index
  // ascending for finite.
  const std::vector<GroupElement>& generators() const { return generators_; }
  int generator_count() const { return static_cast<int>(generators_.size()); }
  int generator_index(const GroupElement& s) const;  // -1 when s not in S
  int inverse_generator(int gi) const;               // index of s^{-1}

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement generator(int gi) const { return generators_[gi]; }
  int word_length(const GroupElement& a) const;

  bool single_z() const;
  bool operator==(const Group& other) const;

 private:
  std::vector<FactorSpec> factors_;
  std::vector<GroupElement> generators_;
};

GroupElement identity_element();
// All elements of word length <= radius, sorted canonically.
Support ball(const Group& g, int radius);
bool support_contains(const Support& s, const GroupElement& g);
Support sorted_support(std::vector<GroupElement> elems);  // sorts, dedups
Support translate_support(const Group& g, const GroupElement& t, const Support& s);

// Element text form: syllables "factor:value" joined by '.', identity "e".
// For groups with a single factor a bare value is accepted as shorthand.
std::string element_str(const GroupElement& e);
GroupElement parse_element(const Group& g, const std::string& text);

// One factor per line: "Z" | "cyclic N" | "table N <N*N indices>".
Group parse_group(const std::vector<std::string>& factor_lines);
std::vector<std::string> group_factor_lines(const Group& g);

// Free product G * H: factors concatenated; returns the reindexing offset of
// H's factors through `h_offset` when given.
Group free_product_group(const Group& g, const Group& h, int* h_offset = nullptr);
// Reindex an element of H into G * H.
GroupElement embed_element(const GroupElement& e, int factor_offset);

}  // namespace sds
