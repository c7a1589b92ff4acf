#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/rauzy.hpp"

namespace sds {

// All simple cycles as vertex lists (rotated to start at their least
// vertex). The budget counts DFS path extensions.
std::vector<std::vector<int>> simple_cycles(const ZGraph& g, long long budget = 1'000'000);
std::set<std::pair<int, int>> simple_cycle_edges(const ZGraph& g, long long budget = 1'000'000);
// No vertex has both more than one incoming and more than one outgoing edge.
bool degree_condition_ok(const ZGraph& g);

struct NmcReport {
  bool nmc = false;
  std::optional<std::vector<int>> witness_cycle;  // a cycle with external in and out
};

// No simple cycle has both an entering edge from outside and a leaving edge
// to outside.
NmcReport nmc_check(const ZGraph& g, int vertex_cap = 12, long long cycle_budget = 1'000'000);

struct IsolationWitness {
  int window_len = 0;
  std::vector<int> removed_word;                  // letters
  std::vector<std::vector<int>> allowed_words;     // the witness sub-sft's words
  int difference_length = 0;
  std::vector<int> missing_word;                  // in X but not in the witness
};

struct IsolationVerdict {
  enum class Status { IsolatedCertified, NotIsolated, Unknown };
  Status status = Status::Unknown;
  std::optional<int> nmc_level;
  std::optional<IsolationWitness> witness;
  std::string bounds;
};

// Decision at finite scale for single-Z SFTs. Certifies isolation through the
// no-middle-cycles property (after higher-block recoding up to the cap);
// refutes it through a complete search over single-word-removal sub-SFTs at
// windows up to search_window (any proper sub-subshift with matching
// patterns is contained in one of those). F is the interval [0, f_len).
IsolationVerdict isolated_check(const Sft& x, int f_len, int search_window, int distinguish_len,
                                int nmc_level_cap = 6);

struct MinimalVerdict {
  enum class Status { Minimal, NotMinimal, Unknown };
  Status status = Status::Unknown;
  std::optional<IsolationWitness> witness;
  std::string note;
};

// Plain minimality over Z (no cylinder list): the essential one-step graph is
// a single simple cycle. With a cylinder list: searches proper sub-SFTs
// hitting every cylinder; certifies a positive answer when the cylinders are
// exactly the patterns of an interval window covered by an NMC certificate.
MinimalVerdict minimal_check(const Sft& x, const std::optional<std::vector<Pattern>>& cylinders,
                             int search_window, int nmc_level_cap = 6);

// Exact length-n letter words of a single-Z SFT's one-step recode.
std::set<std::vector<int>> exact_z_words(const Sft& x, int len);

}  // namespace sds
