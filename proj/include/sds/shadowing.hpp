#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/sofic.hpp"

namespace sds {

// Pseudo-orbit of a one-step vertex shift over Z, in clopen-partition form:
// a sequence of fine-level blocks (length kprime words over the vertex set)
// whose consecutive entries overlap on kprime-1 symbols.
struct PseudoOrbit {
  ZGraph graph;   // essential one-step graph
  int k = 1;      // coarse level to trace at
  int kprime = 2; // fine block length, k < kprime
  std::vector<std::vector<int>> blocks;
};

PseudoOrbit make_pseudo_orbit(ZGraph graph, int k, int kprime,
                              std::vector<std::vector<int>> blocks);

struct TraceResult {
  bool traced = false;
  int refusal_index = -1;        // first violated transition when !traced
  std::vector<int> word;         // the traced word of length blocks + kprime - 1
};

// Glue the blocks along their overlaps when the transition condition holds;
// the result is locally admissible and extends bi-infinitely through the
// essential graph. The i-th coarse block of the trace is w_i's prefix.
TraceResult validate_and_trace(const PseudoOrbit& p);

struct MlLevel {
  Sft sft;                         // level subshift over Z
  std::optional<AlphabetMap> bond; // letters of this level -> previous level
};

struct InverseSystem {
  std::vector<MlLevel> levels;  // level 1 first; levels[0].bond is ignored
};

void validate_system(const InverseSystem& sys);

struct MlReport {
  std::optional<int> stabilized_at;             // least level, 1-based
  std::vector<SoficPresentation> images;        // canonical image per level
};

// Images of the deeper levels inside level n0 as canonical sofic
// presentations; reports the least n with image(m) = image(n) for every m up
// to n0 + depth, if any.
MlReport ml_check(const InverseSystem& sys, int n0, int depth);

struct ShadowingReport {
  long long orbit_count = 0;
  long long traced = 0;
  std::optional<PseudoOrbit> first_failure;
};

// Enumerates every pseudo-orbit at fine level k+1 with up to max_len blocks
// and traces each at level k.
ShadowingReport sft_shadowing_suite(const ZGraph& g, int k, int max_len,
                                    long long budget = 10'000'000);

}  // namespace sds
