#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sds/sft.hpp"

namespace sds {

// Per-generator edge form of an SFT: a vertex set with one edge relation for
// every generator in the canonical symmetric set S. Inverse generators carry
// the transposed relation.
struct RauzyGraph {
  Group group;
  std::vector<std::string> vertices;
  std::vector<std::set<std::pair<int, int>>> edges;  // indexed by generator

  bool empty() const { return vertices.empty(); }
};

RauzyGraph make_rauzy(Group group, std::vector<std::string> vertices,
                      std::vector<std::set<std::pair<int, int>>> edges);

// Greatest sub-structure in which every relation has no sources and no sinks
// and, for finite factors, every vertex and edge occurs in a full coset
// coloring. Idempotent; may be empty.
RauzyGraph essentialize(const RauzyGraph& r, int coset_order_cap = 6);

// The vertex SFT of a Rauzy graph (window {1} u S).
Sft rauzy_to_sft(const RauzyGraph& r);

// One-step graph over Z: vertex names plus the successor relation.
struct ZGraph {
  std::vector<std::string> names;
  std::set<std::pair<int, int>> edges;

  bool empty() const { return names.empty(); }
  std::vector<int> successors(int v) const;
  std::vector<int> predecessors(int v) const;
};

ZGraph essential_z(const ZGraph& g);
bool is_essential_z(const ZGraph& g);
RauzyGraph z_to_rauzy_graph(const ZGraph& g);
std::optional<ZGraph> rauzy_to_z(const RauzyGraph& r);  // single-Z graphs only
Sft zgraph_to_sft(const ZGraph& g);                     // window {0,1}

// All vertex words spelled by paths (exact on essential graphs).
std::set<std::vector<int>> z_vertex_words(const ZGraph& g, int len);
// Vertex words pushed through a letter map.
std::set<std::vector<int>> z_letter_words(const ZGraph& g, const std::vector<int>& letter_map,
                                          int len);

// Higher-block graph: vertices are paths of `level` vertices; `first_vertex`
// receives the level-1 vertex underlying each block.
ZGraph higher_block_z(const ZGraph& g, int level, std::vector<int>* first_vertex = nullptr);

// Exact one-step recode of a single-Z SFT: de Bruijn graph on hull words,
// essentialized. letter_map sends each vertex to its first letter.
struct ZRecode {
  ZGraph graph;
  std::vector<int> letter_map;        // vertex -> letter of the sft alphabet
  std::vector<std::string> alphabet;  // the sft's alphabet
  int block_len = 1;                  // vertices are words of this length
};
ZRecode z_first_step(const Sft& x);

struct ToRauzy {
  RauzyGraph graph;
  std::vector<int> letter_map;  // vertex -> letter of the original alphabet
  int margin_used = 0;
};

// Recode an SFT to Rauzy form. Exact over Z (pumping argument); for other
// free products the vertices/edges are computed at the given margin. Rejects
// windows that generate a proper subgroup.
ToRauzy to_rauzy(const Sft& x, int margin = 2);

}  // namespace sds
