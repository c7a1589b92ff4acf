#include "sds/shadowing.hpp"

#include <algorithm>
#include <functional>

#include "sds/analysis.hpp"

namespace sds {

PseudoOrbit make_pseudo_orbit(ZGraph graph, int k, int kprime,
                              std::vector<std::vector<int>> blocks) {
  if (!is_essential_z(graph) || graph.empty())
    throw input_error("pseudo-orbit needs a nonempty essential graph");
  if (k < 1 || kprime <= k) throw input_error("pseudo-orbit needs 1 <= k < kprime");
  if (blocks.empty()) throw input_error("pseudo-orbit needs at least one block");
  int n = static_cast<int>(graph.names.size());
  for (const auto& b : blocks) {
    if (static_cast<int>(b.size()) != kprime)
      throw input_error("pseudo-orbit block has the wrong length");
    for (int v : b)
      if (v < 0 || v >= n) throw input_error("pseudo-orbit block vertex out of range");
    for (size_t i = 0; i + 1 < b.size(); ++i)
      if (!graph.edges.count({b[i], b[i + 1]}))
        throw input_error("pseudo-orbit block is not locally admissible");
  }
  return PseudoOrbit{std::move(graph), k, kprime, std::move(blocks)};
}

TraceResult validate_and_trace(const PseudoOrbit& p) {
  TraceResult out;
  for (size_t i = 0; i + 1 < p.blocks.size(); ++i) {
    for (int j = 1; j < p.kprime; ++j)
      if (p.blocks[i][static_cast<size_t>(j)] != p.blocks[i + 1][static_cast<size_t>(j - 1)]) {
        out.traced = false;
        out.refusal_index = static_cast<int>(i);
        return out;
      }
  }
  // glue: position i+j carries blocks[i][j]; overlaps agree by the above
  out.traced = true;
  out.word = p.blocks[0];
  for (size_t i = 1; i < p.blocks.size(); ++i)
    out.word.push_back(p.blocks[i].back());
  // every adjacent pair sits inside one block, so the glued word is a path
  for (size_t i = 0; i + 1 < out.word.size(); ++i)
    if (!p.graph.edges.count({out.word[i], out.word[i + 1]}))
      throw input_error("glued trace left the graph");  // unreachable for one-step graphs
  return out;
}

void validate_system(const InverseSystem& sys) {
  if (sys.levels.empty()) throw input_error("inverse system needs at least one level");
  for (size_t i = 0; i < sys.levels.size(); ++i) {
    const MlLevel& lev = sys.levels[i];
    if (!lev.sft.group.single_z())
      throw input_error("inverse system levels must be single-Z sfts");
    if (i == 0) continue;
    if (!lev.bond) throw input_error("levels beyond the first need a bonding map");
    if (lev.bond->source != lev.sft.alphabet ||
        lev.bond->target != sys.levels[i - 1].sft.alphabet)
      throw input_error("bonding map alphabets do not match adjacent levels");
  }
}

MlReport ml_check(const InverseSystem& sys, int n0, int depth) {
  validate_system(sys);
  if (n0 < 1 || depth < 1) throw input_error("ml_check needs n0 >= 1 and depth >= 1");
  int last = n0 + depth;
  if (last > static_cast<int>(sys.levels.size()))
    throw input_error("ml_check needs levels up to n0 + depth");

  MlReport out;
  for (int n = n0; n <= last; ++n) {
    const Sft& x = sys.levels[static_cast<size_t>(n - 1)].sft;
    ZRecode zr = z_first_step(x);
    if (zr.graph.empty()) throw input_error("inverse system level is empty");
    // letter map of the recode, then bonds down to level n0
    AlphabetMap code = make_alphabet_map(zr.graph.names, x.alphabet, zr.letter_map);
    for (int m = n; m > n0; --m)
      code = compose(*sys.levels[static_cast<size_t>(m - 1)].bond, code);
    out.images.push_back(canonical_form(image_sofic(zr.graph, code)));
  }
  for (int n = n0; n <= last; ++n) {
    bool stable = true;
    for (int m = n; m <= last && stable; ++m)
      if (!(out.images[static_cast<size_t>(m - n0)] == out.images[static_cast<size_t>(n - n0)]))
        stable = false;
    if (stable) {
      out.stabilized_at = n;
      break;
    }
  }
  if (out.stabilized_at == last) out.stabilized_at.reset();  // a single point proves nothing
  return out;
}

ShadowingReport sft_shadowing_suite(const ZGraph& g, int k, int max_len, long long budget) {
  if (!is_essential_z(g) || g.empty())
    throw input_error("shadowing suite needs a nonempty essential graph");
  if (k < 1 || max_len < 1) throw input_error("shadowing suite needs k >= 1 and max_len >= 1");
  int kprime = k + 1;
  // fine blocks are kprime-words; chains with (kprime-1)-overlaps
  std::vector<std::vector<int>> blocks;
  for (const auto& w : z_vertex_words(g, kprime)) blocks.push_back(w);
  std::vector<std::vector<int>> next(blocks.size());
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = 0; j < blocks.size(); ++j) {
      bool ok = true;
      for (int t = 1; t < kprime; ++t)
        if (blocks[i][static_cast<size_t>(t)] != blocks[j][static_cast<size_t>(t - 1)]) {
          ok = false;
          break;
        }
      if (ok) next[i].push_back(static_cast<int>(j));
    }

  ShadowingReport rep;
  long long spent = 0;
  std::vector<int> chain;
  std::function<void()> visit = [&]() {
    if (++spent > budget) throw budget_error("pseudo-orbit enumeration budget exhausted");
    ++rep.orbit_count;
    std::vector<std::vector<int>> bl;
    for (int bi : chain) bl.push_back(blocks[static_cast<size_t>(bi)]);
    PseudoOrbit p = make_pseudo_orbit(g, k, kprime, bl);
    TraceResult tr = validate_and_trace(p);
    bool good = tr.traced;
    if (good) {
      // coarse blocks of the trace match the block prefixes exactly
      for (size_t i = 0; i < bl.size() && good; ++i)
        for (int j = 0; j < k && good; ++j)
          if (tr.word[i + static_cast<size_t>(j)] != bl[i][static_cast<size_t>(j)]) good = false;
    }
    if (good) {
      ++rep.traced;
    } else if (!rep.first_failure) {
      rep.first_failure = p;
    }
  };
  std::function<void(int)> rec = [&](int len) {
    visit();
    if (len >= max_len) return;
    int cur = chain.back();
    for (int j : next[static_cast<size_t>(cur)]) {
      chain.push_back(j);
      rec(len + 1);
      chain.pop_back();
    }
  };
  for (size_t i = 0; i < blocks.size(); ++i) {
    chain.assign(1, static_cast<int>(i));
    rec(0);
  }
  return rep;
}

}  // namespace sds
