#include "sds/sofic.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace sds {

AlphabetMap make_alphabet_map(std::vector<std::string> source, std::vector<std::string> target,
                              std::vector<int> map) {
  if (map.size() != source.size()) throw input_error("alphabet map must be total on the source");
  std::vector<char> hit(target.size(), 0);
  for (int t : map) {
    if (t < 0 || t >= static_cast<int>(target.size()))
      throw input_error("alphabet map target out of range");
    hit[static_cast<size_t>(t)] = 1;
  }
  AlphabetMap m{std::move(source), std::move(target), std::move(map), true};
  for (char h : hit)
    if (!h) m.surjective = false;
  return m;
}

AlphabetMap identity_map(const std::vector<std::string>& alphabet) {
  std::vector<int> id(alphabet.size());
  for (size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  return make_alphabet_map(alphabet, alphabet, id);
}

AlphabetMap compose(const AlphabetMap& outer, const AlphabetMap& inner) {
  if (inner.target != outer.source)
    throw input_error("alphabet maps do not chain: inner target != outer source");
  std::vector<int> m(inner.map.size());
  for (size_t i = 0; i < m.size(); ++i)
    m[i] = outer.map[static_cast<size_t>(inner.map[i])];
  return make_alphabet_map(inner.source, outer.target, std::move(m));
}

SlidingBlockCode one_block_code(const AlphabetMap& m) {
  SlidingBlockCode c;
  c.source_alphabet = m.source;
  c.target_alphabet = m.target;
  c.window = {identity_element()};
  for (size_t a = 0; a < m.source.size(); ++a)
    c.rule[{static_cast<int>(a)}] = m.map[a];
  return c;
}

SlidingBlockCode compose_codes(const Group& g, const SlidingBlockCode& outer,
                               const SlidingBlockCode& inner) {
  if (inner.target_alphabet != outer.source_alphabet)
    throw input_error("codes do not chain: inner target != outer source");
  SlidingBlockCode c;
  c.source_alphabet = inner.source_alphabet;
  c.target_alphabet = outer.target_alphabet;
  std::vector<GroupElement> w;
  for (const GroupElement& u : outer.window)
    for (const GroupElement& v : inner.window) w.push_back(g.multiply(u, v));
  c.window = sorted_support(std::move(w));
  int n = static_cast<int>(inner.source_alphabet.size());
  std::vector<int> tuple(c.window.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == c.window.size()) {
      std::vector<int> outer_tuple;
      for (const GroupElement& u : outer.window) {
        std::vector<int> inner_tuple;
        for (const GroupElement& v : inner.window) {
          GroupElement uv = g.multiply(u, v);
          auto it = std::lower_bound(c.window.begin(), c.window.end(), uv);
          inner_tuple.push_back(tuple[static_cast<size_t>(it - c.window.begin())]);
        }
        auto iv = inner.rule.find(inner_tuple);
        if (iv == inner.rule.end()) return;  // undefined on this tuple
        outer_tuple.push_back(iv->second);
      }
      auto ov = outer.rule.find(outer_tuple);
      if (ov != outer.rule.end()) c.rule[tuple] = ov->second;
      return;
    }
    for (int a = 0; a < n; ++a) {
      tuple[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
  return c;
}

Pattern apply_code(const Group& g, const SlidingBlockCode& c, const Pattern& p) {
  if (p.alphabet_size != static_cast<int>(c.source_alphabet.size()))
    throw input_error("pattern alphabet does not match the code source");
  std::set<GroupElement> cands;
  for (const GroupElement& h : p.support)
    for (const GroupElement& w : c.window) cands.insert(g.multiply(h, g.inverse(w)));
  Pattern out;
  out.alphabet_size = static_cast<int>(c.target_alphabet.size());
  for (const GroupElement& pos : cands) {
    std::vector<int> tuple;
    bool inside = true;
    for (const GroupElement& w : c.window) {
      auto v = p.find(g.multiply(pos, w));
      if (!v) {
        inside = false;
        break;
      }
      tuple.push_back(*v);
    }
    if (!inside) continue;
    auto it = c.rule.find(tuple);
    if (it == c.rule.end()) throw input_error("local rule undefined on an input pattern");
    out.support.push_back(pos);
    out.letters.push_back(it->second);
  }
  return out;  // cands iterates sorted, so the support is canonical
}

SoficPresentation make_presentation(std::vector<std::string> labels, int vertex_count,
                                    std::set<std::array<int, 3>> edges) {
  for (const auto& [u, v, l] : edges) {
    if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
      throw input_error("presentation edge endpoint out of range");
    if (l < 0 || l >= static_cast<int>(labels.size()))
      throw input_error("presentation edge label out of range");
  }
  return SoficPresentation{std::move(labels), vertex_count, std::move(edges)};
}

SoficPresentation image_sofic(const ZGraph& x, const AlphabetMap& m) {
  if (!is_essential_z(x)) throw input_error("image_sofic needs an essential one-step graph");
  if (m.source.size() != x.names.size())
    throw input_error("alphabet map source does not match the vertex set");
  std::set<std::array<int, 3>> edges;
  for (auto [u, v] : x.edges) edges.insert({u, v, m.map[static_cast<size_t>(u)]});
  return make_presentation(m.target, static_cast<int>(x.names.size()), std::move(edges));
}

namespace {

// Label-blind source/sink removal; keeps relative vertex order.
SoficPresentation essential_presentation(const SoficPresentation& s) {
  int n = s.vertex_count;
  std::vector<char> alive(static_cast<size_t>(n), 1);
  auto edges = s.edges;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> has_in(static_cast<size_t>(n), 0), has_out(static_cast<size_t>(n), 0);
    for (const auto& [u, v, l] : edges) {
      has_out[static_cast<size_t>(u)] = 1;
      has_in[static_cast<size_t>(v)] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (alive[static_cast<size_t>(v)] &&
          (!has_in[static_cast<size_t>(v)] || !has_out[static_cast<size_t>(v)])) {
        alive[static_cast<size_t>(v)] = 0;
        changed = true;
      }
    for (auto it = edges.begin(); it != edges.end();) {
      if (!alive[static_cast<size_t>((*it)[0])] || !alive[static_cast<size_t>((*it)[1])]) {
        it = edges.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<int> remap(static_cast<size_t>(n), -1);
  int count = 0;
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)]) remap[static_cast<size_t>(v)] = count++;
  std::set<std::array<int, 3>> out;
  for (const auto& [u, v, l] : edges)
    out.insert({remap[static_cast<size_t>(u)], remap[static_cast<size_t>(v)], l});
  return SoficPresentation{s.labels, count, std::move(out)};
}

}  // namespace

SoficPresentation canonical_form(const SoficPresentation& s) {
  SoficPresentation ess = essential_presentation(s);
  if (ess.empty()) return SoficPresentation{s.labels, 0, {}};
  int nl = static_cast<int>(ess.labels.size());

  // Follower-set subset construction from the all-vertices root. In an
  // essential graph the finite path words are exactly the shift's language,
  // so the reachable subsets are the word followers and the minimized
  // automaton depends only on the presented shift.
  std::vector<std::vector<std::vector<int>>> step(
      static_cast<size_t>(ess.vertex_count),
      std::vector<std::vector<int>>(static_cast<size_t>(nl)));
  for (const auto& [u, v, l] : ess.edges)
    step[static_cast<size_t>(u)][static_cast<size_t>(l)].push_back(v);

  std::map<std::vector<int>, int> id_of;
  std::vector<std::vector<int>> subsets;
  std::vector<std::vector<int>> delta;
  std::vector<int> root(static_cast<size_t>(ess.vertex_count));
  for (int v = 0; v < ess.vertex_count; ++v) root[static_cast<size_t>(v)] = v;
  id_of[root] = 0;
  subsets.push_back(root);
  for (size_t cur = 0; cur < subsets.size(); ++cur) {
    delta.emplace_back(static_cast<size_t>(nl), -1);
    for (int l = 0; l < nl; ++l) {
      std::set<int> nxt;
      for (int v : subsets[cur])
        for (int w : step[static_cast<size_t>(v)][static_cast<size_t>(l)]) nxt.insert(w);
      if (nxt.empty()) continue;
      std::vector<int> key(nxt.begin(), nxt.end());
      auto it = id_of.find(key);
      int id;
      if (it == id_of.end()) {
        id = static_cast<int>(subsets.size());
        id_of[key] = id;
        subsets.push_back(key);
      } else {
        id = it->second;
      }
      delta[cur][static_cast<size_t>(l)] = id;
    }
  }
  int ns = static_cast<int>(subsets.size());

  // Moore refinement with every state accepting: split on the defined-label
  // signature, then on successor blocks, until stable.
  std::vector<int> block(static_cast<size_t>(ns), 0);
  int nblocks = 1;
  {
    std::map<std::vector<char>, int> sig_block;
    for (int q = 0; q < ns; ++q) {
      std::vector<char> sig(static_cast<size_t>(nl));
      for (int l = 0; l < nl; ++l)
        sig[static_cast<size_t>(l)] = delta[static_cast<size_t>(q)][static_cast<size_t>(l)] >= 0;
      auto it = sig_block.emplace(sig, static_cast<int>(sig_block.size())).first;
      block[static_cast<size_t>(q)] = it->second;
    }
    nblocks = static_cast<int>(sig_block.size());
  }
  while (true) {
    std::map<std::vector<int>, int> next_block;
    std::vector<int> nb(static_cast<size_t>(ns));
    for (int q = 0; q < ns; ++q) {
      std::vector<int> key{block[static_cast<size_t>(q)]};
      for (int l = 0; l < nl; ++l) {
        int t = delta[static_cast<size_t>(q)][static_cast<size_t>(l)];
        key.push_back(t < 0 ? -1 : block[static_cast<size_t>(t)]);
      }
      nb[static_cast<size_t>(q)] = next_block.emplace(key, static_cast<int>(next_block.size()))
                                       .first->second;
    }
    if (static_cast<int>(next_block.size()) == nblocks) break;
    nblocks = static_cast<int>(next_block.size());
    block = std::move(nb);
  }

  // Quotient automaton, states ordered by label-first discovery from the
  // root's block.
  std::vector<std::vector<int>> bdelta(static_cast<size_t>(nblocks),
                                       std::vector<int>(static_cast<size_t>(nl), -1));
  for (int q = 0; q < ns; ++q)
    for (int l = 0; l < nl; ++l) {
      int t = delta[static_cast<size_t>(q)][static_cast<size_t>(l)];
      if (t >= 0)
        bdelta[static_cast<size_t>(block[static_cast<size_t>(q)])][static_cast<size_t>(l)] =
            block[static_cast<size_t>(t)];
    }
  std::vector<int> order(static_cast<size_t>(nblocks), -1);
  std::vector<int> bfs{block[0]};
  order[static_cast<size_t>(block[0])] = 0;
  int assigned = 1;
  for (size_t i = 0; i < bfs.size(); ++i)
    for (int l = 0; l < nl; ++l) {
      int t = bdelta[static_cast<size_t>(bfs[i])][static_cast<size_t>(l)];
      if (t >= 0 && order[static_cast<size_t>(t)] < 0) {
        order[static_cast<size_t>(t)] = assigned++;
        bfs.push_back(t);
      }
    }

  std::set<std::array<int, 3>> qedges;
  for (int b = 0; b < nblocks; ++b)
    for (int l = 0; l < nl; ++l) {
      int t = bdelta[static_cast<size_t>(b)][static_cast<size_t>(l)];
      if (t >= 0) qedges.insert({order[static_cast<size_t>(b)], order[static_cast<size_t>(t)], l});
    }
  SoficPresentation quotient{ess.labels, nblocks, std::move(qedges)};
  // Transient states near the root may not lie on bi-infinite paths; strip
  // them (the discovery order of the survivors is kept).
  return essential_presentation(quotient);
}

bool sofic_equal(const SoficPresentation& a, const SoficPresentation& b) {
  if (a.labels != b.labels) throw input_error("presentations use different label alphabets");
  return canonical_form(a) == canonical_form(b);
}

std::set<std::vector<int>> presentation_language(const SoficPresentation& s, int len) {
  SoficPresentation ess = essential_presentation(s);
  std::set<std::vector<int>> out;
  if (len <= 0 || ess.empty()) return out;
  std::vector<std::vector<std::pair<int, int>>> succ(static_cast<size_t>(ess.vertex_count));
  for (const auto& [u, v, l] : ess.edges) succ[static_cast<size_t>(u)].push_back({v, l});
  std::vector<int> word;
  std::function<void(int)> rec = [&](int v) {
    if (static_cast<int>(word.size()) == len) {
      out.insert(word);
      return;
    }
    for (auto [w, l] : succ[static_cast<size_t>(v)]) {
      word.push_back(l);
      rec(w);
      word.pop_back();
    }
  };
  for (int v = 0; v < ess.vertex_count; ++v) rec(v);
  return out;
}

std::string presentation_str(const SoficPresentation& s) {
  std::ostringstream os;
  os << "labels:";
  for (const std::string& l : s.labels) os << ' ' << l;
  os << "\nvertices: " << s.vertex_count << '\n';
  for (const auto& [u, v, l] : s.edges)
    os << "edge " << u << ' ' << v << ' ' << s.labels[static_cast<size_t>(l)] << '\n';
  return os.str();
}

}  // namespace sds
