#include "sds/rauzy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace sds {

RauzyGraph make_rauzy(Group group, std::vector<std::string> vertices,
                      std::vector<std::set<std::pair<int, int>>> edges) {
  if (edges.size() != static_cast<size_t>(group.generator_count()))
    throw input_error("rauzy graph needs one edge relation per generator");
  int n = static_cast<int>(vertices.size());
  for (const auto& rel : edges)
    for (auto [u, v] : rel)
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw input_error("rauzy edge endpoint out of range");
  RauzyGraph r{std::move(group), std::move(vertices), std::move(edges)};
  // Transpose invariant between a generator and its inverse.
  for (int gi = 0; gi < r.group.generator_count(); ++gi) {
    int inv = r.group.inverse_generator(gi);
    for (auto [u, v] : r.edges[gi])
      if (!r.edges[inv].count({v, u}))
        throw input_error("edge relation of an inverse generator is not the transpose");
  }
  return r;
}

namespace {

// Search a full coset coloring c: G_j -> V with (c(t), c(t*s)) in E_s for
// every t and every non-identity s, respecting pre-fixed slots.
bool coset_coloring_exists(const RauzyGraph& r, int factor, const std::vector<int>& gen_of_value,
                           const std::vector<char>& alive, std::vector<int> fixed) {
  const FactorSpec& f = r.group.factors()[static_cast<size_t>(factor)];
  int order = f.order;
  int n = static_cast<int>(r.vertices.size());
  auto slot_ok = [&](int t) {
    for (int s = 1; s < order; ++s) {
      int ts = f.mul(t, s);
      if (fixed[static_cast<size_t>(t)] < 0 || fixed[static_cast<size_t>(ts)] < 0) continue;
      if (!r.edges[static_cast<size_t>(gen_of_value[static_cast<size_t>(s)])].count(
              {fixed[static_cast<size_t>(t)], fixed[static_cast<size_t>(ts)]}))
        return false;
    }
    return true;
  };
  for (int t = 0; t < order; ++t)
    if (!slot_ok(t)) return false;
  std::function<bool(int)> rec = [&](int slot) -> bool {
    if (slot == order) return true;
    if (fixed[static_cast<size_t>(slot)] >= 0) return rec(slot + 1);
    for (int v = 0; v < n; ++v) {
      if (!alive[static_cast<size_t>(v)]) continue;
      fixed[static_cast<size_t>(slot)] = v;
      bool ok = true;
      for (int t = 0; t < order && ok; ++t)
        if (!slot_ok(t)) ok = false;
      if (ok && rec(slot + 1)) return true;
      fixed[static_cast<size_t>(slot)] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

RauzyGraph essentialize(const RauzyGraph& r, int coset_order_cap) {
  const Group& g = r.group;
  int n = static_cast<int>(r.vertices.size());
  for (const FactorSpec& f : g.factors())
    if (f.finite() && f.order > coset_order_cap)
      throw budget_error("finite factor order exceeds the coset cap");

  std::vector<std::vector<int>> gen_of_value(g.factors().size());
  for (size_t fi = 0; fi < g.factors().size(); ++fi) {
    if (!g.factors()[fi].finite()) continue;
    gen_of_value[fi].assign(static_cast<size_t>(g.factors()[fi].order), -1);
    for (int v = 1; v < g.factors()[fi].order; ++v)
      gen_of_value[fi][static_cast<size_t>(v)] =
          g.generator_index(GroupElement{{Syllable{static_cast<int>(fi), v}}});
  }

  std::vector<char> alive(static_cast<size_t>(n), 1);
  auto edges = r.edges;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& rel : edges) {
      for (auto it = rel.begin(); it != rel.end();) {
        if (!alive[static_cast<size_t>(it->first)] || !alive[static_cast<size_t>(it->second)]) {
          it = rel.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
    for (int gi = 0; gi < g.generator_count(); ++gi) {
      std::vector<char> has_out(static_cast<size_t>(n), 0), has_in(static_cast<size_t>(n), 0);
      for (auto [u, v] : edges[static_cast<size_t>(gi)]) {
        has_out[static_cast<size_t>(u)] = 1;
        has_in[static_cast<size_t>(v)] = 1;
      }
      for (int v = 0; v < n; ++v)
        if (alive[static_cast<size_t>(v)] &&
            (!has_out[static_cast<size_t>(v)] || !has_in[static_cast<size_t>(v)])) {
          alive[static_cast<size_t>(v)] = 0;
          changed = true;
        }
    }
    RauzyGraph cur{g, r.vertices, edges};
    for (size_t fi = 0; fi < g.factors().size(); ++fi) {
      const FactorSpec& f = g.factors()[fi];
      if (!f.finite()) continue;
      for (int v = 0; v < n; ++v) {
        if (!alive[static_cast<size_t>(v)]) continue;
        std::vector<int> fixed(static_cast<size_t>(f.order), -1);
        fixed[0] = v;
        if (!coset_coloring_exists(cur, static_cast<int>(fi), gen_of_value[fi], alive, fixed)) {
          alive[static_cast<size_t>(v)] = 0;
          changed = true;
        }
      }
      for (int s = 1; s < f.order; ++s) {
        int gi = gen_of_value[fi][static_cast<size_t>(s)];
        auto& rel = edges[static_cast<size_t>(gi)];
        for (auto it = rel.begin(); it != rel.end();) {
          std::vector<int> fixed(static_cast<size_t>(f.order), -1);
          fixed[0] = it->first;
          fixed[static_cast<size_t>(s)] = it->second;
          if (!alive[static_cast<size_t>(it->first)] || !alive[static_cast<size_t>(it->second)] ||
              !coset_coloring_exists(cur, static_cast<int>(fi), gen_of_value[fi], alive, fixed)) {
            it = rel.erase(it);
            changed = true;
          } else {
            ++it;
          }
        }
      }
    }
  }

  std::vector<int> remap(static_cast<size_t>(n), -1);
  std::vector<std::string> verts;
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)]) {
      remap[static_cast<size_t>(v)] = static_cast<int>(verts.size());
      verts.push_back(r.vertices[static_cast<size_t>(v)]);
    }
  std::vector<std::set<std::pair<int, int>>> out(edges.size());
  for (size_t gi = 0; gi < edges.size(); ++gi)
    for (auto [u, v] : edges[gi])
      if (alive[static_cast<size_t>(u)] && alive[static_cast<size_t>(v)])
        out[gi].insert({remap[static_cast<size_t>(u)], remap[static_cast<size_t>(v)]});
  return RauzyGraph{g, std::move(verts), std::move(out)};
}

Sft rauzy_to_sft(const RauzyGraph& r) {
  const Group& g = r.group;
  Support window;
  window.push_back(identity_element());
  for (const GroupElement& s : g.generators()) window.push_back(s);
  window = sorted_support(std::move(window));
  int id_slot = -1;
  std::vector<int> gen_at_slot(window.size(), -1);
  for (size_t i = 0; i < window.size(); ++i) {
    if (window[i].is_identity())
      id_slot = static_cast<int>(i);
    else
      gen_at_slot[i] = g.generator_index(window[i]);
  }
  int n = static_cast<int>(r.vertices.size());
  std::set<std::vector<int>> allowed;
  std::vector<int> tuple(window.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == window.size()) {
      allowed.insert(tuple);
      return;
    }
    for (int v = 0; v < n; ++v) {
      tuple[i] = v;
      bool ok = true;
      if (static_cast<int>(i) == id_slot) {
        for (size_t j = 0; j < i && ok; ++j)
          if (gen_at_slot[j] >= 0 &&
              !r.edges[static_cast<size_t>(gen_at_slot[j])].count({v, tuple[j]}))
            ok = false;
      } else if (id_slot >= 0 && id_slot < static_cast<int>(i)) {
        if (!r.edges[static_cast<size_t>(gen_at_slot[i])].count(
                {tuple[static_cast<size_t>(id_slot)], v}))
          ok = false;
      }
      if (ok) rec(i + 1);
    }
  };
  rec(0);
  return make_sft(g, r.vertices, window, std::move(allowed));
}

std::vector<int> ZGraph::successors(int v) const {
  std::vector<int> out;
  for (auto [u, w] : edges)
    if (u == v) out.push_back(w);
  return out;
}

std::vector<int> ZGraph::predecessors(int v) const {
  std::vector<int> out;
  for (auto [u, w] : edges)
    if (w == v) out.push_back(u);
  return out;
}

ZGraph essential_z(const ZGraph& g) {
  int n = static_cast<int>(g.names.size());
  std::vector<char> alive(static_cast<size_t>(n), 1);
  auto edges = g.edges;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<char> has_in(static_cast<size_t>(n), 0), has_out(static_cast<size_t>(n), 0);
    for (auto [u, v] : edges) {
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
      if (!alive[static_cast<size_t>(it->first)] || !alive[static_cast<size_t>(it->second)]) {
        it = edges.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  std::vector<int> remap(static_cast<size_t>(n), -1);
  ZGraph out;
  for (int v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)]) {
      remap[static_cast<size_t>(v)] = static_cast<int>(out.names.size());
      out.names.push_back(g.names[static_cast<size_t>(v)]);
    }
  for (auto [u, v] : edges)
    out.edges.insert({remap[static_cast<size_t>(u)], remap[static_cast<size_t>(v)]});
  return out;
}

bool is_essential_z(const ZGraph& g) {
  std::vector<char> has_in(g.names.size(), 0), has_out(g.names.size(), 0);
  for (auto [u, v] : g.edges) {
    has_out[static_cast<size_t>(u)] = 1;
    has_in[static_cast<size_t>(v)] = 1;
  }
  for (size_t v = 0; v < g.names.size(); ++v)
    if (!has_in[v] || !has_out[v]) return false;
  return true;
}

RauzyGraph z_to_rauzy_graph(const ZGraph& g) {
  Group z({FactorSpec::infinite_cyclic()});
  std::set<std::pair<int, int>> fwd = g.edges, bwd;
  for (auto [u, v] : g.edges) bwd.insert({v, u});
  return RauzyGraph{z, g.names, {std::move(fwd), std::move(bwd)}};
}

std::optional<ZGraph> rauzy_to_z(const RauzyGraph& r) {
  if (!r.group.single_z()) return std::nullopt;
  ZGraph g;
  g.names = r.vertices;
  g.edges = r.edges[0];
  return g;
}

Sft zgraph_to_sft(const ZGraph& g) {
  Group z({FactorSpec::infinite_cyclic()});
  Support window = sorted_support({identity_element(), GroupElement{{Syllable{0, 1}}}});
  std::set<std::vector<int>> allowed;
  for (auto [u, v] : g.edges) allowed.insert({u, v});
  return make_sft(z, g.names, window, std::move(allowed));
}

std::set<std::vector<int>> z_vertex_words(const ZGraph& g, int len) {
  std::set<std::vector<int>> out;
  if (len <= 0) return out;
  std::vector<std::vector<int>> succ(g.names.size());
  for (auto [u, v] : g.edges) succ[static_cast<size_t>(u)].push_back(v);
  std::vector<int> word;
  std::function<void(int)> rec = [&](int v) {
    word.push_back(v);
    if (static_cast<int>(word.size()) == len)
      out.insert(word);
    else
      for (int w : succ[static_cast<size_t>(v)]) rec(w);
    word.pop_back();
  };
  for (size_t v = 0; v < g.names.size(); ++v) rec(static_cast<int>(v));
  return out;
}

std::set<std::vector<int>> z_letter_words(const ZGraph& g, const std::vector<int>& letter_map,
                                          int len) {
  std::set<std::vector<int>> out;
  for (const std::vector<int>& w : z_vertex_words(g, len)) {
    std::vector<int> m(w.size());
    for (size_t i = 0; i < w.size(); ++i) m[i] = letter_map[static_cast<size_t>(w[i])];
    out.insert(std::move(m));
  }
  return out;
}

ZGraph higher_block_z(const ZGraph& g, int level, std::vector<int>* first_vertex) {
  if (level < 1) throw input_error("higher block level must be >= 1");
  if (first_vertex) first_vertex->clear();
  if (level == 1) {
    if (first_vertex) {
      first_vertex->resize(g.names.size());
      std::iota(first_vertex->begin(), first_vertex->end(), 0);
    }
    return g;
  }
  std::vector<std::vector<int>> blocks;
  for (const std::vector<int>& w : z_vertex_words(g, level)) blocks.push_back(w);
  std::map<std::vector<int>, int> index;
  ZGraph out;
  for (const auto& b : blocks) {
    index[b] = static_cast<int>(out.names.size());
    std::string name;
    for (size_t i = 0; i < b.size(); ++i) {
      if (i) name += '.';
      name += g.names[static_cast<size_t>(b[i])];
    }
    out.names.push_back(name);
    if (first_vertex) first_vertex->push_back(b[0]);
  }
  for (const auto& u : blocks)
    for (const auto& v : blocks) {
      bool overlap = true;
      for (int i = 0; i + 1 < level; ++i)
        if (u[static_cast<size_t>(i + 1)] != v[static_cast<size_t>(i)]) {
          overlap = false;
          break;
        }
      // overlap forces all inner edges; the last edge closes the (level+1)-path
      if (overlap &&
          g.edges.count({u[static_cast<size_t>(level - 1)], v[static_cast<size_t>(level - 1)]}))
        out.edges.insert({index.at(u), index.at(v)});
    }
  return out;
}

ZRecode z_first_step(const Sft& x) {
  if (!x.group.single_z()) throw input_error("one-step recode needs a single-Z group");
  int lo = 0, hi = 0;
  bool first = true;
  for (const GroupElement& w : x.window) {
    int v = w.is_identity() ? 0 : w.syllables[0].value;
    if (first) {
      lo = hi = v;
      first = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  int m = hi - lo + 1;
  int nletters = static_cast<int>(x.alphabet.size());
  std::vector<int> offsets;
  for (const GroupElement& w : x.window)
    offsets.push_back((w.is_identity() ? 0 : w.syllables[0].value) - lo);

  ZRecode out;
  out.alphabet = x.alphabet;
  if (m == 1) {
    out.block_len = 1;
    for (int a = 0; a < nletters; ++a)
      if (x.allowed.count({a})) {
        out.letter_map.push_back(a);
        out.graph.names.push_back(x.alphabet[static_cast<size_t>(a)]);
      }
    for (size_t u = 0; u < out.graph.names.size(); ++u)
      for (size_t v = 0; v < out.graph.names.size(); ++v)
        out.graph.edges.insert({static_cast<int>(u), static_cast<int>(v)});
    return out;
  }

  if (std::pow(static_cast<double>(nletters), m) > 2e7)
    throw budget_error("window hull too large to recode");
  std::vector<std::vector<int>> words;
  std::vector<int> word(static_cast<size_t>(m), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == m) {
      std::vector<int> tuple(offsets.size());
      for (size_t k = 0; k < offsets.size(); ++k) tuple[k] = word[static_cast<size_t>(offsets[k])];
      if (x.allowed.count(tuple)) words.push_back(word);
      return;
    }
    for (int a = 0; a < nletters; ++a) {
      word[static_cast<size_t>(i)] = a;
      rec(i + 1);
    }
  };
  rec(0);

  std::map<std::vector<int>, int> index;
  ZGraph g;
  std::vector<int> lmap;
  auto vertex_of = [&](const std::vector<int>& w) {
    auto it = index.find(w);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(g.names.size());
    index[w] = id;
    std::string name;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) name += '.';
      name += x.alphabet[static_cast<size_t>(w[i])];
    }
    g.names.push_back(name);
    lmap.push_back(w[0]);
    return id;
  };
  for (const auto& z : words) {
    std::vector<int> u(z.begin(), z.end() - 1), v(z.begin() + 1, z.end());
    g.edges.insert({vertex_of(u), vertex_of(v)});
  }
  ZGraph ess = essential_z(g);
  std::map<std::string, int> old_by_name;
  for (size_t i = 0; i < g.names.size(); ++i) old_by_name[g.names[i]] = static_cast<int>(i);
  out.block_len = m - 1;
  out.graph = ess;
  for (const std::string& name : ess.names)
    out.letter_map.push_back(lmap[static_cast<size_t>(old_by_name.at(name))]);
  return out;
}

namespace {

// Bounded check that the subgroup generated by the window contains every
// canonical generator: exact gcd over Z, a product closure elsewhere.
bool window_generates(const Sft& x, int closure_len = 8) {
  const Group& g = x.group;
  if (g.single_z()) {
    long long d = 0;
    for (const GroupElement& w : x.window)
      d = std::gcd(d, static_cast<long long>(w.is_identity() ? 0 : w.syllables[0].value));
    return d == 1;
  }
  std::set<GroupElement> closure;
  std::vector<GroupElement> gens;
  for (const GroupElement& w : x.window) {
    if (w.is_identity()) continue;
    gens.push_back(w);
    gens.push_back(g.inverse(w));
  }
  std::vector<GroupElement> frontier{identity_element()};
  closure.insert(identity_element());
  for (int step = 0; step < closure_len; ++step) {
    std::vector<GroupElement> next;
    for (const GroupElement& e : frontier)
      for (const GroupElement& w : gens) {
        GroupElement p = g.multiply(e, w);
        if (closure.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  for (const GroupElement& s : g.generators())
    if (!closure.count(s)) return false;
  return true;
}

}  // namespace

ToRauzy to_rauzy(const Sft& x, int margin) {
  if (!window_generates(x))
    throw input_error("window generates a proper subgroup; recoding not applicable");
  ToRauzy out;
  if (x.group.single_z()) {
    ZRecode zr = z_first_step(x);
    if (zr.block_len <= 1) {
      // one-step input: letters stay vertices
      out.graph = z_to_rauzy_graph(zr.graph);
      out.letter_map = zr.letter_map;
    } else {
      // vertices are the admissible window-hull words
      std::vector<int> first;
      ZGraph blocks = higher_block_z(zr.graph, 2, &first);
      out.graph = z_to_rauzy_graph(blocks);
      for (int v : first) out.letter_map.push_back(zr.letter_map[static_cast<size_t>(v)]);
    }
    out.margin_used = -1;  // exact
    return out;
  }
  const Group& g = x.group;
  bool one_step = true;
  for (const GroupElement& w : x.window)
    if (!w.is_identity() && g.generator_index(w) < 0) one_step = false;
  if (one_step) {
    // letters stay as vertices
    std::vector<int> keep;
    for (const Pattern& p : admissible_on(x, {identity_element()}, margin + 1))
      keep.push_back(p.letters[0]);
    std::vector<std::string> names;
    std::map<int, int> remap;
    for (int l : keep) {
      remap[l] = static_cast<int>(names.size());
      names.push_back(x.alphabet[static_cast<size_t>(l)]);
    }
    std::vector<std::set<std::pair<int, int>>> edges(g.generator_count());
    for (int gi = 0; gi < g.generator_count(); ++gi) {
      Support pair_support = sorted_support({identity_element(), g.generator(gi)});
      for (const Pattern& p : admissible_on(x, pair_support, margin)) {
        int u = p.at(identity_element()), v = p.at(g.generator(gi));
        if (remap.count(u) && remap.count(v))
          edges[static_cast<size_t>(gi)].insert({remap[u], remap[v]});
      }
    }
    out.graph = essentialize(make_rauzy(g, names, edges));
    for (const std::string& n : out.graph.vertices)
      for (size_t a = 0; a < x.alphabet.size(); ++a)
        if (x.alphabet[a] == n) out.letter_map.push_back(static_cast<int>(a));
    out.margin_used = margin;
    return out;
  }

  // General windows: vertices are admissible window patterns, edges join
  // translated pairs realizable inside one admissible union pattern.
  if (!support_contains(x.window, identity_element()))
    throw input_error("general recoding needs the identity in the window");
  std::vector<Pattern> verts = admissible_on(x, x.window, margin);
  std::map<Pattern, int> vid;
  std::vector<std::string> names;
  for (const Pattern& p : verts) {
    vid[p] = static_cast<int>(names.size());
    names.push_back("p" + std::to_string(names.size()));
  }
  std::vector<std::set<std::pair<int, int>>> edges(g.generator_count());
  for (int gi = 0; gi < g.generator_count(); ++gi) {
    const GroupElement s = g.generator(gi);
    std::vector<GroupElement> ps = x.window;
    for (const GroupElement& w : x.window) ps.push_back(g.multiply(s, w));
    Support pair_support = sorted_support(std::move(ps));
    for (const Pattern& q : admissible_on(x, pair_support, margin)) {
      Pattern a = restrict_to(q, x.window);
      Pattern b = restrict_to(translate(g, g.inverse(s), q), x.window);
      auto ia = vid.find(a);
      auto ib = vid.find(b);
      if (ia != vid.end() && ib != vid.end())
        edges[static_cast<size_t>(gi)].insert({ia->second, ib->second});
    }
  }
  out.graph = essentialize(make_rauzy(g, names, edges));
  std::map<std::string, int> kept;
  for (size_t i = 0; i < out.graph.vertices.size(); ++i)
    kept[out.graph.vertices[i]] = static_cast<int>(i);
  out.letter_map.assign(out.graph.vertices.size(), -1);
  for (const Pattern& p : verts) {
    auto it = kept.find(names[static_cast<size_t>(vid[p])]);
    if (it != kept.end())
      out.letter_map[static_cast<size_t>(it->second)] = p.at(identity_element());
  }
  out.margin_used = margin;
  return out;
}

}  // namespace sds
