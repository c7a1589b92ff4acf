#include "sds/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace sds {

// Visits every simple cycle (least vertex first) until the visitor returns
// false; the budget counts path extensions.
static void for_each_simple_cycle(const ZGraph& g, long long budget,
                                  const std::function<bool(const std::vector<int>&)>& visit) {
  int n = static_cast<int>(g.names.size());
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  for (auto [u, v] : g.edges) succ[static_cast<size_t>(u)].push_back(v);
  std::vector<int> path;
  std::vector<char> on_path(static_cast<size_t>(n), 0);
  long long steps = 0;
  bool stop = false;
  std::function<void(int, int)> rec = [&](int root, int v) {
    if (stop) return;
    if (++steps > budget) throw budget_error("simple cycle enumeration budget exhausted");
    path.push_back(v);
    on_path[static_cast<size_t>(v)] = 1;
    for (int w : succ[static_cast<size_t>(v)]) {
      if (stop) break;
      if (w == root) {
        if (!visit(path)) stop = true;
      } else if (w > root && !on_path[static_cast<size_t>(w)]) {
        rec(root, w);
      }
    }
    on_path[static_cast<size_t>(v)] = 0;
    path.pop_back();
  };
  for (int root = 0; root < n && !stop; ++root) rec(root, root);
}

std::vector<std::vector<int>> simple_cycles(const ZGraph& g, long long budget) {
  std::vector<std::vector<int>> cycles;
  for_each_simple_cycle(g, budget, [&](const std::vector<int>& c) {
    cycles.push_back(c);
    return true;
  });
  return cycles;
}

std::set<std::pair<int, int>> simple_cycle_edges(const ZGraph& g, long long budget) {
  std::set<std::pair<int, int>> out;
  for (const std::vector<int>& c : simple_cycles(g, budget))
    for (size_t i = 0; i < c.size(); ++i) out.insert({c[i], c[(i + 1) % c.size()]});
  return out;
}

bool degree_condition_ok(const ZGraph& g) {
  std::vector<int> indeg(g.names.size(), 0), outdeg(g.names.size(), 0);
  for (auto [u, v] : g.edges) {
    ++outdeg[static_cast<size_t>(u)];
    ++indeg[static_cast<size_t>(v)];
  }
  for (size_t v = 0; v < g.names.size(); ++v)
    if (indeg[v] > 1 && outdeg[v] > 1) return false;
  return true;
}

NmcReport nmc_check(const ZGraph& g, int vertex_cap, long long cycle_budget) {
  if (static_cast<int>(g.names.size()) > vertex_cap)
    throw budget_error("nmc vertex cap exceeded");
  NmcReport out{true, std::nullopt};
  for_each_simple_cycle(g, cycle_budget, [&](const std::vector<int>& cycle) {
    std::set<int> cset(cycle.begin(), cycle.end());
    bool ext_in = false, ext_out = false;
    for (auto [u, v] : g.edges) {
      if (!cset.count(u) && cset.count(v)) ext_in = true;
      if (cset.count(u) && !cset.count(v)) ext_out = true;
    }
    if (ext_in && ext_out) {
      out = NmcReport{false, cycle};
      return false;
    }
    return true;
  });
  return out;
}

std::set<std::vector<int>> exact_z_words(const Sft& x, int len) {
  ZRecode zr = z_first_step(x);
  return z_letter_words(zr.graph, zr.letter_map, len);
}

namespace {

int window_hull_len(const Sft& x) {
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
  return hi - lo + 1;
}

Sft interval_sft(const Group& z, const std::vector<std::string>& alphabet, int w,
                 const std::set<std::vector<int>>& allowed) {
  std::vector<GroupElement> supp;
  for (int i = 0; i < w; ++i)
    supp.push_back(i == 0 ? identity_element() : GroupElement{{Syllable{0, i}}});
  return make_sft(z, alphabet, sorted_support(std::move(supp)), allowed);
}

// NMC certificate search through higher-block recodings. Returns the least
// level at which the property holds, if any, plus whether the climb was cut
// short by size.
struct NmcClimb {
  std::optional<int> level;
  bool truncated = false;
  bool saw_nmc = false;
};

NmcClimb climb_nmc(const ZGraph& g, int level_cap, int vertex_cap = 64) {
  NmcClimb out;
  for (int lev = 1; lev <= level_cap; ++lev) {
    ZGraph gl = higher_block_z(g, lev);
    if (static_cast<int>(gl.names.size()) > vertex_cap) {
      out.truncated = true;
      return out;
    }
    NmcReport rep;
    try {
      rep = nmc_check(gl, vertex_cap);
    } catch (const budget_error&) {
      out.truncated = true;  // cycle enumeration overran at this level
      return out;
    }
    if (rep.nmc) {
      out.level = lev;
      out.saw_nmc = true;
      return out;
    }
  }
  return out;
}

}  // namespace

IsolationVerdict isolated_check(const Sft& x, int f_len, int search_window, int distinguish_len,
                                int nmc_level_cap) {
  if (!x.group.single_z()) throw input_error("isolated_check needs a single-Z sft");
  if (f_len < 1 || search_window < 1 || distinguish_len < 1)
    throw input_error("isolated_check bounds must be positive");
  ZRecode zr = z_first_step(x);
  if (zr.graph.empty()) throw input_error("isolated_check needs a nonempty sft");

  IsolationVerdict out;
  NmcClimb climb = climb_nmc(zr.graph, nmc_level_cap);
  if (climb.level) {
    out.status = IsolationVerdict::Status::IsolatedCertified;
    out.nmc_level = climb.level;
    out.bounds = "nmc certificate at block level " + std::to_string(*climb.level);
    return out;
  }

  std::set<std::vector<int>> xf = z_letter_words(zr.graph, zr.letter_map, f_len);
  int wmin = std::max(2, window_hull_len(x));
  for (int w = wmin; w <= search_window && w <= distinguish_len; ++w) {
    std::set<std::vector<int>> xw = z_letter_words(zr.graph, zr.letter_map, w);
    std::vector<std::vector<int>> words(xw.begin(), xw.end());
    // largest first, so e.g. the full shift's witness forbids the top word
    for (auto it = words.rbegin(); it != words.rend(); ++it) {
      std::set<std::vector<int>> sub = xw;
      sub.erase(*it);
      if (sub.empty()) continue;
      Sft y = interval_sft(x.group, x.alphabet, w, sub);
      ZRecode zy = z_first_step(y);
      if (zy.graph.empty()) continue;
      if (z_letter_words(zy.graph, zy.letter_map, f_len) != xf) continue;
      // validate: find the least length with a genuine language difference
      for (int n = 1; n <= distinguish_len; ++n) {
        std::set<std::vector<int>> xn = z_letter_words(zr.graph, zr.letter_map, n);
        std::set<std::vector<int>> yn = z_letter_words(zy.graph, zy.letter_map, n);
        if (xn == yn) continue;
        std::vector<std::vector<int>> missing;
        std::set_difference(xn.begin(), xn.end(), yn.begin(), yn.end(),
                            std::back_inserter(missing));
        IsolationWitness wit;
        wit.window_len = w;
        wit.removed_word = *it;
        wit.allowed_words.assign(sub.begin(), sub.end());
        wit.difference_length = n;
        wit.missing_word = missing.front();
        out.status = IsolationVerdict::Status::NotIsolated;
        out.witness = wit;
        out.bounds = "witness window " + std::to_string(w);
        return out;
      }
      // no difference within the distinguishing bound: not a usable witness
    }
  }
  out.status = IsolationVerdict::Status::Unknown;
  out.bounds = "no nmc certificate through level " + std::to_string(nmc_level_cap) +
               (climb.truncated ? " (recode size cap hit)" : "") + ", no witness at windows <= " +
               std::to_string(search_window) + ", lengths <= " + std::to_string(distinguish_len);
  return out;
}

namespace {

bool single_simple_cycle(const ZGraph& g) {
  if (g.empty()) return false;
  std::vector<int> indeg(g.names.size(), 0), outdeg(g.names.size(), 0);
  for (auto [u, v] : g.edges) {
    ++outdeg[static_cast<size_t>(u)];
    ++indeg[static_cast<size_t>(v)];
  }
  for (size_t v = 0; v < g.names.size(); ++v)
    if (indeg[v] != 1 || outdeg[v] != 1) return false;
  // one orbit: follow successors from vertex 0
  std::set<int> seen{0};
  int cur = 0;
  for (size_t i = 0; i < g.names.size(); ++i) {
    cur = g.successors(cur)[0];
    if (!seen.insert(cur).second) break;
  }
  return seen.size() == g.names.size();
}

// Exact admissible patterns of a single-Z sft on an arbitrary finite support.
std::set<std::vector<int>> exact_patterns_on(const Sft& x, const Support& supp) {
  ZRecode zr = z_first_step(x);
  int pump = static_cast<int>(zr.graph.names.size()) + window_hull_len(x) + 1;
  std::set<std::vector<int>> out;
  for (const Pattern& p : admissible_on(x, supp, pump)) out.insert(p.letters);
  return out;
}

}  // namespace

MinimalVerdict minimal_check(const Sft& x, const std::optional<std::vector<Pattern>>& cylinders,
                             int search_window, int nmc_level_cap) {
  if (!x.group.single_z()) throw input_error("minimal_check needs a single-Z sft");
  ZRecode zr = z_first_step(x);
  if (zr.graph.empty()) throw input_error("minimal_check needs a nonempty sft");
  MinimalVerdict out;

  bool plain_minimal = single_simple_cycle(zr.graph);
  if (!cylinders) {
    out.status =
        plain_minimal ? MinimalVerdict::Status::Minimal : MinimalVerdict::Status::NotMinimal;
    out.note = plain_minimal ? "single periodic orbit" : "essential graph is not a single cycle";
    return out;
  }

  // validate cylinders against x
  for (const Pattern& p : *cylinders) {
    if (p.alphabet_size != static_cast<int>(x.alphabet.size()))
      throw input_error("cylinder pattern alphabet mismatch");
    if (!exact_patterns_on(x, p.support).count(p.letters))
      throw input_error("cylinder pattern is not allowed in the sft");
  }
  if (plain_minimal) {
    out.status = MinimalVerdict::Status::Minimal;
    out.note = "single periodic orbit has no proper nonempty subshift";
    return out;
  }

  int wmin = std::max(2, window_hull_len(x));
  for (int w = wmin; w <= search_window; ++w) {
    std::set<std::vector<int>> xw = exact_z_words(x, w);
    std::vector<std::vector<int>> words(xw.begin(), xw.end());
    for (auto it = words.rbegin(); it != words.rend(); ++it) {
      std::set<std::vector<int>> sub = xw;
      sub.erase(*it);
      if (sub.empty()) continue;
      Sft y = interval_sft(x.group, x.alphabet, w, sub);
      ZRecode zy = z_first_step(y);
      if (zy.graph.empty()) continue;
      bool hits_all = true;
      for (const Pattern& p : *cylinders)
        if (!exact_patterns_on(y, p.support).count(p.letters)) {
          hits_all = false;
          break;
        }
      if (hits_all) {
        IsolationWitness wit;
        wit.window_len = w;
        wit.removed_word = *it;
        wit.allowed_words.assign(sub.begin(), sub.end());
        out.status = MinimalVerdict::Status::NotMinimal;
        out.witness = wit;
        out.note = "proper sub-sft hits every cylinder";
        return out;
      }
    }
  }

  // certified positive: the cylinders are exactly the patterns of an interval
  // window whose length is covered by an NMC certificate
  bool common_interval = true;
  Support supp = (*cylinders)[0].support;
  for (const Pattern& p : *cylinders)
    if (p.support != supp) common_interval = false;
  if (common_interval) {
    std::vector<int> vals;
    for (const GroupElement& e : supp)
      vals.push_back(e.is_identity() ? 0 : e.syllables[0].value);
    std::sort(vals.begin(), vals.end());
    for (size_t i = 0; i + 1 < vals.size(); ++i)
      if (vals[i + 1] != vals[i] + 1) common_interval = false;
  }
  if (common_interval) {
    std::set<std::vector<int>> have;
    for (const Pattern& p : *cylinders) have.insert(p.letters);
    if (have == exact_patterns_on(x, supp)) {
      NmcClimb climb = climb_nmc(zr.graph, nmc_level_cap);
      // the level-L certificate window is an interval of length L+1
      if (climb.level && static_cast<int>(supp.size()) >= *climb.level + 1) {
        out.status = MinimalVerdict::Status::Minimal;
        out.note = "cylinders cover an nmc-certified window (level " +
                   std::to_string(*climb.level) + ")";
        return out;
      }
    }
  }
  out.status = MinimalVerdict::Status::Unknown;
  out.note = "no witness at windows <= " + std::to_string(search_window) +
             ", no covering certificate";
  return out;
}

}  // namespace sds
