#include "sds/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace sds {

ColoringAutomaton make_automaton(Group group, std::vector<std::string> colors,
                                 std::vector<std::vector<int>> rule) {
  if (colors.empty()) throw input_error("automaton needs at least one color");
  if (rule.size() != static_cast<size_t>(group.generator_count()))
    throw input_error("automaton rule needs one row per generator");
  for (const auto& row : rule) {
    if (row.size() != colors.size()) throw input_error("automaton rule row has wrong arity");
    for (int c : row)
      if (c < 0 || c >= static_cast<int>(colors.size()))
        throw input_error("automaton rule color out of range");
  }
  return ColoringAutomaton{std::move(group), std::move(colors), std::move(rule)};
}

namespace {

int generator_factor(const Group& g, int gi) {
  return g.generators()[static_cast<size_t>(gi)].syllables[0].factor;
}

bool generator_finite(const Group& g, int gi) {
  return g.factors()[static_cast<size_t>(generator_factor(g, gi))].finite();
}

// Direction markers at a cell entered along generator `arrival`.
std::vector<Dir> arrival_dirs(const Group& g, int arrival) {
  std::vector<Dir> dirs(static_cast<size_t>(g.generator_count()), Dir::Right);
  dirs[static_cast<size_t>(g.inverse_generator(arrival))] = Dir::Left;
  if (generator_finite(g, arrival)) {
    int f = generator_factor(g, arrival);
    for (int si = 0; si < g.generator_count(); ++si)
      if (si != g.inverse_generator(arrival) && generator_factor(g, si) == f &&
          generator_finite(g, si))
        dirs[static_cast<size_t>(si)] = Dir::None;
  }
  return dirs;
}

}  // namespace

std::string tracked_letter_name(const ColoringAutomaton& a, const TrackedLetter& l) {
  std::string s = a.colors[static_cast<size_t>(l.color)] + "[";
  for (Dir d : l.dirs) s += (d == Dir::Right ? '>' : d == Dir::Left ? '<' : 'o');
  return s + "]";
}

const TrackedLetter& TrackedConfig::at(const GroupElement& g) const {
  auto it = std::lower_bound(support.begin(), support.end(), g);
  if (it == support.end() || *it != g)
    throw input_error("tracked config has no value at " + element_str(g));
  return letters[static_cast<size_t>(it - support.begin())];
}

TrackedConfig run(const ColoringAutomaton& a, const GroupElement& start, int color, int radius) {
  const Group& g = a.group;
  if (color < 0 || color >= static_cast<int>(a.colors.size()))
    throw input_error("run color out of range");
  if (radius < 0) throw input_error("run radius must be >= 0");

  std::map<GroupElement, TrackedLetter> values;
  values[start] =
      TrackedLetter{color, std::vector<Dir>(static_cast<size_t>(g.generator_count()), Dir::Right)};
  struct Item {
    GroupElement at;
    int arrival;  // generator index, -1 at the start
    int depth;
  };
  std::deque<Item> queue{{start, -1, 0}};
  while (!queue.empty()) {
    Item item = queue.front();
    queue.pop_front();
    if (item.depth == radius) continue;
    int back = item.arrival < 0 ? -1 : g.inverse_generator(item.arrival);
    int coset_factor = (item.arrival >= 0 && generator_finite(g, item.arrival))
                           ? generator_factor(g, item.arrival)
                           : -1;
    int cur_color = values.at(item.at).color;
    for (int si = 0; si < g.generator_count(); ++si) {
      if (si == back) continue;
      if (coset_factor >= 0 && generator_factor(g, si) == coset_factor &&
          generator_finite(g, si))
        continue;  // coset already swept when it was entered
      GroupElement next = g.multiply(item.at, g.generator(si));
      if (values.count(next))
        throw input_error("sweep revisited a cell; generating set is inconsistent");
      values[next] = TrackedLetter{a.rule[static_cast<size_t>(si)][static_cast<size_t>(cur_color)],
                                   arrival_dirs(g, si)};
      queue.push_back({next, si, item.depth + 1});
    }
  }
  TrackedConfig cfg;
  cfg.start = start;
  cfg.color = color;
  cfg.radius = radius;
  for (auto& [el, letter] : values) {
    cfg.support.push_back(el);
    cfg.letters.push_back(letter);
  }
  return cfg;
}

std::optional<std::string> check_local_rules(const ColoringAutomaton& a, const TrackedConfig& c) {
  const Group& g = a.group;
  for (size_t i = 0; i < c.support.size(); ++i) {
    const GroupElement& el = c.support[i];
    const TrackedLetter& have = c.letters[i];
    GroupElement rel = g.multiply(g.inverse(c.start), el);
    TrackedLetter expect;
    if (rel.is_identity()) {
      expect = TrackedLetter{
          c.color, std::vector<Dir>(static_cast<size_t>(g.generator_count()), Dir::Right)};
    } else {
      Syllable last = rel.syllables.back();
      int arrival;
      GroupElement parent_rel;
      if (g.factors()[static_cast<size_t>(last.factor)].finite()) {
        arrival = g.generator_index(GroupElement{{last}});
        parent_rel = g.multiply(rel, g.inverse(GroupElement{{last}}));
      } else {
        int sgn = last.value > 0 ? 1 : -1;
        GroupElement step{{Syllable{last.factor, sgn}}};
        arrival = g.generator_index(step);
        parent_rel = g.multiply(rel, g.inverse(step));
      }
      const TrackedLetter& parent = c.at(g.multiply(c.start, parent_rel));
      expect = TrackedLetter{
          a.rule[static_cast<size_t>(arrival)][static_cast<size_t>(parent.color)],
          arrival_dirs(g, arrival)};
    }
    if (!(have == expect))
      return "rule violation at " + element_str(el) + ": have " + tracked_letter_name(a, have) +
             ", expect " + tracked_letter_name(a, expect);
  }
  return std::nullopt;
}

namespace {

Support tilde_window(const Group& g) {
  Support w;
  w.push_back(identity_element());
  for (const GroupElement& s : g.generators()) w.push_back(s);
  return sorted_support(std::move(w));
}

// Window tuples occurring in radius-r runs from the identity, over all
// colors.
std::set<std::vector<TrackedLetter>> window_tuples_at(const ColoringAutomaton& a,
                                                      const Support& window, int r) {
  const Group& g = a.group;
  std::set<std::vector<TrackedLetter>> out;
  for (int c = 0; c < static_cast<int>(a.colors.size()); ++c) {
    TrackedConfig cfg = run(a, identity_element(), c, r);
    for (const GroupElement& h : cfg.support) {
      std::vector<TrackedLetter> tuple;
      bool inside = true;
      for (const GroupElement& w : window) {
        GroupElement hw = g.multiply(h, w);
        auto it = std::lower_bound(cfg.support.begin(), cfg.support.end(), hw);
        if (it == cfg.support.end() || *it != hw) {
          inside = false;
          break;
        }
        tuple.push_back(cfg.letters[static_cast<size_t>(it - cfg.support.begin())]);
      }
      if (inside) out.insert(std::move(tuple));
    }
  }
  return out;
}

}  // namespace

TildeSft tilde_sft(const ColoringAutomaton& a, int sample_radius) {
  if (sample_radius < 1) throw input_error("tilde_sft needs sample radius >= 1");
  Support window = tilde_window(a.group);
  std::vector<std::set<std::vector<TrackedLetter>>> collected;
  for (int r = 1; r <= sample_radius; ++r)
    collected.push_back(window_tuples_at(a, window, r));
  const auto& allowed_t = collected.back();

  TildeSft t;
  t.automaton = a;
  t.sample_radius = sample_radius;
  if (sample_radius >= 2 && collected[collected.size() - 2] == allowed_t) {
    int least = sample_radius;
    while (least > 1 && collected[static_cast<size_t>(least - 2)] == allowed_t) --least;
    t.stabilized_at = least;
  }

  std::set<TrackedLetter> letter_set;
  for (const auto& tuple : allowed_t)
    for (const TrackedLetter& l : tuple) letter_set.insert(l);
  t.letters.assign(letter_set.begin(), letter_set.end());
  std::map<TrackedLetter, int> index;
  std::vector<std::string> names;
  for (size_t i = 0; i < t.letters.size(); ++i) {
    index[t.letters[i]] = static_cast<int>(i);
    names.push_back(tracked_letter_name(a, t.letters[i]));
  }
  std::set<std::vector<int>> allowed;
  for (const auto& tuple : allowed_t) {
    std::vector<int> row;
    for (const TrackedLetter& l : tuple) row.push_back(index.at(l));
    allowed.insert(std::move(row));
  }
  t.sft = make_sft(a.group, names, window, std::move(allowed));
  return t;
}

DichotomyReport dichotomy_check(const TildeSft& t, int radius, int margin) {
  DichotomyReport rep;
  GlobalPatterns gp = global_patterns(t.sft, radius, margin);
  rep.checked = static_cast<long long>(gp.patterns.size());
  for (const Pattern& p : gp.patterns) {
    bool has_source = false;
    bool every_one_left = true;
    for (int li : p.letters) {
      const TrackedLetter& l = t.letters[static_cast<size_t>(li)];
      int lefts = 0;
      bool all_right = true;
      for (Dir d : l.dirs) {
        if (d == Dir::Left) ++lefts;
        if (d != Dir::Right) all_right = false;
      }
      if (all_right) has_source = true;
      if (lefts != 1) every_one_left = false;
    }
    if (!has_source && !every_one_left) {
      rep.pass = false;
      rep.witness = p;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

std::set<std::vector<int>> run_ball_patterns(const TildeSft& t, int radius, int run_radius) {
  const Group& g = t.automaton.group;
  std::map<TrackedLetter, int> index;
  for (size_t i = 0; i < t.letters.size(); ++i) index[t.letters[i]] = static_cast<int>(i);
  Support b = ball(g, radius);
  std::set<std::vector<int>> out;
  for (int c = 0; c < static_cast<int>(t.automaton.colors.size()); ++c) {
    TrackedConfig cfg = run(t.automaton, identity_element(), c, run_radius);
    for (const GroupElement& h : cfg.support) {
      std::vector<int> tuple;
      bool inside = true;
      for (const GroupElement& w : b) {
        GroupElement hw = g.multiply(h, w);
        auto it = std::lower_bound(cfg.support.begin(), cfg.support.end(), hw);
        if (it == cfg.support.end() || *it != hw) {
          inside = false;
          break;
        }
        auto li = index.find(cfg.letters[static_cast<size_t>(it - cfg.support.begin())]);
        if (li == index.end())
          throw input_error("run produced a letter outside the sampled alphabet");
        tuple.push_back(li->second);
      }
      if (inside) out.insert(std::move(tuple));
    }
  }
  return out;
}

std::set<std::vector<int>> project_to_colors(const TildeSft& t,
                                             const std::set<std::vector<int>>& patterns) {
  std::set<std::vector<int>> out;
  for (const auto& tuple : patterns) {
    std::vector<int> colors;
    for (int li : tuple) colors.push_back(t.letters[static_cast<size_t>(li)].color);
    out.insert(std::move(colors));
  }
  return out;
}

ColoringAutomaton case1_automaton(const Group& g, const std::vector<Pattern>& configs) {
  if (g.factors().size() != 1 || !g.factors()[0].finite())
    throw input_error("case1 automaton needs a single finite factor");
  if (configs.empty()) throw input_error("case1 automaton needs at least one configuration");
  Support whole = ball(g, 1);
  std::map<Pattern, int> index;
  for (size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].support != whole)
      throw input_error("case1 configurations must cover the whole group");
    index[configs[i]] = static_cast<int>(i);
  }
  std::vector<std::string> names;
  for (const Pattern& p : configs) {
    std::string n;
    for (size_t i = 0; i < p.letters.size(); ++i) {
      if (i) n += '.';
      n += std::to_string(p.letters[i]);
    }
    names.push_back(n);
  }
  std::vector<std::vector<int>> rule(static_cast<size_t>(g.generator_count()));
  for (int si = 0; si < g.generator_count(); ++si) {
    for (const Pattern& p : configs) {
      Pattern shifted = translate(g, g.inverse(g.generator(si)), p);
      auto it = index.find(shifted);
      if (it == index.end())
        throw input_error("configuration set is not shift-invariant");
      rule[static_cast<size_t>(si)].push_back(it->second);
    }
  }
  return make_automaton(g, names, rule);
}

std::set<Pattern> generated_configs_finite(const ColoringAutomaton& a) {
  const Group& g = a.group;
  if (g.factors().size() != 1 || !g.factors()[0].finite())
    throw input_error("finite generation needs a single finite factor");
  Support whole = ball(g, 1);
  std::set<Pattern> out;
  for (const GroupElement& start : whole)
    for (int c = 0; c < static_cast<int>(a.colors.size()); ++c) {
      TrackedConfig cfg = run(a, start, c, 1);
      std::vector<int> letters;
      for (const GroupElement& e : whole) letters.push_back(cfg.at(e).color);
      out.insert(make_pattern(whole, letters, static_cast<int>(a.colors.size())));
    }
  return out;
}

NmcAutomaton case2_nmc_automaton(const ZGraph& g, int level_cap) {
  if (!is_essential_z(g) || g.empty())
    throw input_error("case2 automaton needs a nonempty essential graph");
  bool saw_nmc = false;
  for (int lev = 1; lev <= level_cap; ++lev) {
    std::vector<int> first;
    ZGraph gl = higher_block_z(g, lev, &first);
    if (gl.names.size() > 4096) throw budget_error("higher-block recode grew past the size cap");
    NmcReport rep = nmc_check(gl, 4096);
    if (!rep.nmc) continue;
    saw_nmc = true;
    if (!degree_condition_ok(gl)) continue;
    std::set<std::pair<int, int>> cyc = simple_cycle_edges(gl);
    std::vector<char> on_cycle(gl.names.size(), 0);
    for (auto [u, v] : cyc) {
      on_cycle[static_cast<size_t>(u)] = 1;
      on_cycle[static_cast<size_t>(v)] = 1;
    }
    int n = static_cast<int>(gl.names.size());
    std::vector<std::vector<int>> rule(2, std::vector<int>(static_cast<size_t>(n), -1));
    for (int v = 0; v < n; ++v) {
      // forward: the cycle successor when v sits on a simple cycle, else the
      // least successor; backward symmetric
      int fwd = -1, bwd = -1;
      for (int w = 0; w < n && fwd < 0; ++w)
        if (on_cycle[static_cast<size_t>(v)] ? cyc.count({v, w}) > 0
                                             : gl.edges.count({v, w}) > 0)
          fwd = w;
      for (int u = 0; u < n && bwd < 0; ++u)
        if (on_cycle[static_cast<size_t>(v)] ? cyc.count({u, v}) > 0
                                             : gl.edges.count({u, v}) > 0)
          bwd = u;
      if (fwd < 0 || bwd < 0) throw input_error("essential graph lost a neighbor");
      rule[0][static_cast<size_t>(v)] = fwd;
      rule[1][static_cast<size_t>(v)] = bwd;
    }
    NmcAutomaton out;
    out.automaton =
        make_automaton(Group({FactorSpec::infinite_cyclic()}), gl.names, std::move(rule));
    out.level = lev;
    out.first_vertex = first;
    out.graph = gl;
    return out;
  }
  if (saw_nmc)
    throw budget_error("degree condition not reached within the level cap");
  throw not_applicable("no-middle-cycles property fails at every level up to the cap");
}

std::set<std::vector<int>> generated_z_words(const ColoringAutomaton& a, int len) {
  if (!a.group.single_z()) throw input_error("generated_z_words needs a single-Z automaton");
  if (len <= 0) return {};
  int n = static_cast<int>(a.colors.size());
  int reach = len + 2 * n + 2;
  std::set<std::vector<int>> out;
  for (int c = 0; c < n; ++c) {
    std::vector<int> line(static_cast<size_t>(2 * reach + 1));
    line[static_cast<size_t>(reach)] = c;
    for (int i = 1; i <= reach; ++i) {
      line[static_cast<size_t>(reach + i)] =
          a.rule[0][static_cast<size_t>(line[static_cast<size_t>(reach + i - 1)])];
      line[static_cast<size_t>(reach - i)] =
          a.rule[1][static_cast<size_t>(line[static_cast<size_t>(reach - i + 1)])];
    }
    for (size_t i = 0; i + static_cast<size_t>(len) <= line.size(); ++i)
      out.insert(std::vector<int>(line.begin() + static_cast<long>(i),
                                  line.begin() + static_cast<long>(i) + len));
  }
  return out;
}

ColoringAutomaton product_automaton(const ColoringAutomaton& ax, const AlphabetMap& phi,
                                    const ColoringAutomaton& ay, const AlphabetMap& psi) {
  if (phi.source != ax.colors || psi.source != ay.colors)
    throw input_error("alphabet maps must be defined on the automata colors");
  if (phi.target != psi.target) throw input_error("alphabet maps need a common target");
  if (!phi.surjective || !psi.surjective)
    throw input_error("product automaton needs surjective color maps");
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> names;
  std::map<std::pair<int, int>, int> index;
  for (int b = 0; b < static_cast<int>(ax.colors.size()); ++b)
    for (int c = 0; c < static_cast<int>(ay.colors.size()); ++c)
      if (phi.map[static_cast<size_t>(b)] == psi.map[static_cast<size_t>(c)]) {
        index[{b, c}] = static_cast<int>(pairs.size());
        names.push_back("(" + ax.colors[static_cast<size_t>(b)] + "," +
                        ay.colors[static_cast<size_t>(c)] + ")");
        pairs.push_back({b, c});
      }
  if (pairs.empty()) throw input_error("restricted color alphabet is empty");

  Group g = free_product_group(ax.group, ay.group);
  int nx = ax.group.generator_count();
  std::vector<std::vector<int>> rule(static_cast<size_t>(g.generator_count()));
  auto least_fiber = [](const AlphabetMap& m, int target) {
    for (size_t i = 0; i < m.map.size(); ++i)
      if (m.map[i] == target) return static_cast<int>(i);
    throw input_error("map is not surjective");
  };
  for (int si = 0; si < g.generator_count(); ++si) {
    rule[static_cast<size_t>(si)].reserve(pairs.size());
    for (auto [b, c] : pairs) {
      int pb, pc;
      if (si < nx) {
        pb = ax.rule[static_cast<size_t>(si)][static_cast<size_t>(b)];
        pc = least_fiber(psi, phi.map[static_cast<size_t>(pb)]);
      } else {
        pc = ay.rule[static_cast<size_t>(si - nx)][static_cast<size_t>(c)];
        pb = least_fiber(phi, psi.map[static_cast<size_t>(pc)]);
      }
      rule[static_cast<size_t>(si)].push_back(index.at({pb, pc}));
    }
  }
  return make_automaton(std::move(g), std::move(names), std::move(rule));
}

}  // namespace sds
