#include "sds/specfile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sds {

namespace {

struct Lines {
  std::vector<std::string> text;
  size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  int number() const { return static_cast<int>(pos); }  // 1-based of the *last read* line
  std::string next() { return text[pos++]; }
  void back() { --pos; }
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// key: value... lines inside a section
std::vector<std::string> section_line(Lines& in, int* line_no) {
  while (!in.done()) {
    std::string line = in.next();
    if (blank_or_comment(line)) continue;
    *line_no = in.number();
    return tokens(line);
  }
  throw input_error("unexpected end of file inside a section");
}

void parse_group_section(Lines& in, const std::string& name, SpecFile& out) {
  std::vector<std::string> factor_lines;
  int line_no = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    std::ostringstream os;
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) os << ' ';
      os << t[i];
    }
    factor_lines.push_back(os.str());
  }
  try {
    out.groups.emplace(name, parse_group(factor_lines));
  } catch (const input_error& e) {
    fail(line_no, e.what());
  }
}

Group& group_ref(SpecFile& out, const std::string& name, int line) {
  auto it = out.groups.find(name);
  if (it == out.groups.end()) fail(line, "unknown group '" + name + "'");
  return it->second;
}

void parse_sft_section(Lines& in, const std::string& name, SpecFile& out) {
  std::string group_name;
  std::vector<std::string> alphabet;
  Support window;
  std::set<std::vector<int>> listed;
  bool listed_allowed = true;
  bool in_patterns = false;
  int line_no = 0;
  int header_line = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    if (!in_patterns && t[0] == "group:") {
      if (t.size() != 2) fail(line_no, "group: needs one name");
      group_name = t[1];
      group_ref(out, group_name, line_no);
    } else if (!in_patterns && t[0] == "alphabet:") {
      alphabet.assign(t.begin() + 1, t.end());
      for (const std::string& a : alphabet)
        if (a.find('@') != std::string::npos) fail(line_no, "letter names may not contain '@'");
    } else if (!in_patterns && t[0] == "window:") {
      if (group_name.empty()) fail(line_no, "window before group:");
      std::vector<GroupElement> els;
      for (size_t i = 1; i < t.size(); ++i) {
        try {
          els.push_back(parse_element(group_ref(out, group_name, line_no), t[i]));
        } catch (const input_error& e) {
          fail(line_no, e.what());
        }
      }
      window = sorted_support(std::move(els));
    } else if (t.size() == 1 && (t[0] == "allowed:" || t[0] == "forbidden:")) {
      listed_allowed = (t[0] == "allowed:");
      in_patterns = true;
      header_line = line_no;
      if (group_name.empty() || alphabet.empty() || window.empty())
        fail(line_no, "patterns before group/alphabet/window");
    } else if (in_patterns) {
      // one pattern per line: letter@element pairs covering the window
      std::map<GroupElement, int> assign;
      const Group& g = group_ref(out, group_name, line_no);
      for (const std::string& pair : t) {
        size_t at = pair.find('@');
        if (at == std::string::npos) fail(line_no, "pattern entry needs letter@element");
        std::string letter = pair.substr(0, at);
        int li = -1;
        for (size_t a = 0; a < alphabet.size(); ++a)
          if (alphabet[a] == letter) li = static_cast<int>(a);
        if (li < 0) fail(line_no, "unknown letter '" + letter + "'");
        GroupElement el;
        try {
          el = parse_element(g, pair.substr(at + 1));
        } catch (const input_error& e) {
          fail(line_no, e.what());
        }
        if (!support_contains(window, el))
          fail(line_no, "pattern element " + element_str(el) + " outside the window");
        if (assign.count(el)) fail(line_no, "duplicate pattern element");
        assign[el] = li;
      }
      if (assign.size() != window.size()) fail(line_no, "pattern does not cover the window");
      std::vector<int> tuple;
      for (const GroupElement& w : window) tuple.push_back(assign.at(w));
      listed.insert(std::move(tuple));
    } else {
      fail(line_no, "unexpected '" + t[0] + "' in sft section");
    }
  }
  if (group_name.empty() || alphabet.empty() || window.empty())
    fail(line_no, "sft needs group, alphabet and window");
  std::set<std::vector<int>> allowed;
  if (listed_allowed) {
    allowed = std::move(listed);
  } else {
    // complement within alphabet^window
    double total = std::pow(static_cast<double>(alphabet.size()),
                            static_cast<double>(window.size()));
    if (total > 1e6) fail(header_line, "window too large to complement the forbidden set");
    std::vector<int> tuple(window.size(), 0);
    while (true) {
      if (!listed.count(tuple)) allowed.insert(tuple);
      size_t i = 0;
      while (i < tuple.size() && ++tuple[i] == static_cast<int>(alphabet.size())) {
        tuple[i] = 0;
        ++i;
      }
      if (i == tuple.size()) break;
    }
  }
  try {
    out.sfts.emplace(name, make_sft(group_ref(out, group_name, line_no), alphabet, window,
                                    std::move(allowed)));
    out.sft_group[name] = group_name;
  } catch (const input_error& e) {
    fail(line_no, e.what());
  }
}

void parse_automaton_section(Lines& in, const std::string& name, SpecFile& out) {
  std::string group_name;
  std::vector<std::string> colors;
  std::map<std::pair<int, int>, int> entries;  // (generator, color) -> color
  int line_no = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    if (t[0] == "group:") {
      if (t.size() != 2) fail(line_no, "group: needs one name");
      group_name = t[1];
      group_ref(out, group_name, line_no);
    } else if (t[0] == "colors:") {
      colors.assign(t.begin() + 1, t.end());
    } else if (t[0] == "Omega") {
      if (group_name.empty() || colors.empty()) fail(line_no, "Omega before group/colors");
      if (t.size() != 5 || t[3] != "->") fail(line_no, "Omega <gen> <color> -> <color>");
      const Group& g = group_ref(out, group_name, line_no);
      GroupElement s;
      try {
        s = parse_element(g, t[1]);
      } catch (const input_error& e) {
        fail(line_no, e.what());
      }
      int gi = g.generator_index(s);
      if (gi < 0) fail(line_no, element_str(s) + " is not a generator");
      auto color_of = [&](const std::string& c) {
        for (size_t i = 0; i < colors.size(); ++i)
          if (colors[i] == c) return static_cast<int>(i);
        fail(line_no, "unknown color '" + c + "'");
      };
      int from = color_of(t[2]), to = color_of(t[4]);
      if (entries.count({gi, from})) fail(line_no, "duplicate Omega entry");
      entries[{gi, from}] = to;
    } else {
      fail(line_no, "unexpected '" + t[0] + "' in automaton section");
    }
  }
  if (group_name.empty() || colors.empty()) fail(line_no, "automaton needs group and colors");
  const Group& g = group_ref(out, group_name, line_no);
  std::vector<std::vector<int>> rule(static_cast<size_t>(g.generator_count()),
                                     std::vector<int>(colors.size(), -1));
  for (auto [key, to] : entries)
    rule[static_cast<size_t>(key.first)][static_cast<size_t>(key.second)] = to;
  for (int gi = 0; gi < g.generator_count(); ++gi)
    for (size_t c = 0; c < colors.size(); ++c)
      if (rule[static_cast<size_t>(gi)][c] < 0)
        fail(line_no, "Omega is not total: missing " + element_str(g.generator(gi)) + " on '" +
                          colors[c] + "'");
  out.automata.emplace(name, make_automaton(g, colors, rule));
  out.automaton_group[name] = group_name;
}

void parse_presentation_section(Lines& in, const std::string& name, SpecFile& out) {
  std::vector<std::string> labels;
  int vertices = -1;
  std::set<std::array<int, 3>> edges;
  int line_no = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    if (t[0] == "labels:") {
      labels.assign(t.begin() + 1, t.end());
    } else if (t[0] == "vertices:") {
      if (t.size() != 2) fail(line_no, "vertices: needs a count");
      vertices = std::stoi(t[1]);
    } else if (t[0] == "edge") {
      if (t.size() != 4) fail(line_no, "edge <from> <to> <label>");
      if (labels.empty() || vertices < 0) fail(line_no, "edge before labels/vertices");
      int li = -1;
      for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == t[3]) li = static_cast<int>(i);
      if (li < 0) fail(line_no, "unknown label '" + t[3] + "'");
      int u, v;
      try {
        u = std::stoi(t[1]);
        v = std::stoi(t[2]);
      } catch (const std::exception&) {
        fail(line_no, "bad edge endpoints");
      }
      edges.insert({u, v, li});
    } else {
      fail(line_no, "unexpected '" + t[0] + "' in presentation section");
    }
  }
  if (labels.empty() || vertices < 0) fail(line_no, "presentation needs labels and vertices");
  try {
    out.presentations.emplace(name, make_presentation(labels, vertices, std::move(edges)));
  } catch (const input_error& e) {
    fail(line_no, e.what());
  }
}

void parse_system_section(Lines& in, const std::string& name, SpecFile& out) {
  SpecFile::SystemSpec spec;
  int line_no = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    if (t[0] != "level") fail(line_no, "expected 'level <sft> [map l:p ...]'");
    if (t.size() < 2) fail(line_no, "level needs an sft name");
    auto it = out.sfts.find(t[1]);
    if (it == out.sfts.end()) fail(line_no, "unknown sft '" + t[1] + "'");
    MlLevel level{it->second, std::nullopt};
    if (spec.system.levels.empty()) {
      if (t.size() != 2) fail(line_no, "the first level takes no map");
    } else {
      if (t.size() < 4 || t[2] != "map") fail(line_no, "levels beyond the first need 'map'");
      const Sft& prev = spec.system.levels.back().sft;
      std::vector<int> m(level.sft.alphabet.size(), -1);
      for (size_t i = 3; i < t.size(); ++i) {
        size_t colon = t[i].find(':');
        if (colon == std::string::npos) fail(line_no, "map entries are this:previous");
        int from = level.sft.letter_index(t[i].substr(0, colon));
        int to = prev.letter_index(t[i].substr(colon + 1));
        if (from < 0 || to < 0) fail(line_no, "unknown letter in map entry '" + t[i] + "'");
        m[static_cast<size_t>(from)] = to;
      }
      for (int v : m)
        if (v < 0) fail(line_no, "map is not total on the level alphabet");
      level.bond = make_alphabet_map(level.sft.alphabet, prev.alphabet, m);
    }
    spec.system.levels.push_back(std::move(level));
    spec.level_names.push_back(t[1]);
  }
  if (spec.system.levels.empty()) fail(line_no, "system needs at least one level");
  out.systems.emplace(name, std::move(spec));
}

void parse_orbit_section(Lines& in, const std::string& name, SpecFile& out) {
  std::string sft_name;
  int k = -1, kprime = -1;
  std::vector<std::vector<std::string>> block_lines;
  bool in_blocks = false;
  int line_no = 0;
  while (true) {
    std::vector<std::string> t = section_line(in, &line_no);
    if (t.size() == 1 && t[0] == "end") break;
    if (!in_blocks && t[0] == "sft:") {
      if (t.size() != 2) fail(line_no, "sft: needs one name");
      sft_name = t[1];
    } else if (!in_blocks && t[0] == "k:") {
      k = std::stoi(t[1]);
    } else if (!in_blocks && t[0] == "kprime:") {
      kprime = std::stoi(t[1]);
    } else if (t.size() == 1 && t[0] == "blocks:") {
      in_blocks = true;
    } else if (in_blocks) {
      block_lines.push_back(t);
    } else {
      fail(line_no, "unexpected '" + t[0] + "' in pseudo-orbit section");
    }
  }
  if (sft_name.empty() || k < 0 || kprime < 0) fail(line_no, "pseudo-orbit needs sft, k, kprime");
  auto it = out.sfts.find(sft_name);
  if (it == out.sfts.end()) fail(line_no, "unknown sft '" + sft_name + "'");
  ZRecode zr;
  try {
    zr = z_first_step(it->second);
  } catch (const input_error& e) {
    fail(line_no, e.what());
  }
  if (zr.block_len != 1)
    fail(line_no, "pseudo-orbits need a one-step sft (letters as vertices)");
  std::vector<std::vector<int>> blocks;
  for (const auto& line : block_lines) {
    std::vector<int> b;
    for (const std::string& letter : line) {
      int v = -1;
      for (size_t i = 0; i < zr.graph.names.size(); ++i)
        if (zr.graph.names[i] == letter) v = static_cast<int>(i);
      if (v < 0) fail(line_no, "unknown letter '" + letter + "' in block");
      b.push_back(v);
    }
    blocks.push_back(std::move(b));
  }
  try {
    out.orbits.emplace(
        name, SpecFile::OrbitSpec{sft_name, make_pseudo_orbit(zr.graph, k, kprime, blocks)});
  } catch (const input_error& e) {
    fail(line_no, e.what());
  }
}

}  // namespace

SpecFile parse_spec(const std::string& text) {
  Lines in;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) in.text.push_back(line);
  }
  SpecFile out;
  while (!in.done()) {
    std::string line = in.next();
    if (blank_or_comment(line)) continue;
    int line_no = in.number();
    std::vector<std::string> t = tokens(line);
    if (t.size() >= 2 && t[0] == "group") {
      if (t.size() >= 4 && t[2] == "=") {
        // inline form: group G = Z * cyclic 3
        std::vector<std::string> factor_lines;
        std::vector<std::string> cur;
        for (size_t i = 3; i < t.size(); ++i) {
          if (t[i] == "*") {
            if (cur.empty()) fail(line_no, "dangling '*' in group header");
            std::ostringstream os;
            for (size_t j = 0; j < cur.size(); ++j) os << (j ? " " : "") << cur[j];
            factor_lines.push_back(os.str());
            cur.clear();
          } else {
            cur.push_back(t[i]);
          }
        }
        if (cur.empty()) fail(line_no, "dangling '*' in group header");
        std::ostringstream os;
        for (size_t j = 0; j < cur.size(); ++j) os << (j ? " " : "") << cur[j];
        factor_lines.push_back(os.str());
        try {
          out.groups.emplace(t[1], parse_group(factor_lines));
        } catch (const input_error& e) {
          fail(line_no, e.what());
        }
      } else if (t.size() == 2) {
        parse_group_section(in, t[1], out);
      } else {
        fail(line_no, "group header is 'group <name>' or 'group <name> = ...'");
      }
    } else if (t.size() == 2 && t[0] == "sft") {
      parse_sft_section(in, t[1], out);
    } else if (t.size() == 2 && t[0] == "automaton") {
      parse_automaton_section(in, t[1], out);
    } else if (t.size() == 2 && t[0] == "presentation") {
      parse_presentation_section(in, t[1], out);
    } else if (t.size() == 2 && t[0] == "system") {
      parse_system_section(in, t[1], out);
    } else if (t.size() == 2 && t[0] == "pseudo-orbit") {
      parse_orbit_section(in, t[1], out);
    } else {
      fail(line_no, "unknown section '" + t[0] + "'");
    }
  }
  return out;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return parse_spec(os.str());
}

std::string serialize_spec(const SpecFile& f) {
  std::ostringstream os;
  for (const auto& [name, g] : f.groups) {
    os << "group " << name << "\n";
    for (const std::string& line : group_factor_lines(g)) os << "  " << line << "\n";
    os << "end\n\n";
  }
  for (const auto& [name, x] : f.sfts) {
    os << "sft " << name << "\n";
    os << "  group: " << f.sft_group.at(name) << "\n";
    os << "  alphabet:";
    for (const std::string& a : x.alphabet) os << ' ' << a;
    os << "\n  window:";
    for (const GroupElement& w : x.window) os << ' ' << element_str(w);
    os << "\n  allowed:\n";
    for (const std::vector<int>& tuple : x.allowed) {
      os << "   ";
      for (size_t i = 0; i < tuple.size(); ++i)
        os << ' ' << x.alphabet[static_cast<size_t>(tuple[i])] << '@'
           << element_str(x.window[i]);
      os << "\n";
    }
    os << "end\n\n";
  }
  for (const auto& [name, a] : f.automata) {
    os << "automaton " << name << "\n";
    os << "  group: " << f.automaton_group.at(name) << "\n";
    os << "  colors:";
    for (const std::string& c : a.colors) os << ' ' << c;
    os << "\n";
    for (int gi = 0; gi < a.group.generator_count(); ++gi)
      for (size_t c = 0; c < a.colors.size(); ++c)
        os << "  Omega " << element_str(a.group.generator(gi)) << ' ' << a.colors[c] << " -> "
           << a.colors[static_cast<size_t>(a.rule[static_cast<size_t>(gi)][c])] << "\n";
    os << "end\n\n";
  }
  for (const auto& [name, p] : f.presentations) {
    os << "presentation " << name << "\n";
    os << "  labels:";
    for (const std::string& l : p.labels) os << ' ' << l;
    os << "\n  vertices: " << p.vertex_count << "\n";
    for (const auto& [u, v, l] : p.edges)
      os << "  edge " << u << ' ' << v << ' ' << p.labels[static_cast<size_t>(l)] << "\n";
    os << "end\n\n";
  }
  for (const auto& [name, s] : f.systems) {
    os << "system " << name << "\n";
    for (size_t i = 0; i < s.level_names.size(); ++i) {
      os << "  level " << s.level_names[i];
      if (i > 0) {
        os << " map";
        const MlLevel& lev = s.system.levels[i];
        for (size_t a = 0; a < lev.bond->source.size(); ++a)
          os << ' ' << lev.bond->source[a] << ':'
             << lev.bond->target[static_cast<size_t>(lev.bond->map[a])];
      }
      os << "\n";
    }
    os << "end\n\n";
  }
  for (const auto& [name, o] : f.orbits) {
    os << "pseudo-orbit " << name << "\n";
    os << "  sft: " << o.sft_name << "\n";
    os << "  k: " << o.orbit.k << "\n";
    os << "  kprime: " << o.orbit.kprime << "\n";
    os << "  blocks:\n";
    for (const std::vector<int>& b : o.orbit.blocks) {
      os << "   ";
      for (int v : b) os << ' ' << o.orbit.graph.names[static_cast<size_t>(v)];
      os << "\n";
    }
    os << "end\n\n";
  }
  return os.str();
}

}  // namespace sds
