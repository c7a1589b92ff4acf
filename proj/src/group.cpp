#include "sds/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace sds {

FactorSpec FactorSpec::infinite_cyclic() {
  FactorSpec f;
  f.kind = Kind::InfiniteCyclic;
  return f;
}

FactorSpec FactorSpec::cyclic(int n) {
  if (n < 2) throw input_error("cyclic factor needs order >= 2");
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i * n + j] = (i + j) % n;
  return finite_table(n, std::move(t));
}

FactorSpec FactorSpec::finite_table(int n, std::vector<int> table) {
  if (n < 2) throw input_error("finite factor needs order >= 2");
  if (table.size() != static_cast<size_t>(n) * n)
    throw input_error("multiplication table has wrong size");
  for (int v : table)
    if (v < 0 || v >= n) throw input_error("table entry out of range");
  FactorSpec f;
  f.kind = Kind::Finite;
  f.order = n;
  f.table = std::move(table);
  for (int i = 0; i < n; ++i) {
    if (f.mul(0, i) != i || f.mul(i, 0) != i)
      throw input_error("table index 0 is not an identity");
  }
  // Latin square: rows and columns are permutations.
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (int j = 0; j < n; ++j) {
      if (row[f.mul(i, j)]) throw input_error("table row is not a permutation");
      row[f.mul(i, j)] = true;
      if (col[f.mul(j, i)]) throw input_error("table column is not a permutation");
      col[f.mul(j, i)] = true;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (f.mul(f.mul(i, j), k) != f.mul(i, f.mul(j, k)))
          throw input_error("multiplication table is not associative");
  return f;
}

int FactorSpec::inv(int a) const {
  for (int b = 0; b < order; ++b)
    if (mul(a, b) == 0) return b;
  throw input_error("element has no inverse in table");  // unreachable after validation
}

Group::Group(std::vector<FactorSpec> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw input_error("group needs at least one factor");
  for (size_t i = 0; i < factors_.size(); ++i) {
    const FactorSpec& f = factors_[i];
    if (f.finite()) {
      for (int v = 1; v < f.order; ++v)
        generators_.push_back(GroupElement{{Syllable{static_cast<int>(i), v}}});
    } else {
      generators_.push_back(GroupElement{{Syllable{static_cast<int>(i), 1}}});
      generators_.push_back(GroupElement{{Syllable{static_cast<int>(i), -1}}});
    }
  }
}

int Group::generator_index(const GroupElement& s) const {
  for (size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i] == s) return static_cast<int>(i);
  return -1;
}

int Group::inverse_generator(int gi) const {
  int idx = generator_index(inverse(generators_[gi]));
  if (idx < 0) throw input_error("generator inverse missing");
  return idx;
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  std::vector<Syllable> out = a.syllables;
  for (const Syllable& s : b.syllables) {
    if (s.factor < 0 || s.factor >= static_cast<int>(factors_.size()))
      throw input_error("syllable factor index out of range");
    Syllable cur = s;
    while (true) {
      if (out.empty() || out.back().factor != cur.factor) {
        out.push_back(cur);
        break;
      }
      const FactorSpec& f = factors_[cur.factor];
      if (f.finite()) {
        int v = f.mul(out.back().value, cur.value);
        out.pop_back();
        if (v == 0) break;
        cur.value = v;
      } else {
        long long v = static_cast<long long>(out.back().value) + cur.value;
        out.pop_back();
        if (v == 0) break;
        cur.value = static_cast<int>(v);
      }
    }
  }
  return GroupElement{std::move(out)};
}

GroupElement Group::inverse(const GroupElement& a) const {
  std::vector<Syllable> out;
  out.reserve(a.syllables.size());
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it) {
    const FactorSpec& f = factors_[it->factor];
    int v = f.finite() ? f.inv(it->value) : -it->value;
    out.push_back(Syllable{it->factor, v});
  }
  return GroupElement{std::move(out)};
}

int Group::word_length(const GroupElement& a) const {
  int len = 0;
  for (const Syllable& s : a.syllables) {
    const FactorSpec& f = factors_[s.factor];
    len += f.finite() ? 1 : std::abs(s.value);
  }
  return len;
}

bool Group::single_z() const {
  return factors_.size() == 1 && !factors_[0].finite();
}

bool Group::operator==(const Group& other) const {
  if (factors_.size() != other.factors_.size()) return false;
  for (size_t i = 0; i < factors_.size(); ++i) {
    const FactorSpec& a = factors_[i];
    const FactorSpec& b = other.factors_[i];
    if (a.kind != b.kind || a.order != b.order || a.table != b.table) return false;
  }
  return true;
}

GroupElement identity_element() { return GroupElement{}; }

Support ball(const Group& g, int radius) {
  if (radius < 0) throw input_error("ball radius must be >= 0");
  std::set<GroupElement> seen;
  seen.insert(identity_element());
  std::deque<GroupElement> frontier{identity_element()};
  while (!frontier.empty()) {
    GroupElement cur = frontier.front();
    frontier.pop_front();
    if (g.word_length(cur) >= radius) continue;
    for (const GroupElement& s : g.generators()) {
      GroupElement next = g.multiply(cur, s);
      if (g.word_length(next) > radius) continue;
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  return Support(seen.begin(), seen.end());
}

bool support_contains(const Support& s, const GroupElement& g) {
  return std::binary_search(s.begin(), s.end(), g);
}

Support sorted_support(std::vector<GroupElement> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

Support translate_support(const Group& g, const GroupElement& t, const Support& s) {
  std::vector<GroupElement> out;
  out.reserve(s.size());
  for (const GroupElement& e : s) out.push_back(g.multiply(t, e));
  return sorted_support(std::move(out));
}

std::string element_str(const GroupElement& e) {
  if (e.is_identity()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < e.syllables.size(); ++i) {
    if (i) os << '.';
    os << e.syllables[i].factor << ':' << e.syllables[i].value;
  }
  return os.str();
}

GroupElement parse_element(const Group& g, const std::string& text) {
  if (text.empty()) throw input_error("empty element text");
  if (text == "e") return identity_element();
  auto parse_int = [](const std::string& s) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw input_error("bad integer in element: '" + s + "'");
    }
    if (pos != s.size()) throw input_error("bad integer in element: '" + s + "'");
    return v;
  };
  std::vector<Syllable> syls;
  if (text.find(':') == std::string::npos) {
    // Shorthand for single-factor groups: a bare value.
    if (g.factors().size() != 1)
      throw input_error("bare element value only allowed for single-factor groups");
    int v = parse_int(text);
    if (v == 0) return identity_element();
    syls.push_back(Syllable{0, v});
  } else {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '.')) {
      size_t colon = part.find(':');
      if (colon == std::string::npos)
        throw input_error("syllable missing ':' in element '" + text + "'");
      syls.push_back(Syllable{parse_int(part.substr(0, colon)),
                              parse_int(part.substr(colon + 1))});
    }
  }
  // Validate and normalize: multiply syllables out one at a time.
  GroupElement out;
  for (const Syllable& s : syls) {
    if (s.factor < 0 || s.factor >= static_cast<int>(g.factors().size()))
      throw input_error("factor index out of range in element '" + text + "'");
    const FactorSpec& f = g.factors()[s.factor];
    if (f.finite() && (s.value < 0 || s.value >= f.order))
      throw input_error("finite-factor value out of range in element '" + text + "'");
    if (s.value == 0) continue;
    out = g.multiply(out, GroupElement{{s}});
  }
  return out;
}

Group parse_group(const std::vector<std::string>& factor_lines) {
  std::vector<FactorSpec> factors;
  for (const std::string& line : factor_lines) {
    std::istringstream is(line);
    std::string head;
    is >> head;
    if (head == "Z") {
      factors.push_back(FactorSpec::infinite_cyclic());
    } else if (head == "cyclic") {
      int n;
      if (!(is >> n)) throw input_error("cyclic factor needs an order");
      factors.push_back(FactorSpec::cyclic(n));
    } else if (head == "table") {
      int n;
      if (!(is >> n)) throw input_error("table factor needs an order");
      std::vector<int> t;
      int v;
      while (is >> v) t.push_back(v);
      factors.push_back(FactorSpec::finite_table(n, std::move(t)));
    } else {
      throw input_error("unknown factor kind '" + head + "'");
    }
    std::string trailing;
    if (is >> trailing) throw input_error("trailing text after factor: '" + trailing + "'");
  }
  return Group(factors);
}

std::vector<std::string> group_factor_lines(const Group& g) {
  std::vector<std::string> lines;
  for (const FactorSpec& f : g.factors()) {
    if (!f.finite()) {
      lines.push_back("Z");
      continue;
    }
    // Emit the cyclic shorthand when the table is the cyclic one.
    bool is_cyclic = true;
    for (int i = 0; i < f.order && is_cyclic; ++i)
      for (int j = 0; j < f.order; ++j)
        if (f.mul(i, j) != (i + j) % f.order) {
          is_cyclic = false;
          break;
        }
    if (is_cyclic) {
      lines.push_back("cyclic " + std::to_string(f.order));
    } else {
      std::ostringstream os;
      os << "table " << f.order;
      for (int v : f.table) os << ' ' << v;
      lines.push_back(os.str());
    }
  }
  return lines;
}

Group free_product_group(const Group& g, const Group& h, int* h_offset) {
  std::vector<FactorSpec> factors = g.factors();
  if (h_offset) *h_offset = static_cast<int>(factors.size());
  for (const FactorSpec& f : h.factors()) factors.push_back(f);
  return Group(factors);
}

GroupElement embed_element(const GroupElement& e, int factor_offset) {
  GroupElement out = e;
  for (Syllable& s : out.syllables) s.factor += factor_offset;
  return out;
}

}  // namespace sds
