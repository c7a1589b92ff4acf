#include "sds/sft.hpp"

#include <algorithm>
#include <map>

namespace sds {

int Sft::letter_index(const std::string& name) const {
  for (size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == name) return static_cast<int>(i);
  return -1;
}

Sft make_sft(Group group, std::vector<std::string> alphabet, Support window,
             std::set<std::vector<int>> allowed) {
  if (alphabet.empty()) throw input_error("sft needs a nonempty alphabet");
  if (window.empty()) throw input_error("sft needs a nonempty window");
  if (!std::is_sorted(window.begin(), window.end()) ||
      std::adjacent_find(window.begin(), window.end()) != window.end())
    throw input_error("sft window must be sorted and duplicate-free");
  for (const auto& t : allowed) {
    if (t.size() != window.size()) throw input_error("allowed tuple has wrong arity");
    for (int l : t)
      if (l < 0 || l >= static_cast<int>(alphabet.size()))
        throw input_error("allowed tuple letter out of range");
  }
  return Sft{std::move(group), std::move(alphabet), std::move(window), std::move(allowed)};
}

namespace {

// Candidate translates g with g*window inside the given sorted support.
std::vector<GroupElement> window_translates(const Sft& x, const Support& supp) {
  std::set<GroupElement> candidates;
  for (const GroupElement& h : supp)
    for (const GroupElement& w : x.window)
      candidates.insert(x.group.multiply(h, x.group.inverse(w)));
  std::vector<GroupElement> out;
  for (const GroupElement& g : candidates) {
    bool inside = true;
    for (const GroupElement& w : x.window)
      if (!support_contains(supp, x.group.multiply(g, w))) {
        inside = false;
        break;
      }
    if (inside) out.push_back(g);
  }
  return out;
}

}  // namespace

bool locally_admissible(const Sft& x, const Pattern& p) {
  if (p.alphabet_size != static_cast<int>(x.alphabet.size()))
    throw input_error("pattern alphabet does not match sft alphabet");
  std::vector<int> tuple(x.window.size());
  for (const GroupElement& g : window_translates(x, p.support)) {
    for (size_t i = 0; i < x.window.size(); ++i)
      tuple[i] = p.at(x.group.multiply(g, x.window[i]));
    if (!x.allowed.count(tuple)) return false;
  }
  return true;
}

namespace {

// Depth-first enumeration of patterns on a target support together with an
// extendability check over a larger support. Positions are ordered by word
// length. Pruning: pairwise slot projections of the allowed set at every
// assignment (plus a full subset scan when the allowed set is small), and an
// exact membership check when a window translate becomes fully assigned.
struct Enumerator {
  const Sft& x;
  int nletters;
  size_t wsize;
  std::vector<GroupElement> positions;  // target first, then extension
  size_t target_count = 0;
  std::vector<std::vector<int>> allowed_v;
  bool full_scan;  // joint partial-star scan worthwhile for small allowed sets
  std::vector<std::vector<int>> stars;  // positions of g*window, window-aligned
  // (star id, slot of the position within the star) per position
  std::vector<std::vector<std::pair<int, int>>> stars_with;
  std::vector<int> star_assigned;
  std::vector<char> pair_ok;  // [k][l][a][b] projection of allowed onto slots (k,l)
  long long budget;
  std::vector<int> assign;
  std::set<std::vector<int>> found;

  Enumerator(const Sft& sft, const Support& target, const Support& ext, long long node_budget)
      : x(sft),
        nletters(static_cast<int>(sft.alphabet.size())),
        wsize(sft.window.size()),
        allowed_v(sft.allowed.begin(), sft.allowed.end()),
        budget(node_budget) {
    full_scan = allowed_v.size() <= 48;
    auto by_length = [&](const Support& s, const Support& skip) {
      std::vector<GroupElement> v;
      for (const GroupElement& g : s)
        if (skip.empty() || !support_contains(skip, g)) v.push_back(g);
      std::stable_sort(v.begin(), v.end(), [&](const GroupElement& a, const GroupElement& b) {
        int la = x.group.word_length(a), lb = x.group.word_length(b);
        return la != lb ? la < lb : a < b;
      });
      return v;
    };
    positions = by_length(target, {});
    target_count = positions.size();
    for (const GroupElement& g : by_length(ext, target)) positions.push_back(g);

    std::map<GroupElement, int> index;
    for (size_t i = 0; i < positions.size(); ++i) index[positions[i]] = static_cast<int>(i);
    stars_with.resize(positions.size());
    for (const GroupElement& g : window_translates(x, ext)) {
      std::vector<int> star;
      for (const GroupElement& w : x.window) star.push_back(index.at(x.group.multiply(g, w)));
      for (size_t k = 0; k < star.size(); ++k)
        stars_with[star[k]].emplace_back(static_cast<int>(stars.size()), static_cast<int>(k));
      stars.push_back(std::move(star));
    }
    star_assigned.assign(stars.size(), 0);

    pair_ok.assign(wsize * wsize * nletters * nletters, 0);
    for (const std::vector<int>& t : allowed_v)
      for (size_t k = 0; k < wsize; ++k)
        for (size_t l = 0; l < wsize; ++l)
          pair_ok[((k * wsize + l) * nletters + t[k]) * nletters + t[l]] = 1;
    assign.assign(positions.size(), -1);
  }

  bool pair_check(int si, int slot) {
    const std::vector<int>& star = stars[si];
    int a = assign[star[slot]];
    for (size_t l = 0; l < wsize; ++l) {
      int b = assign[star[l]];
      if (b < 0 || static_cast<int>(l) == slot) continue;
      if (!pair_ok[((static_cast<size_t>(slot) * wsize + l) * nletters + a) * nletters + b])
        return false;
    }
    return true;
  }

  bool joint_check(int si) {
    const std::vector<int>& star = stars[si];
    for (const std::vector<int>& tuple : allowed_v) {
      bool match = true;
      for (size_t k = 0; k < wsize; ++k) {
        int a = assign[star[k]];
        if (a >= 0 && a != tuple[k]) {
          match = false;
          break;
        }
      }
      if (match) return true;
    }
    return false;
  }

  // Called after assigning position i; star_assigned already bumped.
  bool stars_ok(size_t i) {
    for (auto [si, slot] : stars_with[i]) {
      if (!pair_check(si, slot)) return false;
      if (star_assigned[si] == static_cast<int>(wsize)) {
        std::vector<int> tuple(wsize);
        for (size_t k = 0; k < wsize; ++k) tuple[k] = assign[stars[si][k]];
        if (!x.allowed.count(tuple)) return false;
      } else if (full_scan && !joint_check(si)) {
        return false;
      }
    }
    return true;
  }

  void spend() {
    if (--budget < 0) throw budget_error("pattern enumeration budget exhausted");
  }

  void put(size_t i, int letter) {
    assign[i] = letter;
    for (auto [si, slot] : stars_with[i]) ++star_assigned[si];
  }

  void unput(size_t i) {
    assign[i] = -1;
    for (auto [si, slot] : stars_with[i]) --star_assigned[si];
  }

  bool extendable(size_t i) {
    if (i == positions.size()) return true;
    for (int letter = 0; letter < nletters; ++letter) {
      spend();
      put(i, letter);
      if (stars_ok(i) && extendable(i + 1)) {
        unput(i);
        return true;
      }
      unput(i);
    }
    return false;
  }

  void enumerate(size_t i) {
    if (i == target_count) {
      if (extendable(i))
        found.insert(std::vector<int>(assign.begin(), assign.begin() + target_count));
      return;
    }
    for (int letter = 0; letter < nletters; ++letter) {
      spend();
      put(i, letter);
      if (stars_ok(i)) enumerate(i + 1);
      unput(i);
    }
  }
};

std::vector<Pattern> run_enumeration(const Sft& x, const Support& target, const Support& ext,
                                     long long node_budget) {
  Enumerator en(x, target, ext, node_budget);
  en.enumerate(0);
  // Repackage tuples (in enumeration order) as canonical patterns.
  std::vector<Pattern> out;
  for (const std::vector<int>& tuple : en.found) {
    std::vector<std::pair<GroupElement, int>> entries;
    for (size_t i = 0; i < en.target_count; ++i) entries.emplace_back(en.positions[i], tuple[i]);
    std::sort(entries.begin(), entries.end());
    Pattern p;
    p.alphabet_size = static_cast<int>(x.alphabet.size());
    for (auto& [g, l] : entries) {
      p.support.push_back(g);
      p.letters.push_back(l);
    }
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Support margin_extension(const Sft& x, const Support& target, int margin) {
  if (margin == 0) return target;
  Support b = ball(x.group, margin);
  std::vector<GroupElement> ext;
  for (const GroupElement& g : target)
    for (const GroupElement& d : b) ext.push_back(x.group.multiply(g, d));
  return sorted_support(std::move(ext));
}

}  // namespace

std::vector<Pattern> admissible_on(const Sft& x, const Support& target, int margin,
                                   long long node_budget) {
  if (margin < 0) throw input_error("margin must be >= 0");
  return run_enumeration(x, target, margin_extension(x, target, margin), node_budget);
}

GlobalPatterns global_patterns(const Sft& x, int radius, int margin, long long node_budget) {
  if (radius < 0) throw input_error("radius must be >= 0");
  Support target = ball(x.group, radius);
  GlobalPatterns out;
  out.patterns = admissible_on(x, target, margin, node_budget);
  if (margin >= 1) {
    std::vector<Pattern> prev = admissible_on(x, target, margin - 1, node_budget);
    out.stabilized = (prev == out.patterns);
  }
  return out;
}

std::set<std::vector<int>> z_language(const Sft& x, int len) {
  if (!x.group.single_z()) throw input_error("z_language needs a group with a single Z factor");
  if (len <= 0) return {};
  // Interval target [0, len); pumping margin = number of window tuples + hull.
  int lo = 0, hi = 0;
  for (const GroupElement& w : x.window) {
    int v = w.is_identity() ? 0 : w.syllables[0].value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  int hull = hi - lo + 1;
  int margin = static_cast<int>(x.allowed.size()) + hull + 1;
  std::vector<GroupElement> target;
  for (int i = 0; i < len; ++i)
    target.push_back(i == 0 ? identity_element() : GroupElement{{Syllable{0, i}}});
  Support t = sorted_support(std::move(target));
  std::set<std::vector<int>> words;
  for (const Pattern& p : admissible_on(x, t, margin)) {
    std::vector<int> w(len);
    for (int i = 0; i < len; ++i)
      w[i] = p.at(i == 0 ? identity_element() : GroupElement{{Syllable{0, i}}});
    words.insert(std::move(w));
  }
  return words;
}

namespace {

// Allowed tuples on the union window from two windows' tuple sets, agreeing
// on shared elements.
std::set<std::vector<int>> merge_allowed(const Support& union_window, const Support& wx,
                                         const std::set<std::vector<int>>& ax, const Support& wy,
                                         const std::set<std::vector<int>>& ay) {
  std::vector<int> xpos, ypos;
  for (const GroupElement& e : wx)
    xpos.push_back(static_cast<int>(std::lower_bound(union_window.begin(), union_window.end(), e) -
                                    union_window.begin()));
  for (const GroupElement& e : wy)
    ypos.push_back(static_cast<int>(std::lower_bound(union_window.begin(), union_window.end(), e) -
                                    union_window.begin()));
  std::set<std::vector<int>> out;
  for (const auto& a : ax) {
    for (const auto& b : ay) {
      std::vector<int> tuple(union_window.size(), -1);
      bool ok = true;
      for (size_t i = 0; i < xpos.size(); ++i) tuple[xpos[i]] = a[i];
      for (size_t i = 0; i < ypos.size(); ++i) {
        if (tuple[ypos[i]] >= 0 && tuple[ypos[i]] != b[i]) {
          ok = false;
          break;
        }
        tuple[ypos[i]] = b[i];
      }
      if (ok) out.insert(std::move(tuple));
    }
  }
  return out;
}

}  // namespace

Sft free_product(const Sft& x, const Sft& y) {
  if (x.alphabet != y.alphabet)
    throw input_error("free product factors must share an alphabet");
  int offset = 0;
  Group g = free_product_group(x.group, y.group, &offset);
  Support wy;
  for (const GroupElement& e : y.window) wy.push_back(embed_element(e, offset));
  wy = sorted_support(std::move(wy));
  std::vector<GroupElement> uw = x.window;
  for (const GroupElement& e : wy) uw.push_back(e);
  Support union_window = sorted_support(std::move(uw));
  std::set<std::vector<int>> allowed =
      merge_allowed(union_window, x.window, x.allowed, wy, y.allowed);
  return make_sft(g, x.alphabet, union_window, std::move(allowed));
}

Sft restricted_free_product(const Sft& x, const Sft& y, const std::vector<int>& phi0,
                            const std::vector<int>& psi0) {
  if (phi0.size() != x.alphabet.size() || psi0.size() != y.alphabet.size())
    throw input_error("alphabet map arity mismatch");
  // Restricted alphabet {(b,c) : phi0(b) = psi0(c)}.
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::string> names;
  for (size_t b = 0; b < x.alphabet.size(); ++b)
    for (size_t c = 0; c < y.alphabet.size(); ++c)
      if (phi0[b] == psi0[c]) {
        pairs.emplace_back(static_cast<int>(b), static_cast<int>(c));
        names.push_back("(" + x.alphabet[b] + "," + y.alphabet[c] + ")");
      }
  if (pairs.empty()) throw input_error("restricted product alphabet is empty");

  int offset = 0;
  Group g = free_product_group(x.group, y.group, &offset);
  Support wy;
  for (const GroupElement& e : y.window) wy.push_back(embed_element(e, offset));
  wy = sorted_support(std::move(wy));
  std::vector<GroupElement> uw = x.window;
  for (const GroupElement& e : wy) uw.push_back(e);
  Support union_window = sorted_support(std::move(uw));

  std::vector<int> xpos, ypos;
  for (const GroupElement& e : x.window)
    xpos.push_back(static_cast<int>(std::lower_bound(union_window.begin(), union_window.end(), e) -
                                    union_window.begin()));
  for (const GroupElement& e : wy)
    ypos.push_back(static_cast<int>(std::lower_bound(union_window.begin(), union_window.end(), e) -
                                    union_window.begin()));

  std::set<std::vector<int>> allowed;
  std::vector<int> tuple(union_window.size(), 0);
  // Enumerate pair tuples, keeping those whose projections are allowed.
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == tuple.size()) {
      std::vector<int> bx(xpos.size()), cy(ypos.size());
      for (size_t k = 0; k < xpos.size(); ++k) bx[k] = pairs[tuple[xpos[k]]].first;
      for (size_t k = 0; k < ypos.size(); ++k) cy[k] = pairs[tuple[ypos[k]]].second;
      if (x.allowed.count(bx) && y.allowed.count(cy)) allowed.insert(tuple);
      return;
    }
    for (size_t v = 0; v < pairs.size(); ++v) {
      tuple[i] = static_cast<int>(v);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return make_sft(g, names, union_window, std::move(allowed));
}

std::pair<std::string, std::string> rfp_letter_components(const std::string& name) {
  if (name.size() < 3 || name.front() != '(' || name.back() != ')')
    throw input_error("letter is not a restricted-product pair: " + name);
  size_t comma = name.find(',');
  if (comma == std::string::npos)
    throw input_error("letter is not a restricted-product pair: " + name);
  return {name.substr(1, comma - 1), name.substr(comma + 1, name.size() - comma - 2)};
}

}  // namespace sds
