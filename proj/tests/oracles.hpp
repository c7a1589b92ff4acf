// Brute-force oracles used by the test suites. These stay deliberately
// simple and independent of the library's enumeration machinery: plain
// products, string filters, and naive backtracking in canonical support
// order with full constraint re-checks.
#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "sds/pattern.hpp"
#include "sds/sft.hpp"

namespace oracles {

// All length-n words over an alphabet of the given size.
inline std::vector<std::vector<int>> all_words(int alphabet, int n) {
  std::vector<std::vector<int>> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out)
      for (int a = 0; a < alphabet; ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline bool contains_factor(const std::vector<int>& w, const std::vector<int>& f) {
  if (f.size() > w.size()) return false;
  for (size_t i = 0; i + f.size() <= w.size(); ++i)
    if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
  return false;
}

// Globally admissible length-n words of a Z-SFT given by forbidden factors:
// enumerate padded words and keep the middles.
inline std::set<std::vector<int>> z_words_brute(int alphabet, int n, int pad,
                                                const std::vector<std::vector<int>>& forbidden) {
  std::set<std::vector<int>> out;
  for (const auto& w : all_words(alphabet, n + 2 * pad)) {
    bool ok = true;
    for (const auto& f : forbidden)
      if (contains_factor(w, f)) {
        ok = false;
        break;
      }
    if (ok) out.insert(std::vector<int>(w.begin() + pad, w.begin() + pad + n));
  }
  return out;
}

// Naive extension oracle: enumerates patterns on `target` that admit at least
// one completion on the margin extension, assigning positions in canonical
// support order and rechecking every complete window translate each time.
inline std::set<std::vector<int>> admissible_tuples_brute(const sds::Sft& x,
                                                          const sds::Support& target, int margin) {
  using namespace sds;
  Support b = ball(x.group, margin);
  std::vector<GroupElement> extv;
  for (const GroupElement& g : target)
    for (const GroupElement& d : b) extv.push_back(x.group.multiply(g, d));
  Support ext = sorted_support(std::move(extv));

  // Stars: window translates fully inside ext, as index tuples.
  std::vector<std::vector<int>> stars;
  {
    std::set<GroupElement> cands;
    for (const GroupElement& h : ext)
      for (const GroupElement& w : x.window) cands.insert(x.group.multiply(h, x.group.inverse(w)));
    for (const GroupElement& g : cands) {
      std::vector<int> star;
      bool inside = true;
      for (const GroupElement& w : x.window) {
        GroupElement p = x.group.multiply(g, w);
        auto it = std::lower_bound(ext.begin(), ext.end(), p);
        if (it == ext.end() || *it != p) {
          inside = false;
          break;
        }
        star.push_back(static_cast<int>(it - ext.begin()));
      }
      if (inside) stars.push_back(std::move(star));
    }
  }
  std::vector<int> target_idx;
  for (const GroupElement& g : target)
    target_idx.push_back(static_cast<int>(
        std::lower_bound(ext.begin(), ext.end(), g) - ext.begin()));

  std::vector<int> assign(ext.size(), -1);
  // A star is satisfiable when some allowed tuple agrees with every slot
  // assigned so far (covers complete stars as exact membership).
  auto consistent = [&]() {
    for (const auto& star : stars) {
      bool supported = false;
      for (const auto& tuple : x.allowed) {
        bool match = true;
        for (size_t k = 0; k < star.size(); ++k)
          if (assign[star[k]] >= 0 && assign[star[k]] != tuple[k]) {
            match = false;
            break;
          }
        if (match) {
          supported = true;
          break;
        }
      }
      if (!supported) return false;
    }
    return true;
  };
  std::set<std::vector<int>> found;
  // Enumerate target tuples directly, then ask for any completion.
  std::vector<int> tvals(target.size(), 0);
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == target.size()) {
      for (size_t k = 0; k < target.size(); ++k) assign[target_idx[k]] = tvals[k];
      if (consistent()) {
        // fill remaining positions
        std::vector<int> order;
        for (size_t k = 0; k < ext.size(); ++k)
          if (assign[k] < 0) order.push_back(static_cast<int>(k));
        std::function<bool(size_t)> fill = [&](size_t j) -> bool {
          if (j == order.size()) return true;
          for (int a = 0; a < static_cast<int>(x.alphabet.size()); ++a) {
            assign[order[j]] = a;
            if (consistent() && fill(j + 1)) {
              assign[order[j]] = -1;
              return true;
            }
            assign[order[j]] = -1;
          }
          return false;
        };
        if (fill(0)) found.insert(tvals);
      }
      for (size_t k = 0; k < target.size(); ++k) assign[target_idx[k]] = -1;
      return;
    }
    for (int a = 0; a < static_cast<int>(x.alphabet.size()); ++a) {
      tvals[i] = a;
      walk(i + 1);
    }
  };
  walk(0);
  return found;
}

inline std::set<std::vector<int>> pattern_tuples(const std::vector<sds::Pattern>& ps) {
  std::set<std::vector<int>> out;
  for (const auto& p : ps) out.insert(p.letters);
  return out;
}

// Word predicates for named sofic shifts.
inline bool at_most_one_one(const std::vector<int>& w) {
  int ones = 0;
  for (int a : w) ones += (a == 1);
  return ones <= 1;
}

inline bool even_shift_word(const std::vector<int>& w) {
  // 1s separated by even runs of 0s; boundary runs unconstrained.
  int run = 0;
  bool seen_one = false;
  for (int a : w) {
    if (a == 1) {
      if (seen_one && run % 2 != 0) return false;
      seen_one = true;
      run = 0;
    } else {
      ++run;
    }
  }
  return true;
}

inline long long fib_count(int n) {
  // number of no-11 binary words of length n: F(n+2) with F(1)=F(2)=1
  long long a = 1, b = 1;
  for (int i = 0; i < n; ++i) {
    long long c = a + b;
    a = b;
    b = c;
  }
  return b;
}

}  // namespace oracles
