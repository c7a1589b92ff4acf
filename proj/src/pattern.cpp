#include "sds/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sds {

std::optional<int> Pattern::find(const GroupElement& g) const {
  auto it = std::lower_bound(support.begin(), support.end(), g);
  if (it == support.end() || *it != g) return std::nullopt;
  return letters[static_cast<size_t>(it - support.begin())];
}

int Pattern::at(const GroupElement& g) const {
  auto v = find(g);
  if (!v) throw input_error("pattern has no value at " + element_str(g));
  return *v;
}

Pattern make_pattern(Support support, std::vector<int> letters, int alphabet_size) {
  if (support.size() != letters.size())
    throw input_error("pattern support/letters size mismatch");
  if (!std::is_sorted(support.begin(), support.end()))
    throw input_error("pattern support must be sorted");
  if (std::adjacent_find(support.begin(), support.end()) != support.end())
    throw input_error("pattern support has duplicates");
  for (int l : letters)
    if (l < 0 || l >= alphabet_size) throw input_error("pattern letter out of range");
  return Pattern{std::move(support), std::move(letters), alphabet_size};
}

Pattern translate(const Group& grp, const GroupElement& g, const Pattern& p) {
  std::vector<std::pair<GroupElement, int>> moved;
  moved.reserve(p.support.size());
  for (size_t i = 0; i < p.support.size(); ++i)
    moved.emplace_back(grp.multiply(g, p.support[i]), p.letters[i]);
  std::sort(moved.begin(), moved.end());
  Pattern out;
  out.alphabet_size = p.alphabet_size;
  out.support.reserve(moved.size());
  out.letters.reserve(moved.size());
  for (auto& [el, letter] : moved) {
    out.support.push_back(std::move(el));
    out.letters.push_back(letter);
  }
  return out;
}

Pattern restrict_to(const Pattern& p, const Support& s) {
  Pattern out;
  out.alphabet_size = p.alphabet_size;
  out.support = s;
  out.letters.reserve(s.size());
  for (const GroupElement& g : s) out.letters.push_back(p.at(g));
  return out;
}

bool support_subset(const Support& small, const Support& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string pattern_str(const Pattern& p, const std::vector<std::string>& alphabet) {
  std::ostringstream os;
  for (size_t i = 0; i < p.support.size(); ++i) {
    if (i) os << ' ';
    os << alphabet[p.letters[i]] << '@' << element_str(p.support[i]);
  }
  return os.str();
}

}  // namespace sds
