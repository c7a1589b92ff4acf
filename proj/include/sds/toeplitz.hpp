#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sds/errors.hpp"

namespace sds {

// Interval window of a Toeplitz coding over {1,2,3} with per-position
// coverage: level k when the position lies in the level-k progression (value
// or filler), uncovered otherwise.
struct ToeplitzWindow {
  long long lo = 0, hi = 0;
  std::vector<int> values;  // 1, 2 or 3

  struct Coverage {
    enum class Kind { Value, Filler, Uncovered };
    Kind kind = Kind::Uncovered;
    int level = 0;  // 0 when uncovered
  };
  std::vector<Coverage> coverage;

  long long size() const { return hi - lo + 1; }
  int value_at(long long pos) const;
  const Coverage& coverage_at(long long pos) const;
};

// z(i) = omega(k) on i = 3^{k-1}-1 (mod 3^k), filler 3 on i = 2*3^{k-1}-1
// (mod 3^k), for k up to the prefix length; the leftover residue -1
// (mod 3^K) is uncovered and filled with 3.
ToeplitzWindow toeplitz_generate(const std::vector<int>& omega, long long lo, long long hi);

struct RecoverResult {
  std::vector<int> omega;          // recovered prefix
  bool corrupted = false;
  long long corrupt_position = 0;  // a position witnessing the inconsistency
  int requested = 0;               // levels asked for (-1 = as many as possible)
};

// Reads omega(k) off the level-k value positions in the window; stops at the
// first level with no such position, or flags corruption on disagreement.
RecoverResult toeplitz_recover(const ToeplitzWindow& w, int requested_levels = -1);

struct PeriodicityReport {
  bool pass = true;
  std::vector<long long> failures;  // positions whose 3^k-translates disagree
};

// Every covered position repeats with period 3^k inside the window.
PeriodicityReport periodicity_check(const ToeplitzWindow& w);

std::string toeplitz_window_str(const ToeplitzWindow& w);
ToeplitzWindow parse_toeplitz_window(const std::string& text);

}  // namespace sds
