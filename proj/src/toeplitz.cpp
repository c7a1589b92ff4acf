#include "sds/toeplitz.hpp"

#include <sstream>

namespace sds {

namespace {

long long mod_pos(long long a, long long m) { return ((a % m) + m) % m; }

long long pow3(int k) {
  long long p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

}  // namespace

int ToeplitzWindow::value_at(long long pos) const {
  if (pos < lo || pos > hi) throw input_error("position outside the window");
  return values[static_cast<size_t>(pos - lo)];
}

const ToeplitzWindow::Coverage& ToeplitzWindow::coverage_at(long long pos) const {
  if (pos < lo || pos > hi) throw input_error("position outside the window");
  return coverage[static_cast<size_t>(pos - lo)];
}

ToeplitzWindow toeplitz_generate(const std::vector<int>& omega, long long lo, long long hi) {
  if (omega.empty()) throw input_error("omega prefix must be nonempty");
  for (int v : omega)
    if (v != 1 && v != 2) throw input_error("omega entries must be 1 or 2");
  if (lo > hi) throw input_error("empty interval");
  if (omega.size() > 20) throw input_error("omega prefix too long");
  int levels = static_cast<int>(omega.size());

  ToeplitzWindow w;
  w.lo = lo;
  w.hi = hi;
  for (long long i = lo; i <= hi; ++i) {
    ToeplitzWindow::Coverage cov;
    int value = 3;  // filler for the uncovered residue
    for (int k = 1; k <= levels; ++k) {
      long long period = pow3(k);
      long long third = pow3(k - 1);
      if (mod_pos(i, period) == third - 1) {
        value = omega[static_cast<size_t>(k - 1)];
        cov = {ToeplitzWindow::Coverage::Kind::Value, k};
        break;
      }
      if (mod_pos(i, period) == 2 * third - 1) {
        value = 3;
        cov = {ToeplitzWindow::Coverage::Kind::Filler, k};
        break;
      }
    }
    w.values.push_back(value);
    w.coverage.push_back(cov);
  }
  return w;
}

RecoverResult toeplitz_recover(const ToeplitzWindow& w, int requested_levels) {
  RecoverResult out;
  out.requested = requested_levels;
  int k = 1;
  while (requested_levels < 0 || k <= requested_levels) {
    if (k > 40) break;
    long long period = pow3(k);
    long long third = pow3(k - 1);
    // A uniform filler at the level's slots marks the end of the coded
    // prefix (the leftover residue class); a mix of values is corruption.
    int seen = 0;
    bool any = false;
    for (long long i = w.lo; i <= w.hi; ++i) {
      if (mod_pos(i, period) != third - 1) continue;
      int v = w.value_at(i);
      if (!any) {
        seen = v;
        any = true;
      } else if (seen != v) {
        out.corrupted = true;
        out.corrupt_position = i;
        return out;
      }
    }
    if (!any || seen == 3) break;  // no level-k slot, or past the prefix
    out.omega.push_back(seen);
    ++k;
  }
  return out;
}

PeriodicityReport periodicity_check(const ToeplitzWindow& w) {
  PeriodicityReport rep;
  for (long long i = w.lo; i <= w.hi; ++i) {
    const auto& cov = w.coverage_at(i);
    if (cov.kind == ToeplitzWindow::Coverage::Kind::Uncovered) continue;
    long long period = pow3(cov.level);
    bool ok = true;
    for (long long j = i + period; j <= w.hi; j += period)
      if (w.value_at(j) != w.value_at(i)) ok = false;
    for (long long j = i - period; j >= w.lo; j -= period)
      if (w.value_at(j) != w.value_at(i)) ok = false;
    if (!ok) {
      rep.pass = false;
      rep.failures.push_back(i);
    }
  }
  return rep;
}

std::string toeplitz_window_str(const ToeplitzWindow& w) {
  std::ostringstream os;
  os << "interval " << w.lo << ' ' << w.hi << '\n';
  for (long long i = w.lo; i <= w.hi; ++i) {
    const auto& cov = w.coverage_at(i);
    os << w.value_at(i) << ' ';
    switch (cov.kind) {
      case ToeplitzWindow::Coverage::Kind::Value:
        os << "level " << cov.level;
        break;
      case ToeplitzWindow::Coverage::Kind::Filler:
        os << "filler " << cov.level;
        break;
      case ToeplitzWindow::Coverage::Kind::Uncovered:
        os << "uncovered";
        break;
    }
    os << '\n';
  }
  return os.str();
}

ToeplitzWindow parse_toeplitz_window(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  ToeplitzWindow w;
  if (!(is >> head) || head != "interval" || !(is >> w.lo >> w.hi) || w.lo > w.hi)
    throw input_error("toeplitz window needs an 'interval lo hi' header");
  std::string line;
  std::getline(is, line);
  for (long long i = w.lo; i <= w.hi; ++i) {
    if (!std::getline(is, line)) throw input_error("toeplitz window is missing positions");
    std::istringstream ls(line);
    int value;
    std::string kind;
    if (!(ls >> value >> kind)) throw input_error("bad toeplitz window line: " + line);
    ToeplitzWindow::Coverage cov;
    if (kind == "uncovered") {
      cov.kind = ToeplitzWindow::Coverage::Kind::Uncovered;
    } else {
      int level;
      if (!(ls >> level) || level < 1) throw input_error("bad toeplitz window line: " + line);
      cov.level = level;
      if (kind == "level")
        cov.kind = ToeplitzWindow::Coverage::Kind::Value;
      else if (kind == "filler")
        cov.kind = ToeplitzWindow::Coverage::Kind::Filler;
      else
        throw input_error("bad toeplitz window line: " + line);
    }
    if (value < 1 || value > 3) throw input_error("toeplitz value out of range");
    w.values.push_back(value);
    w.coverage.push_back(cov);
  }
  return w;
}

}  // namespace sds
