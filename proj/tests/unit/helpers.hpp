#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "itm/itm_map.hpp"

namespace test {

inline itm::Rational R(long p, long q = 1) {
  itm::Rational r(p, q);
  r.canonicalize();
  return r;
}

inline itm::Rational R(const std::string& s) { return itm::parse_rational(s); }

inline itm::ArcSet arc(const char* start, const char* length) { return itm::ArcSet::single(R(start), R(length)); }

/// Random ITM with n pieces and all data on the 1/q grid (q is raised to n
/// when smaller, so n distinct breakpoints exist).
inline itm::Itm random_itm(std::mt19937_64& rng, std::size_t n, long q) {
  q = std::max(q, static_cast<long>(n));
  std::uniform_int_distribution<long> grid(0, q - 1);
  std::vector<long> cuts;
  while (cuts.size() < n) {
    long v = grid(rng);
    bool dup = false;
    for (long c : cuts) dup = dup || c == v;
    if (!dup) cuts.push_back(v);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<itm::Rational> t, c;
  for (long v : cuts) t.push_back(R(v, q));
  for (std::size_t j = 0; j < n; ++j) c.push_back(R(grid(rng), q));
  return itm::Itm(t, c);
}

}  // namespace test
