#pragma once

#include <cstddef>

namespace sitelab {

// Size limits for every exhaustive procedure. Exceeding one raises
// ExplosionGuard instead of running for an unbounded time.
struct Bounds {
  std::size_t fan_in = 12;             // arrows into any single object (sieve enumeration)
  std::size_t max_size = 3;            // carrier bound for model / functor enumeration
  std::size_t point_bound = 3;         // carrier bound for counting points in fingerprints
  std::size_t irreducible_bound = 3;   // carrier bound for test sheaves in irreducibility
  std::size_t search_budget = 20'000'000;  // nodes visited by any single backtracking search
};

}  // namespace sitelab
