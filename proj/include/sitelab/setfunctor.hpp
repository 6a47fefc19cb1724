#pragma once

#include <functional>
#include <vector>

#include "sitelab/bounds.hpp"
#include "sitelab/fincat.hpp"

namespace sitelab {

/// A covariant functor from a FinCategory into finite sets {0, ..., n-1}.
/// action[f][x] is the image under f of x ∈ F(dom f).
struct SetFunctor {
  std::vector<int> sizes;
  std::vector<std::vector<int>> action;

  friend bool operator==(const SetFunctor&, const SetFunctor&) = default;
  friend auto operator<=>(const SetFunctor&, const SetFunctor&) = default;
};

bool is_functor(const FinCategory& c, const SetFunctor& f);

/// Calls `visit` on every functor C -> FinSet with all carriers of size at
/// most `max_size`, in a fixed order. Stops early when `visit` returns false.
/// Throws ExplosionGuard once more than bounds.search_budget partial
/// assignments have been explored.
void enumerate_set_functors(const FinCategory& c, std::size_t max_size, const Bounds& bounds,
                            const std::function<bool(const SetFunctor&)>& visit);

}  // namespace sitelab
