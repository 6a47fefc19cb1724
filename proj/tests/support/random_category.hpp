#pragma once

#include <random>
#include <vector>

#include "sitelab/fincat.hpp"
#include "sitelab/topology.hpp"

namespace sitelab::testing {

// Random concrete category: objects are small sets, arrows are functions
// closed under composition. Returns nullopt when the closure exceeds
// max_arrows (identities included).
std::optional<FinCategory> random_concrete_category(std::mt19937_64& rng, int max_objects, int max_arrows);

// Retries until a category fits the bounds.
FinCategory random_category(std::mt19937_64& rng, int max_objects, int max_arrows);

// A few sieves generated by random arrows into random objects.
std::vector<Sieve> random_axioms(std::mt19937_64& rng, const FinCategory& c, int max_count);

}  // namespace sitelab::testing
