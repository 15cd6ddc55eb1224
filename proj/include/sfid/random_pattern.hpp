#pragma once

#include <random>

#include "sfid/pattern.hpp"

namespace sfid {

// Independent Bernoulli(density) entries. Deterministic for a given engine
// state.
SparsityPattern random_pattern(int m, int r, double density, std::mt19937_64& rng);

}  // namespace sfid
