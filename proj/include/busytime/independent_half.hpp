#pragma once

#include <cstddef>
#include <vector>

#include "busytime/time.hpp"

namespace busytime {

/// Picks pairwise non-consecutive indices whose values sum to at least half
/// of the total, by taking the better of the even- and odd-indexed subsets
/// (even wins ties). Throws ValidationError on an empty input.
std::vector<std::size_t> independent_half(const std::vector<Time>& values);

}  // namespace busytime
