#include "busytime/independent_half.hpp"

#include "busytime/errors.hpp"

namespace busytime {

std::vector<std::size_t> independent_half(const std::vector<Time>& values) {
    if (values.empty()) throw ValidationError("independent_half of an empty sequence");
    Time even_sum, odd_sum;
    for (std::size_t i = 0; i < values.size(); ++i)
        (i % 2 == 0 ? even_sum : odd_sum) += values[i];
    const std::size_t first = even_sum >= odd_sum ? 0 : 1;
    std::vector<std::size_t> picked;
    for (std::size_t i = first; i < values.size(); i += 2) picked.push_back(i);
    return picked;
}

}  // namespace busytime
