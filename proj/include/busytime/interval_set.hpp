#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "busytime/errors.hpp"
#include "busytime/time.hpp"

namespace busytime {

/// Union of half-open intervals [lo, hi), kept sorted, disjoint and
/// non-adjacent (touching intervals are merged on insert). Templated on the
/// scalar so the oracles can run the same code on plain integers.
template <class T>
class BasicIntervalSet {
public:
    using Interval = std::pair<T, T>;

    BasicIntervalSet() = default;

    void insert(const T& lo, const T& hi) {
        if (!(lo < hi)) throw InvalidIntervalError("insert of empty or reversed interval");
        // first interval whose end reaches lo, i.e. a merge candidate
        auto first = std::lower_bound(ivs_.begin(), ivs_.end(), lo,
                                      [](const Interval& iv, const T& v) { return iv.second < v; });
        T nlo = lo, nhi = hi;
        auto it = first;
        while (it != ivs_.end() && it->first <= hi) {
            nlo = std::min(nlo, it->first);
            nhi = std::max(nhi, it->second);
            ++it;
        }
        it = ivs_.erase(first, it);
        ivs_.insert(it, Interval{nlo, nhi});
    }

    /// True when [lo, hi) lies inside the union. Requires lo < hi.
    bool covers(const T& lo, const T& hi) const {
        if (!(lo < hi)) throw InvalidIntervalError("covers query with empty or reversed interval");
        auto it = std::upper_bound(ivs_.begin(), ivs_.end(), lo,
                                   [](const T& v, const Interval& iv) { return v < iv.first; });
        if (it == ivs_.begin()) return false;
        --it;
        return !(lo < it->first) && !(it->second < hi);
    }

    bool contains(const T& t) const {
        auto it = std::upper_bound(ivs_.begin(), ivs_.end(), t,
                                   [](const T& v, const Interval& iv) { return v < iv.first; });
        if (it == ivs_.begin()) return false;
        --it;
        return !(t < it->first) && t < it->second;
    }

    T span() const {
        T total{};
        for (const Interval& iv : ivs_) total += iv.second - iv.first;
        return total;
    }

    bool empty() const { return ivs_.empty(); }
    std::size_t size() const { return ivs_.size(); }
    const std::vector<Interval>& intervals() const { return ivs_; }

    friend bool operator==(const BasicIntervalSet& a, const BasicIntervalSet& b) {
        return a.ivs_ == b.ivs_;
    }

private:
    std::vector<Interval> ivs_;
};

using IntervalSet = BasicIntervalSet<Time>;

/// Measure of the union of an arbitrary list of half-open intervals.
template <class T>
T span_of(const std::vector<std::pair<T, T>>& raw) {
    BasicIntervalSet<T> set;
    for (const auto& [lo, hi] : raw) set.insert(lo, hi);
    return set.span();
}

}  // namespace busytime
