#pragma once

#include <algorithm>
#include <vector>

namespace toricq {

/// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(static_cast<const std::vector<int>&>(idx));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Same, over the elements of `pool` (assumed sorted).
template <typename Fn>
void for_each_subset_of(const std::vector<int>& pool, int k, Fn&& fn) {
    std::vector<int> pick(k);
    for_each_subset(static_cast<int>(pool.size()), k, [&](const std::vector<int>& idx) {
        for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
        fn(static_cast<const std::vector<int>&>(pick));
    });
}

inline std::vector<int> set_intersection_of(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<int> set_difference_of(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace toricq
