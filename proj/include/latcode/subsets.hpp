#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latcode/error.hpp"

namespace latcode {

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / i;
    return c;
}

// All k-subsets of {1..n}, each sorted ascending, in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    if (k < 0 || n < 0 || k > n) throw error(errc::bad_dims, "k_subsets needs 0 <= k <= n");
    std::vector<std::vector<int>> out;
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i + 1;
    while (true) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

inline bool is_valid_subset(const std::vector<int>& s, int n, int k) {
    if (static_cast<int>(s.size()) != k) return false;
    int prev = 0;
    for (int idx : s) {
        if (idx <= prev || idx > n) return false;
        prev = idx;
    }
    return true;
}

// "1-3-4": hyphen-joined so subsets stay a single CSV field.
inline std::string subset_label(const std::vector<int>& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(s[i]);
    }
    return out;
}

} // namespace latcode
