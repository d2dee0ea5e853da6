#include "cubei/subset.hpp"

namespace cubei {

bool order_subset_less(const SubsetMask& a, const SubsetMask& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    // Lexicographic on sorted player lists == ascending on bit-reversed
    // masks, but the list comparison keeps intent obvious.
    const auto pa = a.players(), pb = b.players();
    return pa < pb;
}

std::vector<SubsetMask> subsets_of_size_at_most(int n, int k) {
    std::vector<SubsetMask> out;
    for_each_subset_of_size_at_most(n, k, [&](SubsetMask s) { out.push_back(s); });
    return out;
}

bool is_permutation(const Permutation& perm, int n) {
    if (static_cast<int>(perm.size()) != n) return false;
    std::uint64_t seen = 0;
    for (int v : perm) {
        if (v < 1 || v > n) return false;
        const std::uint64_t bit = 1ull << (v - 1);
        if (seen & bit) return false;
        seen |= bit;
    }
    return true;
}

SubsetMask apply_permutation(const SubsetMask& s, const Permutation& perm) {
    if (!is_permutation(perm, s.n())) throw std::invalid_argument("not a permutation of {1,...,n}");
    std::uint64_t out = 0;
    for (int p : s.players()) out |= 1ull << (perm[p - 1] - 1);
    return SubsetMask(out, s.n());
}

}  // namespace cubei
