#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubei {

// Largest ground set representable with single-word masks.
inline constexpr int kMaxGroundSet = 63;
// Dense 2^n tables (SetFunction, full power-set sweeps) are only
// materialized up to this size.
inline constexpr int kMaxDenseGroundSet = 24;

// A subset S of the ground set N = {1,...,n}. Variable i occupies bit i-1.
class SubsetMask {
public:
    SubsetMask() = default;

    SubsetMask(std::uint64_t bits, int n) : bits_(bits), n_(n) {
        if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("SubsetMask: n out of range [1,63]");
        if (n < 64 && (bits >> n) != 0) throw std::invalid_argument("SubsetMask: bit set at position >= n");
    }

    static SubsetMask empty(int n) { return SubsetMask(0, n); }
    static SubsetMask full(int n) { return SubsetMask(n == 64 ? ~0ull : ((1ull << n) - 1), n); }

    static SubsetMask singleton(int n, int player) {
        if (player < 1 || player > n) throw std::invalid_argument("SubsetMask: player out of range");
        return SubsetMask(1ull << (player - 1), n);
    }

    static SubsetMask from_players(int n, const std::vector<int>& players) {
        std::uint64_t b = 0;
        for (int p : players) {
            if (p < 1 || p > n) throw std::invalid_argument("SubsetMask: player out of range");
            b |= 1ull << (p - 1);
        }
        return SubsetMask(b, n);
    }

    std::uint64_t bits() const { return bits_; }
    int n() const { return n_; }
    int size() const { return std::popcount(bits_); }
    bool is_empty() const { return bits_ == 0; }

    bool contains(int player) const { return (bits_ >> (player - 1)) & 1u; }
    bool subset_of(const SubsetMask& t) const { return (bits_ & ~t.bits_) == 0; }
    bool superset_of(const SubsetMask& t) const { return t.subset_of(*this); }

    SubsetMask with(int player) const { return SubsetMask(bits_ | (1ull << (player - 1)), n_); }
    SubsetMask without(int player) const { return SubsetMask(bits_ & ~(1ull << (player - 1)), n_); }
    SubsetMask complement() const { return SubsetMask(~bits_ & full(n_).bits_, n_); }
    SubsetMask unite(const SubsetMask& t) const { return SubsetMask(bits_ | t.bits_, n_); }
    SubsetMask intersect(const SubsetMask& t) const { return SubsetMask(bits_ & t.bits_, n_); }
    SubsetMask minus(const SubsetMask& t) const { return SubsetMask(bits_ & ~t.bits_, n_); }

    std::vector<int> players() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b;) {
            int i = std::countr_zero(b);
            out.push_back(i + 1);
            b &= b - 1;
        }
        return out;
    }

    // "{1,3}", "{}" for the empty set. Matches 1-based player numbering.
    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (int p : players()) {
            if (!first) s += ",";
            s += std::to_string(p);
            first = false;
        }
        return s + "}";
    }

    friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

private:
    std::uint64_t bits_ = 0;
    int n_ = 1;
};

// Report ordering: by cardinality first, then lexicographically on the sorted
// 1-based player lists ({1,4} precedes {2,3}).
bool order_subset_less(const SubsetMask& a, const SubsetMask& b);

// Every S with |S| <= k, grouped by cardinality, each exactly once.
// Throws std::invalid_argument for k < 0, k > n or n > 63.
std::vector<SubsetMask> subsets_of_size_at_most(int n, int k);

// Streaming variant of the above (no materialized vector).
template <class F>
void for_each_subset_of_size_at_most(int n, int k, F&& f) {
    if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("ground-set size out of range [1,63]");
    if (k < 0 || k > n) throw std::invalid_argument("subset size bound out of range [0,n]");
    f(SubsetMask::empty(n));
    const std::uint64_t limit = n == 64 ? ~0ull : (1ull << n);
    for (int s = 1; s <= k; ++s) {
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t v = (1ull << s) - 1;
        while (v < limit) {
            f(SubsetMask(v, n));
            std::uint64_t c = v & -v, r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
    }
}

// All submasks of m, including 0 and m itself.
template <class F>
void for_each_submask(std::uint64_t m, F&& f) {
    std::uint64_t sub = m;
    while (true) {
        f(sub);
        if (sub == 0) break;
        sub = (sub - 1) & m;
    }
}

// Permutations pi of {1,...,n}: perm[i-1] = pi(i).
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& perm, int n);

// Push-forward of a mask: {pi(i) : i in S}.
SubsetMask apply_permutation(const SubsetMask& s, const Permutation& perm);

}  // namespace cubei
