#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cubei/rational.hpp"
#include "cubei/subset.hpp"

namespace cubei {

// Dense map 2^N -> scalar: games v, Moebius transforms a, capacities.
// One entry per subset, indexed by mask bits.
template <class T>
class SetFunction {
public:
    explicit SetFunction(int n, T init = T{}) : n_(n) {
        if (n < 1 || n > kMaxDenseGroundSet)
            throw std::invalid_argument("SetFunction: dense tables require 1 <= n <= 24");
        values_.assign(std::size_t{1} << n, init);
    }

    int n() const { return n_; }
    std::size_t size() const { return values_.size(); }

    T& operator[](const SubsetMask& s) { return values_[check(s)]; }
    const T& operator[](const SubsetMask& s) const { return values_[check(s)]; }

    T& at_bits(std::uint64_t bits) { return values_.at(bits); }
    const T& at_bits(std::uint64_t bits) const { return values_.at(bits); }

    std::vector<T>& values() { return values_; }
    const std::vector<T>& values() const { return values_; }

    friend bool operator==(const SetFunction&, const SetFunction&) = default;

private:
    std::size_t check(const SubsetMask& s) const {
        if (s.n() != n_) throw std::invalid_argument("SetFunction: mask ground set mismatch");
        return static_cast<std::size_t>(s.bits());
    }

    int n_;
    std::vector<T> values_;
};

// A game v is a set function read as v(S) = f(1_S). No v(empty) = 0
// normalization is imposed.
using Game = SetFunction<Rational>;

}  // namespace cubei
