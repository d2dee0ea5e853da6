#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "cubei/rational.hpp"
#include "cubei/subset.hpp"

namespace cubei {

// Multilinear polynomial sum_S a(S) prod_{i in S} x_i with a sparse
// coefficient map. Zero coefficients are never stored.
template <class T>
class MultilinearPoly {
public:
    explicit MultilinearPoly(int n) : n_(n) {
        if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("MultilinearPoly: n out of range [1,63]");
    }

    static MultilinearPoly constant(int n, T c) {
        MultilinearPoly p(n);
        p.add_term(SubsetMask::empty(n), c);
        return p;
    }

    int n() const { return n_; }

    int degree() const {
        int d = 0;
        for (const auto& [bits, c] : coeffs_) d = std::max(d, std::popcount(bits));
        return d;
    }

    const std::map<std::uint64_t, T>& terms() const { return coeffs_; }

    T coeff(const SubsetMask& s) const {
        check(s);
        auto it = coeffs_.find(s.bits());
        return it == coeffs_.end() ? T{} : it->second;
    }

    void set(const SubsetMask& s, T c) {
        check(s);
        if (c == T{})
            coeffs_.erase(s.bits());
        else
            coeffs_[s.bits()] = std::move(c);
    }

    void add_term(const SubsetMask& s, const T& c) {
        check(s);
        add_bits(s.bits(), c);
    }

    void add_bits(std::uint64_t bits, const T& c) {
        if (c == T{}) return;
        auto [it, inserted] = coeffs_.try_emplace(bits, c);
        if (!inserted) {
            it->second += c;
            if (it->second == T{}) coeffs_.erase(it);
        }
    }

    MultilinearPoly& operator+=(const MultilinearPoly& o) {
        require_same_n(o);
        for (const auto& [bits, c] : o.coeffs_) add_bits(bits, c);
        return *this;
    }

    MultilinearPoly& operator-=(const MultilinearPoly& o) {
        require_same_n(o);
        for (const auto& [bits, c] : o.coeffs_) add_bits(bits, T{} - c);
        return *this;
    }

    MultilinearPoly& operator*=(const T& s) {
        if (s == T{}) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [bits, c] : coeffs_) c *= s;
        return *this;
    }

    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }
    friend MultilinearPoly operator*(MultilinearPoly a, const T& s) { return a *= s; }

    friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

    template <class X>
    X eval_with(std::span<const X> x) const {
        if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("MultilinearPoly: point dimension mismatch");
        X acc{};
        for (const auto& [bits, c] : coeffs_) {
            X term;
            if constexpr (std::is_same_v<X, T>)
                term = c;
            else
                term = X(to_double(c));
            for (std::uint64_t b = bits; b;) {
                term *= x[static_cast<std::size_t>(std::countr_zero(b))];
                b &= b - 1;
            }
            acc += term;
        }
        return acc;
    }

    // D^S applied to the monomial form: terms T >= S survive with mask T\S.
    MultilinearPoly derivative(const SubsetMask& s) const {
        check(s);
        MultilinearPoly out(n_);
        for (const auto& [bits, c] : coeffs_)
            if ((bits & s.bits()) == s.bits()) out.add_bits(bits & ~s.bits(), c);
        return out;
    }

    // Substitutes x_i -> 1 - x_i for every i in S and expands.
    MultilinearPoly flip(const SubsetMask& s) const {
        check(s);
        MultilinearPoly out(n_);
        for (const auto& [bits, c] : coeffs_) {
            const std::uint64_t flipped = bits & s.bits(), kept = bits & ~s.bits();
            for_each_submask(flipped, [&](std::uint64_t u) {
                T term = c;
                if (std::popcount(u) & 1) term = T{} - term;
                out.add_bits(kept | u, term);
            });
        }
        return out;
    }

    MultilinearPoly permuted(const Permutation& perm) const {
        MultilinearPoly out(n_);
        for (const auto& [bits, c] : coeffs_) out.add_term(apply_permutation(SubsetMask(bits, n_), perm), c);
        return out;
    }

private:
    void check(const SubsetMask& s) const {
        if (s.n() != n_) throw std::invalid_argument("MultilinearPoly: mask ground set mismatch");
    }
    void require_same_n(const MultilinearPoly& o) const {
        if (o.n_ != n_) throw std::invalid_argument("MultilinearPoly: ground set mismatch");
    }

    int n_;
    std::map<std::uint64_t, T> coeffs_;
};

inline MultilinearPoly<double> to_double_poly(const MultilinearPoly<Rational>& p) {
    MultilinearPoly<double> out(p.n());
    for (const auto& [bits, c] : p.terms()) out.add_bits(bits, to_double(c));
    return out;
}

// f^d(x) = 1 - f(1 - x), expanded back to monomial coefficients.
template <class T>
MultilinearPoly<T> dual_poly(const MultilinearPoly<T>& p) {
    MultilinearPoly<T> out = p.flip(SubsetMask::full(p.n()));
    out *= T(-1);
    out.add_term(SubsetMask::empty(p.n()), T(1));
    return out;
}

}  // namespace cubei
