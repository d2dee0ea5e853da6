#pragma once

#include <stdexcept>

#include "cubei/poly.hpp"
#include "cubei/set_function.hpp"

namespace cubei {

// Pseudo-Boolean / cooperative-game side: Moebius and zeta transforms,
// Banzhaf interaction index, discrete derivative averages, discrete best
// k-th approximation and the multilinear extension. All run exactly in the
// scalar type of the table (rationals by default).

// a(S) = sum_{T subset S} (-1)^{|S|-|T|} v(T). In-place Yates sweep,
// O(n 2^n).
template <class T>
SetFunction<T> mobius(const SetFunction<T>& v) {
    SetFunction<T> a = v;
    auto& t = a.values();
    const int n = a.n();
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = 1ull << i;
        for (std::uint64_t s = 0; s < t.size(); ++s)
            if (s & bit) t[s] -= t[s ^ bit];
    }
    return a;
}

// v(S) = sum_{T subset S} a(T); inverse of mobius.
template <class T>
SetFunction<T> zeta(const SetFunction<T>& a) {
    SetFunction<T> v = a;
    auto& t = v.values();
    const int n = v.n();
    for (int i = 0; i < n; ++i) {
        const std::uint64_t bit = 1ull << i;
        for (std::uint64_t s = 0; s < t.size(); ++s)
            if (s & bit) t[s] += t[s ^ bit];
    }
    return v;
}

// I_B(v,S) = sum_{T superset S} (1/2)^{|T|-|S|} a(T) with a = mobius(v).
inline Rational banzhaf_interaction(const Game& v, const SubsetMask& s) {
    if (s.n() != v.n()) throw std::invalid_argument("banzhaf_interaction: ground set mismatch");
    const SetFunction<Rational> a = mobius(v);
    Rational acc = 0;
    const std::uint64_t rest = SubsetMask::full(v.n()).bits() & ~s.bits();
    for_each_submask(rest, [&](std::uint64_t u) {
        const Rational& c = a.at_bits(s.bits() | u);
        if (c != 0) acc += c * half_pow(static_cast<unsigned>(std::popcount(u)));
    });
    return acc;
}

// (1/2^n) sum_x (Delta^S f)(x): the S-difference of the pseudo-Boolean form
// averaged over all vertices. Equals banzhaf_interaction exactly.
inline Rational discrete_derivative_average(const Game& v, const SubsetMask& s) {
    if (s.n() != v.n()) throw std::invalid_argument("discrete_derivative_average: ground set mismatch");
    // Apply one difference pass per player in S; each pass replaces
    // t[x] by t[x | i=1] - t[x | i=0], constant along bit i.
    std::vector<Rational> t = v.values();
    for (int p : s.players()) {
        const std::uint64_t bit = 1ull << (p - 1);
        for (std::uint64_t x = 0; x < t.size(); ++x)
            if (!(x & bit)) {
                Rational d = t[x | bit] - t[x];
                t[x] = d;
                t[x | bit] = std::move(d);
            }
    }
    Rational sum = 0;
    for (const Rational& x : t) sum += x;
    return sum / Rational(static_cast<unsigned long>(t.size()));
}

// Coefficients of the multilinear polynomial minimizing the squared error
// over the 2^n vertices among polynomials of degree <= k:
//   a_k(S) = a(S) + (-1)^{k-|S|} sum_{T sup S, |T|>k} C(|T|-|S|-1, k-|S|)
//            (1/2)^{|T|-|S|} a(T).
inline MultilinearPoly<Rational> best_k_approx_discrete(const Game& v, int k) {
    const int n = v.n();
    if (k < 0 || k > n) throw std::invalid_argument("best_k_approx_discrete: k out of range [0,n]");
    const SetFunction<Rational> a = mobius(v);
    MultilinearPoly<Rational> out(n);
    for_each_subset_of_size_at_most(n, k, [&](SubsetMask s) {
        const int sz = s.size();
        Rational acc = a[s];
        Rational corr = 0;
        const std::uint64_t rest = SubsetMask::full(n).bits() & ~s.bits();
        for_each_submask(rest, [&](std::uint64_t u) {
            const int extra = std::popcount(u);
            if (sz + extra <= k) return;
            const Rational& c = a.at_bits(s.bits() | u);
            if (c != 0)
                corr += binomial(static_cast<unsigned>(extra - 1), static_cast<unsigned>(k - sz)) *
                        half_pow(static_cast<unsigned>(extra)) * c;
        });
        if ((k - sz) & 1) corr = -corr;
        acc += corr;
        if (acc != 0) out.set(s, acc);
    });
    return out;
}

// The unique multilinear polynomial agreeing with v on {0,1}^n.
inline MultilinearPoly<Rational> multilinear_extension(const Game& v) {
    const SetFunction<Rational> a = mobius(v);
    MultilinearPoly<Rational> out(v.n());
    for (std::uint64_t bits = 0; bits < a.size(); ++bits)
        if (a.at_bits(bits) != 0) out.add_bits(bits, a.at_bits(bits));
    return out;
}

// Vertex restriction: v(S) = f(1_S), the inverse of multilinear_extension.
template <class T>
SetFunction<T> vertex_restriction(const MultilinearPoly<T>& f) {
    SetFunction<T> a(f.n());
    for (const auto& [bits, c] : f.terms()) a.at_bits(bits) = c;
    return zeta(a);
}

}  // namespace cubei
