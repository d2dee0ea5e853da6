#include <doctest.h>

#include <cmath>

#include "cubei/discrete.hpp"
#include "cubei/function_spec.hpp"
#include "oracles.hpp"

using namespace cubei;
using namespace cubei::testing;

namespace {

Permutation random_permutation(Xoshiro256pp& rng, int n) {
    Permutation pi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i)
        std::swap(pi[static_cast<std::size_t>(i)], pi[rng.next() % static_cast<std::uint64_t>(i + 1)]);
    return pi;
}

std::vector<UnaryTransform> random_transforms(Xoshiro256pp& rng, int n) {
    std::vector<UnaryTransform> out;
    for (int i = 0; i < n; ++i) {
        switch (rng.next() % 4) {
            case 0: out.emplace_back(Identity{}); break;
            case 1: out.emplace_back(Power{rat(1 + static_cast<long>(rng.next() % 5), 2)}); break;
            case 2: out.emplace_back(Affine{random_rational(rng), random_rational(rng)}); break;
            default:
                out.emplace_back(Tabulated{{{rat(0), random_rational(rng)},
                                            {rat(1, 2), random_rational(rng)},
                                            {rat(1), random_rational(rng)}}});
        }
    }
    return out;
}

FunctionSpec random_spec(Xoshiro256pp& rng, int n) {
    switch (rng.next() % 5) {
        case 0: return FunctionSpec::multilinear(random_poly(rng, n));
        case 1: {
            SetFunction<Rational> a(n);
            for (std::uint64_t s = 0; s < a.size(); ++s)
                if (rng.uniform() < 0.6) a.at_bits(s) = random_rational(rng);
            return FunctionSpec::choquet(std::move(a));
        }
        case 2: return FunctionSpec::pseudo_multilinear(random_poly(rng, n), random_transforms(rng, n));
        case 3: return FunctionSpec::multiplicative(n, random_transforms(rng, n));
        default: {
            std::vector<Rational> w(static_cast<std::size_t>(n), 0);
            long total = 0;
            for (int i = 0; i < n - 1; ++i) {
                const long c = static_cast<long>(rng.next() % static_cast<std::uint64_t>(8 - total > 0 ? 3 : 1));
                w[static_cast<std::size_t>(i)] = rat(c, 8);
                total += c;
            }
            w[static_cast<std::size_t>(n - 1)] = rat(8 - total, 8);
            return FunctionSpec::geometric_mean(std::move(w));
        }
    }
}

}  // namespace

TEST_CASE("eval: worked examples per class") {
    MultilinearPoly<Rational> p(2);
    p.set(SubsetMask::from_players(2, {1, 2}), 1);
    const auto ml = FunctionSpec::multilinear(p);
    CHECK(eval(ml, std::vector<double>{1.0, 1.0}) == doctest::Approx(1.0));

    SetFunction<Rational> a(2);
    a[SubsetMask::from_players(2, {1, 2})] = 1;
    const auto cq = FunctionSpec::choquet(std::move(a));
    CHECK(eval(cq, std::vector<double>{0.3, 0.7}) == doctest::Approx(0.3));

    const auto gm = FunctionSpec::geometric_mean({rat(1, 2), rat(1, 2)});
    CHECK(eval(gm, std::vector<double>{0.25, 1.0}) == doctest::Approx(0.5));

    CHECK_THROWS_AS(eval(ml, std::vector<double>{0.5, std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(eval(ml, std::vector<double>{0.5}), std::invalid_argument);
}

TEST_CASE("permute: identity, swaps, and Choquet push-forward") {
    MultilinearPoly<Rational> p(2);
    p.set(SubsetMask::from_players(2, {1}), 1);
    const auto spec = FunctionSpec::multilinear(p);

    const auto id = permute(spec, {1, 2});
    CHECK(id.get_if<MultilinearSpec>()->poly == p);

    const auto swapped = permute(spec, {2, 1});
    CHECK(swapped.get_if<MultilinearSpec>()->poly.coeff(SubsetMask::from_players(2, {2})) == 1);

    SetFunction<Rational> a(3);
    a[SubsetMask::from_players(3, {1, 3})] = 1;
    const auto cq = FunctionSpec::choquet(std::move(a));
    const auto rotated = permute(cq, {2, 3, 1});
    CHECK(rotated.get_if<ChoquetSpec>()->coeffs[SubsetMask::from_players(3, {1, 2})] == 1);

    CHECK_THROWS_AS(permute(spec, {1, 1}), std::invalid_argument);
}

TEST_CASE("eval respects permutation for random specs") {
    Xoshiro256pp rng(314);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const FunctionSpec spec = random_spec(rng, n);
        const Permutation pi = random_permutation(rng, n);
        const FunctionSpec pspec = permute(spec, pi);
        const std::vector<double> x = random_point(rng, n);
        std::vector<double> composed(x.size());
        for (int i = 0; i < n; ++i)
            composed[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)] - 1)];
        CHECK(eval(pspec, x) == doctest::Approx(eval(spec, composed)).epsilon(1e-12));
    }
}

TEST_CASE("vertex values: multilinear and Lovasz forms agree with the zeta transform") {
    Xoshiro256pp rng(2718);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        SetFunction<Rational> a(n);
        for (const auto& [bits, c] : p.terms()) a.at_bits(bits) = c;
        const SetFunction<Rational> v = zeta(a);

        const auto mspec = FunctionSpec::multilinear(p);
        const auto cspec = FunctionSpec::choquet(a);
        for (std::uint64_t s = 0; s < (1ull << n); ++s) {
            std::vector<Rational> vertex(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i)
                if (s & (1ull << i)) vertex[static_cast<std::size_t>(i)] = 1;
            CHECK(eval_exact(mspec, vertex) == v.at_bits(s));
            CHECK(eval_exact(cspec, vertex) == v.at_bits(s));
        }
    }
}

TEST_CASE("spec validation errors") {
    CHECK_THROWS_AS(FunctionSpec::geometric_mean({rat(1, 2), rat(1, 4)}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::geometric_mean({rat(3, 2), rat(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::multiplicative(2, {Identity{}}), std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::pseudo_multilinear(MultilinearPoly<Rational>(2), {Power{rat(-1)}, Identity{}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(FunctionSpec::black_box(2, nullptr, false), std::invalid_argument);
    CHECK_THROWS_AS(SetFunction<Rational>(25), std::invalid_argument);
}

TEST_CASE("dependence masks skip constant transforms and zero weights") {
    const auto gm = FunctionSpec::geometric_mean({rat(1), rat(0)});
    CHECK(gm.depends() == 0b01u);

    MultilinearPoly<Rational> g(2);
    g.set(SubsetMask::full(2), 1);
    const auto pm = FunctionSpec::pseudo_multilinear(g, {Identity{}, Power{rat(0)}});
    CHECK(pm.depends() == 0b01u);
}
