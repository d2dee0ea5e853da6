#include <doctest.h>

#include <cmath>

#include "cubei/discrete.hpp"
#include "cubei/interaction.hpp"
#include "oracles.hpp"

using namespace cubei;
using namespace cubei::testing;

namespace {

FunctionSpec x1x2() {
    MultilinearPoly<Rational> p(2);
    p.set(SubsetMask::full(2), 1);
    return FunctionSpec::multilinear(p);
}

FunctionSpec min2() {
    SetFunction<Rational> a(2);
    a[SubsetMask::full(2)] = 1;
    return FunctionSpec::choquet(std::move(a));
}

}  // namespace

TEST_CASE("interaction: worked values for x1*x2 and constants") {
    const auto spec = x1x2();
    CHECK(*interaction(spec, SubsetMask::full(2)).exact == 1);
    CHECK(*interaction(spec, SubsetMask::from_players(2, {1})).exact == rat(1, 2));
    CHECK(*interaction(spec, SubsetMask::empty(2)).exact == rat(1, 4));

    const auto c = FunctionSpec::constant(3, rat(7, 2));
    CHECK(*interaction(c, SubsetMask::from_players(3, {2})).exact == 0);
    CHECK(*interaction(c, SubsetMask::empty(3)).exact == rat(7, 2));
}

TEST_CASE("interaction table: orders, provenance, geometric mean row") {
    const auto spec = x1x2();
    const InteractionTable t = interaction_table(spec, 2);
    CHECK(t.entries.size() == 4);
    CHECK(*t.entries.at(0b00).exact == rat(1, 4));
    CHECK(*t.entries.at(0b01).exact == rat(1, 2));
    CHECK(*t.entries.at(0b10).exact == rat(1, 2));
    CHECK(*t.entries.at(0b11).exact == 1);
    for (const auto& [bits, v] : t.entries) {
        CHECK(v.method == ValueMethod::ClosedForm);
        CHECK(!v.stderr_est.has_value());
    }

    const auto gm = FunctionSpec::geometric_mean({rat(1, 2), rat(1, 2)});
    const InteractionTable g = interaction_table(gm, 1);
    CHECK(g.entries.size() == 3);
    CHECK(*g.entries.at(0b00).exact == rat(4, 9));
    CHECK(*g.entries.at(0b01).exact == rat(8, 15));
    CHECK(*g.entries.at(0b10).exact == rat(8, 15));

    const InteractionTable k0 = interaction_table(spec, 0);
    CHECK(k0.entries.size() == 1);

    // Enormous tables are refused up front rather than materialized.
    MultilinearPoly<Rational> wide(48);
    wide.set(SubsetMask::singleton(48, 1), 1);
    CHECK_THROWS_AS(interaction_table(FunctionSpec::multilinear(wide), 24), unsupported_error);
    CHECK(interaction_table(FunctionSpec::multilinear(wide), 1).entries.size() == 49);
}

TEST_CASE("quadrature route agrees with closed forms on smooth specs") {
    const auto spec = x1x2();
    IntegratorConfig cfg;
    cfg.mode = IntegratorConfig::Mode::GaussTensor;
    CHECK(interaction(spec, SubsetMask::full(2), cfg).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(interaction(spec, SubsetMask::from_players(2, {1}), cfg).value == doctest::Approx(0.5).epsilon(1e-12));

    // Choquet specs reroute to the closed form even under forced quadrature.
    const auto m = min2();
    const IndexValue v = interaction(m, SubsetMask::full(2), cfg);
    CHECK(v.method == ValueMethod::ClosedForm);
    CHECK(*v.exact == rat(6, 5));

    // Black-box Monte Carlo carries a stderr and hits the closed value.
    IntegratorConfig mc;
    mc.mode = IntegratorConfig::Mode::MonteCarlo;
    mc.samples = 200000;
    mc.seed = 17;
    const auto bb = as_black_box(spec);
    const IndexValue est = interaction(bb, SubsetMask::full(2), mc);
    CHECK(est.method == ValueMethod::MonteCarlo);
    REQUIRE(est.stderr_est.has_value());
    CHECK(std::abs(est.value - 1.0) < 4.0 * *est.stderr_est + 1e-12);

    CHECK_THROWS_AS(interaction(bb, SubsetMask::full(2), IntegratorConfig{IntegratorConfig::Mode::ClosedForm}),
                    unsupported_error);

    IntegratorConfig tiny;
    tiny.mode = IntegratorConfig::Mode::MonteCarlo;
    tiny.samples = 1;
    CHECK_THROWS_AS(interaction(bb, SubsetMask::full(2), tiny), std::invalid_argument);
}

TEST_CASE("index_from_poly_coeffs vs taylor_at_center vs Banzhaf, random polys") {
    Xoshiro256pp rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 5);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const Game v = vertex_restriction(p);
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            const Rational direct = index_from_poly_coeffs(p, s);
            CHECK(direct == taylor_at_center(p, s));
            CHECK(direct == banzhaf_interaction(v, s));
        });
    }
}

TEST_CASE("best k approximation: multilinear worked example and projections") {
    const auto spec = x1x2();
    const BestKApprox f1 = best_k_approx(spec, 1);
    REQUIRE(f1.exact.has_value());
    CHECK(f1.exact->coeff(SubsetMask::empty(2)) == rat(-1, 4));
    CHECK(f1.exact->coeff(SubsetMask::from_players(2, {1})) == rat(1, 2));
    CHECK(f1.exact->coeff(SubsetMask::from_players(2, {2})) == rat(1, 2));

    CHECK_THROWS_AS(best_k_approx(spec, 3), std::invalid_argument);
    CHECK_THROWS_AS(best_k_approx(spec, -1), std::invalid_argument);

    // k = n reproduces the polynomial; k = 0 the mean.
    Xoshiro256pp rng(5150);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const auto s = FunctionSpec::multilinear(p);
        CHECK(*best_k_approx(s, n).exact == p);
        const auto f0 = best_k_approx(s, 0);
        CHECK(f0.exact->coeff(SubsetMask::empty(n)) == index_from_poly_coeffs(p, SubsetMask::empty(n)));
    }
}

TEST_CASE("continuous best-k equals the L2 normal-equations oracle and the discrete route") {
    Xoshiro256pp rng(60601);
    for (int n = 1; n <= 6; ++n) {
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const auto spec = FunctionSpec::multilinear(p);
        const Game v = vertex_restriction(p);
        for (int k = 0; k <= n; ++k) {
            const auto fk = best_k_approx(spec, k);
            REQUIRE(fk.exact.has_value());
            CHECK(*fk.exact == l2_ls_fit(p, k));
            // On multilinear inputs the discrete and continuous projections
            // coincide (they preserve the same index values).
            CHECK(*fk.exact == best_k_approx_discrete(v, k));
            CHECK(*fk.exact == vertex_ls_fit(v, k));
        }
    }
}

TEST_CASE("projection preserves low-order interactions (choquet and geometric specs too)") {
    Xoshiro256pp rng(777);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        SetFunction<Rational> a(n);
        for (std::uint64_t s = 1; s < a.size(); ++s)
            if (rng.uniform() < 0.5) a.at_bits(s) = random_rational(rng);
        const auto spec = FunctionSpec::choquet(std::move(a));
        for (int k = 0; k <= n; ++k) {
            const auto fk = best_k_approx(spec, k);
            REQUIRE(fk.exact.has_value());
            const auto fk_spec = FunctionSpec::multilinear(*fk.exact);
            for_each_subset_of_size_at_most(n, k, [&](SubsetMask s) {
                CHECK(*interaction(fk_spec, s).exact == *interaction(spec, s).exact);
            });
        }
    }
}

TEST_CASE("shift, difference, and quotient operators") {
    const auto spec = x1x2();
    SUBCASE("shift moves single coordinates and rejects exits from the cube") {
        MultilinearPoly<Rational> lin(1);
        lin.set(SubsetMask::from_players(1, {1}), 1);
        const auto f = FunctionSpec::multilinear(lin);
        const std::vector<double> h{0.25}, x{0.5};
        CHECK(shift(f, SubsetMask::from_players(1, {1}), h, x) == doctest::Approx(0.75));
        CHECK(shift(f, SubsetMask::empty(1), h, x) == doctest::Approx(0.5));
        CHECK_THROWS_AS(shift(f, SubsetMask::from_players(1, {1}), std::vector<double>{0.6}, x), std::domain_error);
    }

    SUBCASE("min function under a joint shift") {
        const auto m = min2();
        const std::vector<double> h{0.2, 0.2}, x{0.1, 0.3};
        CHECK(shift(m, SubsetMask::full(2), h, x) == doctest::Approx(0.3));
    }

    SUBCASE("S-difference of v_S is the box volume") {
        const std::vector<double> x{0.1, 0.2}, y{0.5, 0.9};
        std::vector<double> h{y[0] - x[0], y[1] - x[1]};
        CHECK(s_difference(spec, SubsetMask::full(2), h, x) == doctest::Approx(0.4 * 0.7).epsilon(1e-14));
        CHECK(s_difference(spec, SubsetMask::empty(2), h, x) == doctest::Approx(0.1 * 0.2).epsilon(1e-14));

        // Mixed differences of additive functions vanish.
        MultilinearPoly<Rational> add(2);
        add.set(SubsetMask::from_players(2, {1}), 1);
        add.set(SubsetMask::from_players(2, {2}), 1);
        const auto fadd = FunctionSpec::multilinear(add);
        CHECK(s_difference(fadd, SubsetMask::full(2), h, x) == doctest::Approx(0.0));
    }

    SUBCASE("difference quotient: worked value, linear exactness, h = 0 rejection") {
        const std::vector<double> x{0.2, 0.4};
        std::vector<double> h{0.5, 0.0};
        CHECK(difference_quotient(spec, SubsetMask::from_players(2, {1}), h, x) == doctest::Approx(0.4).epsilon(1e-14));
        CHECK(difference_quotient(spec, SubsetMask::empty(2), h, x) == doctest::Approx(0.08).epsilon(1e-14));
        CHECK_THROWS_AS(difference_quotient(spec, SubsetMask::from_players(2, {2}), h, x), std::invalid_argument);

        MultilinearPoly<Rational> lin(2);
        lin.set(SubsetMask::from_players(2, {1}), rat(5, 3));
        const auto flin = FunctionSpec::multilinear(lin);
        for (double step : {0.1, 0.37, 0.6}) {
            std::vector<double> hs{step, 0.0};
            CHECK(difference_quotient(flin, SubsetMask::from_players(2, {1}), hs, x) ==
                  doctest::Approx(5.0 / 3.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("duals: min/max pair, self-dual line, constants") {
    const auto m = min2();
    const auto dm = dual(m);
    const auto* payload = dm.get_if<ChoquetSpec>();
    REQUIRE(payload != nullptr);
    // max = x1 + x2 - min: coefficients {1},{2} -> 1, {1,2} -> -1.
    CHECK(payload->coeffs[SubsetMask::from_players(2, {1})] == 1);
    CHECK(payload->coeffs[SubsetMask::from_players(2, {2})] == 1);
    CHECK(payload->coeffs[SubsetMask::full(2)] == -1);

    MultilinearPoly<Rational> line(1);
    line.set(SubsetMask::from_players(1, {1}), 1);
    const auto self_dual = dual(FunctionSpec::multilinear(line));
    CHECK(self_dual.get_if<MultilinearSpec>()->poly == line);

    const auto zero = FunctionSpec::constant(2, 0);
    CHECK(dual(zero).get_if<MultilinearSpec>()->poly.coeff(SubsetMask::empty(2)) == 1);

    CHECK_THROWS_AS(dual(FunctionSpec::geometric_mean({rat(1, 2), rat(1, 2)})), unsupported_error);
    // ...but the black-box wrapper dualizes pointwise.
    const auto wrapped = dual(as_black_box(FunctionSpec::geometric_mean({rat(1, 2), rat(1, 2)})));
    CHECK(eval(wrapped, std::vector<double>{0.75, 0.0}) == doctest::Approx(1.0 - std::sqrt(0.25)).epsilon(1e-12));
}

TEST_CASE("dual laws on random specs: sign flip, mean complement, parity split") {
    Xoshiro256pp rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 4);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const auto spec = FunctionSpec::multilinear(p);
        const auto dspec = dual(spec);
        const auto [fs, fa] = self_dual_split(p);
        MultilinearPoly<Rational> sum = fs;
        sum += fa;
        CHECK(sum == p);
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            const Rational lhs = *interaction(dspec, s).exact;
            const Rational rhs = *interaction(spec, s).exact;
            if (s.is_empty())
                CHECK(lhs == 1 - rhs);
            else
                CHECK(lhs == ((s.size() + 1) & 1 ? -rhs : rhs));
            if (!s.is_empty()) {
                const Rational part = index_from_poly_coeffs(s.size() % 2 == 0 ? fa : fs, s);
                CHECK(rhs == part);
            }
        });
    }
}

TEST_CASE("self-dual split of x1*x2 matches the expanded algebra") {
    MultilinearPoly<Rational> p(2);
    p.set(SubsetMask::full(2), 1);
    const auto [fs, fa] = self_dual_split(p);
    // f^d = x1 + x2 - x1 x2; f^s = (x1+x2)/2; f^a = x1 x2 - (x1+x2)/2.
    CHECK(fs.coeff(SubsetMask::from_players(2, {1})) == rat(1, 2));
    CHECK(fs.coeff(SubsetMask::from_players(2, {2})) == rat(1, 2));
    CHECK(fs.coeff(SubsetMask::full(2)) == 0);
    CHECK(fa.coeff(SubsetMask::full(2)) == 1);
    CHECK(fa.coeff(SubsetMask::from_players(2, {1})) == rat(-1, 2));
}

TEST_CASE("interaction is linear and symmetric on closed-form paths") {
    Xoshiro256pp rng(99991);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const MultilinearPoly<Rational> f = random_poly(rng, n), g = random_poly(rng, n);
        const Rational alpha = random_rational(rng), beta = random_rational(rng);
        MultilinearPoly<Rational> combo = f;
        combo *= alpha;
        MultilinearPoly<Rational> gscaled = g;
        gscaled *= beta;
        combo += gscaled;
        Permutation pi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i + 1;
        std::swap(pi[0], pi[static_cast<std::size_t>(n - 1)]);
        const auto fspec = FunctionSpec::multilinear(f);
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            CHECK(index_from_poly_coeffs(combo, s) ==
                  alpha * index_from_poly_coeffs(f, s) + beta * index_from_poly_coeffs(g, s));
            CHECK(*interaction(permute(fspec, pi), apply_permutation(s, pi)).exact ==
                  *interaction(fspec, s).exact);
        });
    }
}
