#include "cubei/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "cubei/discrete.hpp"
#include "cubei/estimators.hpp"
#include "cubei/interaction.hpp"
#include "cubei/quadrature.hpp"
#include "cubei/rng.hpp"
#include "cubei/stats.hpp"

// Verification suite behind `verify` and the acceptance criteria. Oracles
// used here (normal equations, superset sums over the Moebius table) are
// written against the definitions, independent of the library code paths
// they check.

namespace cubei {

namespace {

// Absolute floor for Monte Carlo z-tests: estimators that are exact on a
// target (zero variance up to rounding) would otherwise fail on 1e-16 dust.
constexpr double kZeroFloor = 1e-12;

Rational random_rational(Xoshiro256pp& rng, long max_num = 8, long max_den = 6) {
    const long num = static_cast<long>(rng.next() % static_cast<std::uint64_t>(2 * max_num + 1)) - max_num;
    const long den = 1 + static_cast<long>(rng.next() % static_cast<std::uint64_t>(max_den));
    return rat(num, den);
}

MultilinearPoly<Rational> random_poly(Xoshiro256pp& rng, int n, double keep = 0.7) {
    MultilinearPoly<Rational> p(n);
    for (std::uint64_t s = 0; s < (1ull << n); ++s)
        if (rng.uniform() < keep) p.add_bits(s, random_rational(rng));
    return p;
}

SetFunction<Rational> random_capacity_coeffs(Xoshiro256pp& rng, int n, double keep = 0.6) {
    SetFunction<Rational> a(n);
    for (std::uint64_t s = 1; s < a.size(); ++s)
        if (rng.uniform() < keep) a.at_bits(s) = random_rational(rng);
    return a;
}

FunctionSpec arithmetic_mean(int n) {
    MultilinearPoly<Rational> p(n);
    for (int i = 1; i <= n; ++i) p.set(SubsetMask::singleton(n, i), rat(1, n));
    return FunctionSpec::multilinear(p);
}

FunctionSpec min_spec(int n) {
    SetFunction<Rational> a(n);
    a[SubsetMask::full(n)] = 1;
    return FunctionSpec::choquet(std::move(a));
}

struct Failures {
    long cases = 0;
    long failed = 0;
    std::string first;

    void pass() { ++cases; }
    void fail(const std::string& what) {
        ++cases;
        if (failed++ == 0) first = what;
    }
    void check(bool ok, const std::string& what) {
        if (ok)
            pass();
        else
            fail(what);
    }

    CheckResult result(std::string name) const {
        CheckResult r;
        r.name = std::move(name);
        r.pass = failed == 0;
        r.cases = cases;
        r.detail = failed == 0 ? "" : "failed " + std::to_string(failed) + "/" + std::to_string(cases) + ": " + first;
        return r;
    }
};

std::string describe(const char* what, int n, const SubsetMask& s) {
    std::ostringstream os;
    os << what << " n=" << n << " S=" << s.to_string();
    return os.str();
}

// Dense rational Gaussian elimination, local to the verifier.
std::vector<Rational> solve_dense(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::runtime_error("singular normal equations");
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const Rational f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

Rational l2_monomial_inner(std::uint64_t s, std::uint64_t t) {
    Rational acc = 1;
    for (int i = 0; i < std::popcount(s & t); ++i) acc /= 3;
    for (int i = 0; i < std::popcount(s ^ t); ++i) acc /= 2;
    return acc;
}

// Least-squares fit of a multilinear polynomial by explicit normal
// equations, in the vertex metric (sum over {0,1}^n) or the L2 metric.
MultilinearPoly<Rational> normal_equations_fit(const MultilinearPoly<Rational>& f, int k, bool vertex_metric) {
    const int n = f.n();
    const std::vector<SubsetMask> basis = subsets_of_size_at_most(n, k);
    const std::size_t dim = basis.size();
    SetFunction<Rational> game(n);
    if (vertex_metric) {
        SetFunction<Rational> coeffs(n);
        for (const auto& [bits, c] : f.terms()) coeffs.at_bits(bits) = c;
        game = zeta(coeffs);
    }
    std::vector<std::vector<Rational>> gram(dim, std::vector<Rational>(dim));
    std::vector<Rational> rhs(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (vertex_metric) {
                mpz_class c = 1;
                c <<= (n - std::popcount(basis[i].bits() | basis[j].bits()));
                gram[i][j] = Rational(c);
            } else {
                gram[i][j] = l2_monomial_inner(basis[i].bits(), basis[j].bits());
            }
        }
        Rational acc = 0;
        if (vertex_metric) {
            for (std::uint64_t x = 0; x < game.size(); ++x)
                if ((x & basis[i].bits()) == basis[i].bits()) acc += game.at_bits(x);
        } else {
            for (const auto& [bits, c] : f.terms()) acc += c * l2_monomial_inner(bits, basis[i].bits());
        }
        rhs[i] = acc;
    }
    const std::vector<Rational> sol = solve_dense(std::move(gram), std::move(rhs));
    MultilinearPoly<Rational> out(n);
    for (std::size_t i = 0; i < dim; ++i)
        if (sol[i] != 0) out.set(basis[i], sol[i]);
    return out;
}

}  // namespace

CheckResult check_arithmetic_mean_r(std::uint64_t) {
    Failures f;
    for (int n = 2; n <= 10; ++n) {
        const FunctionSpec spec = arithmetic_mean(n);
        const double want = 1.0 / std::sqrt(static_cast<double>(n));
        for (int i = 1; i <= n; ++i) {
            const double got = normalized_index(spec, SubsetMask::singleton(n, i));
            f.check(std::abs(got - want) <= 1e-12, describe("r(arith-mean)", n, SubsetMask::singleton(n, i)));
        }
    }
    return f.result("arith-mean-r");
}

CheckResult check_min_max_r(std::uint64_t) {
    Failures f;
    for (int n = 2; n <= 6; ++n) {
        const FunctionSpec fmin = min_spec(n);
        // Exact sigma^2 against the cited closed form, as rationals.
        const Moments m = moments(fmin);
        const Rational want_var = Rational(n) / (Rational(n + 1) * Rational(n + 1) * Rational(n + 2));
        f.check(m.variance_exact && *m.variance_exact == want_var, "sigma^2(min) n=" + std::to_string(n));
        const double want_r = std::sqrt(3.0) / std::sqrt(static_cast<double>(n) * (n + 2));
        const FunctionSpec fmax = dual(fmin);
        for (int i = 1; i <= n; ++i) {
            const SubsetMask s = SubsetMask::singleton(n, i);
            f.check(std::abs(normalized_index(fmin, s) - want_r) <= 1e-10, describe("r(min)", n, s));
            f.check(std::abs(normalized_index(fmax, s) - want_r) <= 1e-10, describe("r(max)", n, s));
        }
    }
    return f.result("min-max-r");
}

CheckResult check_geometric_mean_r(std::uint64_t) {
    Failures f;
    for (int n = 2; n <= 6; ++n) {
        const FunctionSpec geo =
            FunctionSpec::geometric_mean(std::vector<Rational>(static_cast<std::size_t>(n), rat(1, n)));
        const double ratio = std::pow((n + 1.0) * (n + 1.0) / (n * (n + 2.0)), n) - 1.0;
        const double want = std::sqrt(3.0) / (2.0 * n + 1.0) / std::sqrt(ratio);
        const double r_geo = normalized_index(geo, SubsetMask::singleton(n, 1));
        f.check(std::abs(r_geo - want) <= 1e-10, "r(sym-geo-mean) n=" + std::to_string(n));
        const double r_arith = normalized_index(arithmetic_mean(n), SubsetMask::singleton(n, 1));
        const double r_min = normalized_index(min_spec(n), SubsetMask::singleton(n, 1));
        f.check(r_arith > r_min, "ordering arith > min, n=" + std::to_string(n));
        f.check(r_arith > r_geo, "ordering arith > geo, n=" + std::to_string(n));
    }
    return f.result("sym-geo-mean-r");
}

CheckResult check_banzhaf_equivalence(std::uint64_t seed, bool heavy) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0xB4);
    const int polys = heavy ? 200 : 40;
    for (int trial = 0; trial < polys; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 8);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const Game v = vertex_restriction(p);
        const SetFunction<Rational> a = mobius(v);
        // Discrete side: the weighted superset sums over the Moebius table.
        bool all_equal = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            Rational discrete = 0;
            const std::uint64_t rest = SubsetMask::full(n).bits() & ~s.bits();
            for_each_submask(rest, [&](std::uint64_t u) {
                const Rational& c = a.at_bits(s.bits() | u);
                if (c != 0) discrete += c * half_pow(static_cast<unsigned>(std::popcount(u)));
            });
            if (discrete != index_from_poly_coeffs(p, s)) all_equal = false;
        });
        // Tie in the public operation on a sampled subset.
        const SubsetMask probe(rng.next() & ((1ull << n) - 1), n);
        all_equal = all_equal && banzhaf_interaction(v, probe) == index_from_poly_coeffs(p, probe);
        f.check(all_equal, "poly trial " + std::to_string(trial) + " n=" + std::to_string(n));
    }
    return f.result("banzhaf-equivalence");
}

CheckResult check_projection(std::uint64_t seed, bool heavy) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x9A);
    const int trials = heavy ? 50 : 12;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 4);
        FunctionSpec spec = (trial % 2 == 0) ? FunctionSpec::multilinear(random_poly(rng, n))
                                             : FunctionSpec::choquet(random_capacity_coeffs(rng, n));
        for (int k = 0; k <= n; ++k) {
            const BestKApprox fk = best_k_approx(spec, k);
            if (!fk.exact) {
                f.fail("expected exact projection");
                continue;
            }
            const FunctionSpec fk_spec = FunctionSpec::multilinear(*fk.exact);
            bool ok = true;
            for_each_subset_of_size_at_most(n, k, [&](SubsetMask s) {
                if (*interaction(fk_spec, s).exact != *interaction(spec, s).exact) ok = false;
            });
            f.check(ok, "exact projection trial " + std::to_string(trial) + " k=" + std::to_string(k));
        }
    }
    // Quadrature path: smooth black boxes, tolerance 1e-10.
    const int bb_trials = heavy ? 10 : 3;
    for (int trial = 0; trial < bb_trials; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 2);
        const double a = rng.uniform(), b = rng.uniform();
        const FunctionSpec spec = FunctionSpec::black_box(
            n,
            [a, b](std::span<const double> x) {
                double acc = std::exp(a * x[0] - b * x[1]);
                for (std::size_t i = 2; i < x.size(); ++i) acc += x[i] * x[i] * b;
                return acc;
            },
            true);
        for (int k = 0; k <= n; ++k) {
            const BestKApprox fk = best_k_approx(spec, k);
            MultilinearPoly<Rational> exactified(n);
            for (const auto& [bits, c] : fk.poly.terms()) {
                Rational r(c);
                r.canonicalize();
                exactified.add_bits(bits, r);
            }
            const FunctionSpec fk_spec = FunctionSpec::multilinear(exactified);
            bool ok = true;
            for_each_subset_of_size_at_most(n, k, [&](SubsetMask s) {
                const double lhs = interaction(fk_spec, s).value;
                const double rhs = interaction(spec, s).value;
                if (std::abs(lhs - rhs) > 1e-10) ok = false;
            });
            f.check(ok, "quadrature projection trial " + std::to_string(trial) + " k=" + std::to_string(k));
        }
    }
    return f.result("projection-preserves-index");
}

CheckResult check_least_squares_oracle(std::uint64_t seed, bool heavy) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x15);
    const int max_n = heavy ? 6 : 4;
    for (int n = 1; n <= max_n; ++n) {
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        const FunctionSpec spec = FunctionSpec::multilinear(p);
        const Game v = vertex_restriction(p);
        for (int k = 0; k <= n; ++k) {
            const BestKApprox cont = best_k_approx(spec, k);
            const bool ok_cont = cont.exact && *cont.exact == normal_equations_fit(p, k, /*vertex_metric=*/false);
            const bool ok_disc = best_k_approx_discrete(v, k) == normal_equations_fit(p, k, /*vertex_metric=*/true);
            f.check(ok_cont, "continuous LS n=" + std::to_string(n) + " k=" + std::to_string(k));
            f.check(ok_disc, "discrete LS n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return f.result("least-squares-oracle");
}

CheckResult check_estimator_agreement(std::uint64_t seed, bool heavy) {
    Failures f;
    const std::uint64_t samples = heavy ? 100000 : 20000;
    const int seeds = heavy ? 10 : 4;
    const int required = heavy ? 9 : 3;

    struct Target {
        FunctionSpec spec;
        SubsetMask s;
        double value;
        std::vector<EstimatorKind> kinds;
    };
    std::vector<Target> targets;
    {
        MultilinearPoly<Rational> p(2);
        p.set(SubsetMask::full(2), 1);
        const FunctionSpec x1x2 = FunctionSpec::multilinear(p);
        const std::vector<EstimatorKind> all{EstimatorKind::DirectInnerProduct, EstimatorKind::BetaDerivative,
                                             EstimatorKind::BoxVolume, EstimatorKind::DifferenceQuotient};
        targets.push_back({x1x2, SubsetMask::full(2), 1.0, all});
        targets.push_back({x1x2, SubsetMask::singleton(2, 1), 0.5, all});
    }
    for (int n : {2, 3}) {
        // BetaDerivative is excluded on the kinked Lovasz forms by its own
        // precondition; the remaining representations apply.
        const FunctionSpec m = min_spec(n);
        const double want = to_double(*interaction(m, SubsetMask::singleton(n, 1)).exact);
        targets.push_back({m, SubsetMask::singleton(n, 1), want,
                           {EstimatorKind::DirectInnerProduct, EstimatorKind::BoxVolume,
                            EstimatorKind::DifferenceQuotient}});
    }

    for (const Target& t : targets) {
        for (EstimatorKind kind : t.kinds) {
            int hits = 0;
            for (int s = 0; s < seeds; ++s) {
                const Estimate e = estimate(t.spec, t.s, kind, samples, seed + static_cast<std::uint64_t>(s));
                if (std::abs(e.value - t.value) <= 4.0 * e.stderr_est + kZeroFloor) ++hits;
            }
            f.check(hits >= required, std::string(t.spec.kind_name()) + " " + t.s.to_string() + " " +
                                          estimator_name(kind) + ": " + std::to_string(hits) + "/" +
                                          std::to_string(seeds) + " seeds inside 4*stderr");
        }
    }
    return f.result("estimator-agreement");
}

CheckResult check_box_volume_normalization(std::uint64_t seed, bool heavy) {
    Failures f;
    const std::uint64_t samples = heavy ? 100000 : 20000;
    for (int size = 1; size <= 3; ++size) {
        // f = v_S: stripping the 6^{|S|} normalization from the box
        // estimator recovers the average S-box volume mu(S).
        MultilinearPoly<Rational> p(size);
        p.set(SubsetMask::full(size), 1);
        const FunctionSpec spec = FunctionSpec::multilinear(p);
        double mu = 1.0;
        for (int i = 0; i < size; ++i) mu /= 6.0;
        const Estimate e = estimate(spec, SubsetMask::full(size), EstimatorKind::BoxVolume, samples,
                                    seed + static_cast<std::uint64_t>(size));
        const double mu_hat = e.value * mu;
        const double se = e.stderr_est * mu;
        f.check(std::abs(mu_hat - mu) <= 4.0 * se + kZeroFloor,
                "mu(S) |S|=" + std::to_string(size) + " got " + std::to_string(mu_hat));
    }
    return f.result("box-volume-mu");
}

CheckResult check_min_centered_integral(std::uint64_t) {
    Failures f;
    const int n = 4;
    for (std::uint64_t tbits = 1; tbits < (1u << n); ++tbits) {
        for (std::uint64_t sbits = 0; sbits < (1u << n); ++sbits) {
            const SubsetMask t(tbits, n), s(sbits, n);
            const auto integrand = [&](std::span<const double> x) {
                double m = 1.0;
                for (int i = 0; i < n; ++i)
                    if (tbits & (1ull << i)) m = std::min(m, x[static_cast<std::size_t>(i)]);
                for (int i = 0; i < n; ++i)
                    if (sbits & (1ull << i)) m *= x[static_cast<std::size_t>(i)] - 0.5;
                return m;
            };
            const double got = simplex_integral(integrand, n, 8);
            double want = 0.0;
            if (s.subset_of(t))
                want = to_double(half_pow(static_cast<unsigned>(s.size())) * beta_fn(s.size() + 1, t.size() + 1));
            f.check(std::abs(got - want) <= 1e-10,
                    "integral S=" + s.to_string() + " T=" + t.to_string() + " got " + std::to_string(got));
        }
    }
    return f.result("min-centered-integral");
}

CheckResult check_duality(std::uint64_t seed, bool heavy) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0xD7);
    const int trials = heavy ? 100 : 30;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 5);
        const bool use_choquet = trial % 2 == 1;
        FunctionSpec spec = use_choquet ? FunctionSpec::choquet(random_capacity_coeffs(rng, n))
                                        : FunctionSpec::multilinear(random_poly(rng, n));
        const FunctionSpec d = dual(spec);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            const Rational lhs = *interaction(d, s).exact;
            const Rational rhs = *interaction(spec, s).exact;
            if (s.is_empty()) {
                if (lhs != 1 - rhs) ok = false;
            } else if (lhs != (s.size() % 2 == 0 ? -rhs : rhs)) {
                ok = false;
            }
        });
        f.check(ok, "sign law trial " + std::to_string(trial));

        if (!use_choquet) {
            // Self-dual part: I(.,{}) = 1/2 and even orders vanish; the
            // parity split reproduces the original index.
            const auto& p = spec.get_if<MultilinearSpec>()->poly;
            const auto [fs, fa] = self_dual_split(p);
            bool ok_self = index_from_poly_coeffs(fs, SubsetMask::empty(n)) == rat(1, 2);
            for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
                if (s.is_empty()) return;
                if (s.size() % 2 == 0 && index_from_poly_coeffs(fs, s) != 0) ok_self = false;
                const Rational part = index_from_poly_coeffs(s.size() % 2 == 0 ? fa : fs, s);
                if (part != index_from_poly_coeffs(p, s)) ok_self = false;
            });
            f.check(ok_self, "self-dual split trial " + std::to_string(trial));
        }
    }
    return f.result("duality-laws");
}

CheckResult check_structural_zeros(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x52);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 3 + static_cast<int>(rng.next() % 4);
        // Ineffective variable: polynomial avoiding x_i entirely.
        const int dead = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        const MultilinearPoly<Rational> source = random_poly(rng, n);
        MultilinearPoly<Rational> p(n);
        for (const auto& [bits, c] : source.terms())
            if (!(bits & (1ull << (dead - 1)))) p.add_bits(bits, c);
        const FunctionSpec spec = FunctionSpec::multilinear(p);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            if (s.contains(dead) && *interaction(spec, s).exact != 0) ok = false;
        });
        f.check(ok, "ineffective variable trial " + std::to_string(trial));

        // Same through a constant transform and a zero geometric weight.
        std::vector<UnaryTransform> transforms(static_cast<std::size_t>(n), Identity{});
        transforms[static_cast<std::size_t>(dead - 1)] = Affine{rat(0), rat(2, 3)};
        MultilinearPoly<Rational> g(n);
        g.set(SubsetMask::full(n), 1);
        const FunctionSpec pm = FunctionSpec::pseudo_multilinear(g, transforms);
        bool ok_pm = true;
        for_each_subset_of_size_at_most(n, 2, [&](SubsetMask s) {
            if (s.contains(dead) && *interaction(pm, s).exact != 0) ok_pm = false;
        });
        f.check(ok_pm, "constant transform trial " + std::to_string(trial));

        // Dummy partition: disjoint supports S | N\S.
        const std::uint64_t all = SubsetMask::full(n).bits();
        const std::uint64_t left = 1 + (rng.next() % (all - 1));
        MultilinearPoly<Rational> fleft(n), fright(n);
        const MultilinearPoly<Rational> split_source = random_poly(rng, n);
        for (const auto& [bits, c] : split_source.terms()) {
            if ((bits & ~left) == 0)
                fleft.add_bits(bits, c);
            else if ((bits & left) == 0)
                fright.add_bits(bits, c);
        }
        MultilinearPoly<Rational> sum = fleft;
        sum += fright;
        const FunctionSpec dummy = FunctionSpec::multilinear(sum);
        bool ok_dummy = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask kmask) {
            const bool straddles = (kmask.bits() & left) != 0 && (kmask.bits() & all & ~left) != 0;
            if (straddles && *interaction(dummy, kmask).exact != 0) ok_dummy = false;
        });
        f.check(ok_dummy, "dummy partition trial " + std::to_string(trial));
    }

    // k-additivity: sums of components each touching <= k variables.
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 4 + static_cast<int>(rng.next() % 3);
        const int k = 2 + static_cast<int>(rng.next() % 2);
        MultilinearPoly<Rational> total(n);
        std::map<std::uint64_t, MultilinearPoly<Rational>> components;
        for_each_subset_of_size_at_most(n, k, [&](SubsetMask r) {
            if (r.size() != k) return;
            MultilinearPoly<Rational> comp(n);
            for_each_submask(r.bits(), [&](std::uint64_t sub) { comp.add_bits(sub, random_rational(rng)); });
            total += comp;
            components.emplace(r.bits(), std::move(comp));
        });
        const FunctionSpec spec = FunctionSpec::multilinear(total);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            const Rational got = *interaction(spec, s).exact;
            if (s.size() > k && got != 0) ok = false;
            if (s.size() == k && got != index_from_poly_coeffs(components.at(s.bits()), s)) ok = false;
        });
        f.check(ok, "k-additive trial " + std::to_string(trial));
    }
    return f.result("structural-zeros");
}

CheckResult check_r_squared_consistency(std::uint64_t seed) {
    Failures f;
    MultilinearPoly<Rational> p(2);
    p.set(SubsetMask::full(2), 1);
    const FunctionSpec x1x2 = FunctionSpec::multilinear(p);
    f.check(std::abs(r_squared(x1x2, 1) - 6.0 / 7.0) <= 1e-14, "R2_1(x1 x2) = 6/7");
    f.check(r_squared(x1x2, 2) == 1.0, "R2_2(x1 x2) = 1");

    Xoshiro256pp rng(seed ^ 0x22);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        FunctionSpec spec = (trial % 3 == 2) ? FunctionSpec::choquet(random_capacity_coeffs(rng, n))
                                             : FunctionSpec::multilinear(random_poly(rng, n));
        const Moments m = moments(spec);
        if (m.variance_exact && *m.variance_exact == 0) continue;
        for (int k = 1; k <= n; ++k) {
            const FitReport rep = fit_report(spec, k);
            f.check(std::abs(rep.r2.back() - rep.r2_check) <= 1e-10,
                    "two R2 routes trial " + std::to_string(trial) + " k=" + std::to_string(k));
        }
        if (spec.get_if<MultilinearSpec>())
            f.check(r_squared(spec, n) == 1.0, "R2_n(multilinear) = 1 exactly, trial " + std::to_string(trial));
    }
    return f.result("r-squared-consistency");
}

CheckResult check_orthonormality(std::uint64_t) {
    Failures f;
    for (int n = 1; n <= 4; ++n) {
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            for_each_subset_of_size_at_most(n, n, [&](SubsetMask t) {
                const auto fn = [&](std::span<const double> x) { return w_basis_eval(s, x) * w_basis_eval(t, x); };
                TensorIntegralSpec cfg;
                cfg.active = SubsetMask::full(n).bits();
                const double ip = tensor_integral_fn(fn, n, cfg);
                f.check(std::abs(ip - (s == t ? 1.0 : 0.0)) <= 1e-12,
                        "inner product " + s.to_string() + "," + t.to_string());
            });
        });
    }
    return f.result("w-basis-orthonormality");
}

namespace {

// Module-level properties beyond the numbered criteria, so the quick suite
// still exercises the whole surface.

CheckResult check_mobius_zeta_roundtrip(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x31);
    for (int n = 1; n <= 10; ++n) {
        SetFunction<Rational> v(n);
        for (std::uint64_t s = 0; s < v.size(); ++s) v.at_bits(s) = random_rational(rng);
        f.check(zeta(mobius(v)) == v, "round trip n=" + std::to_string(n));
    }
    return f.result("mobius-zeta-inverse");
}

CheckResult check_difference_average_pair(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x44);
    for (int n = 1; n <= 8; ++n) {
        SetFunction<Rational> v(n);
        for (std::uint64_t s = 0; s < v.size(); ++s) v.at_bits(s) = random_rational(rng);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            if (banzhaf_interaction(v, s) != discrete_derivative_average(v, s)) ok = false;
        });
        f.check(ok, "difference average n=" + std::to_string(n));
    }
    return f.result("banzhaf-difference-average");
}

CheckResult check_taylor_identity(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x77);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 6);
        const MultilinearPoly<Rational> p = random_poly(rng, n);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            if (taylor_at_center(p, s) != index_from_poly_coeffs(p, s)) ok = false;
        });
        f.check(ok, "taylor trial " + std::to_string(trial));
    }
    return f.result("taylor-at-center");
}

CheckResult check_symmetry_linearity(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0x88);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const MultilinearPoly<Rational> a = random_poly(rng, n), b = random_poly(rng, n);
        const Rational ca = random_rational(rng), cb = random_rational(rng);
        MultilinearPoly<Rational> combo = a;
        combo *= ca;
        MultilinearPoly<Rational> scaled_b = b;
        scaled_b *= cb;
        combo += scaled_b;
        Permutation pi(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i + 1;
        for (int i = n - 1; i > 0; --i)
            std::swap(pi[static_cast<std::size_t>(i)], pi[rng.next() % static_cast<std::uint64_t>(i + 1)]);
        const FunctionSpec fa = FunctionSpec::multilinear(a);
        const FunctionSpec fpi = permute(fa, pi);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            if (index_from_poly_coeffs(combo, s) !=
                ca * index_from_poly_coeffs(a, s) + cb * index_from_poly_coeffs(b, s))
                ok = false;
            if (*interaction(fpi, apply_permutation(s, pi)).exact != *interaction(fa, s).exact) ok = false;
        });
        f.check(ok, "trial " + std::to_string(trial));
    }
    return f.result("linearity-symmetry");
}

CheckResult check_s_increasing(std::uint64_t seed) {
    Failures f;
    Xoshiro256pp rng(seed ^ 0xAB);
    // Min functions and products of nondecreasing unaries are S-increasing;
    // their indexes must be nonnegative.
    for (int n = 2; n <= 4; ++n) {
        const FunctionSpec m = min_spec(n);
        bool ok = true;
        for_each_subset_of_size_at_most(n, n, [&](SubsetMask s) {
            if (*interaction(m, s).exact < 0) ok = false;
        });
        f.check(ok, "min S-increasing n=" + std::to_string(n));

        std::vector<UnaryTransform> ups;
        for (int i = 0; i < n; ++i)
            ups.push_back(Affine{rat(1 + static_cast<long>(rng.next() % 3), 2),
                                 rat(static_cast<long>(rng.next() % 4), 3)});
        MultilinearPoly<Rational> g(n);
        g.set(SubsetMask::full(n), 1);
        const FunctionSpec prod = FunctionSpec::pseudo_multilinear(g, ups);
        f.check(*interaction(prod, SubsetMask::full(n)).exact >= 0, "nondecreasing product n=" + std::to_string(n));

        // Spot-check the box volumes themselves at random corners.
        bool boxes_ok = true;
        for (int probe = 0; probe < 10; ++probe) {
            std::vector<double> x(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                x[static_cast<std::size_t>(i)] = 0.8 * rng.uniform();
                h[static_cast<std::size_t>(i)] = (1.0 - x[static_cast<std::size_t>(i)]) * rng.uniform();
            }
            if (s_difference(m, SubsetMask::full(n), h, x) < -1e-12) boxes_ok = false;
        }
        f.check(boxes_ok, "min box volumes nonnegative n=" + std::to_string(n));
    }
    return f.result("s-increasing-nonneg");
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed) {
    const bool heavy = level == VerifyLevel::Full;
    std::vector<CheckResult> results;
    results.push_back(check_arithmetic_mean_r(seed));
    results.push_back(check_min_max_r(seed));
    results.push_back(check_geometric_mean_r(seed));
    results.push_back(check_banzhaf_equivalence(seed, heavy));
    results.push_back(check_projection(seed, heavy));
    results.push_back(check_least_squares_oracle(seed, heavy));
    results.push_back(check_estimator_agreement(seed, heavy));
    results.push_back(check_box_volume_normalization(seed, heavy));
    results.push_back(check_min_centered_integral(seed));
    results.push_back(check_duality(seed, heavy));
    results.push_back(check_structural_zeros(seed));
    results.push_back(check_r_squared_consistency(seed));
    results.push_back(check_orthonormality(seed));
    results.push_back(check_mobius_zeta_roundtrip(seed));
    results.push_back(check_difference_average_pair(seed));
    results.push_back(check_taylor_identity(seed));
    results.push_back(check_symmetry_linearity(seed));
    results.push_back(check_s_increasing(seed));
    return results;
}

}  // namespace cubei
