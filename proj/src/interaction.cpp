#include "cubei/interaction.hpp"

#include <cmath>

#include "cubei/discrete.hpp"
#include "cubei/estimators.hpp"
#include "cubei/parallel.hpp"
#include "cubei/quadrature.hpp"

namespace cubei {

std::optional<Rational> interaction_exact(const FunctionSpec& spec, const SubsetMask& s) {
    if (s.n() != spec.n()) throw std::invalid_argument("interaction: ground set mismatch");
    return std::visit(
        [&](const auto& v) -> std::optional<Rational> {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, MultilinearSpec>) {
                return index_from_poly_coeffs(v.poly, s);
            } else if constexpr (std::is_same_v<V, ChoquetSpec>) {
                return choquet_interaction(v.coeffs, s);
            } else if constexpr (std::is_same_v<V, PseudoMultilinearSpec>) {
                return pseudo_multilinear_interaction(v.poly, v.transforms, s);
            } else if constexpr (std::is_same_v<V, MultiplicativeSpec>) {
                MultilinearPoly<Rational> full(spec.n());
                full.set(SubsetMask::full(spec.n()), 1);
                return pseudo_multilinear_interaction(full, v.transforms, s);
            } else if constexpr (std::is_same_v<V, GeometricMeanSpec>) {
                return geometric_mean_interaction(v.weights, s);
            } else {
                return std::nullopt;
            }
        },
        spec.payload());
}

namespace {

double pow_int(double base, int e) {
    double acc = 1.0;
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

IndexValue interaction_quadrature(const FunctionSpec& spec, const SubsetMask& s, const IntegratorConfig& cfg) {
    // Axes outside the declared support integrate to 1; a factor
    // (x_i - 1/2) on an unused axis kills the integral outright.
    if ((s.bits() & ~spec.depends()) != 0) return IndexValue::closed(Rational(0));
    const LoweredSpec lowered(spec);
    TensorIntegralSpec t;
    t.active = spec.depends();
    t.centered = s.bits();
    t.order = cfg.gauss_order;
    const double raw = tensor_integral(lowered, t);
    return IndexValue::quadrature(pow_int(12.0, s.size()) * raw);
}

}  // namespace

IndexValue interaction(const FunctionSpec& spec, const SubsetMask& s, const IntegratorConfig& cfg) {
    if (s.n() != spec.n()) throw std::invalid_argument("interaction: ground set mismatch");
    switch (cfg.mode) {
        case IntegratorConfig::Mode::Auto: {
            if (auto exact = interaction_exact(spec, s)) return IndexValue::closed(std::move(*exact));
            return interaction_quadrature(spec, s, cfg);
        }
        case IntegratorConfig::Mode::ClosedForm: {
            if (auto exact = interaction_exact(spec, s)) return IndexValue::closed(std::move(*exact));
            throw unsupported_error("no closed form for black-box specs; use quadrature or Monte Carlo");
        }
        case IntegratorConfig::Mode::GaussTensor: {
            // Min kinks break polynomial exactness; Lovasz forms always
            // resolve through their closed form.
            if (spec.get_if<ChoquetSpec>()) return IndexValue::closed(*interaction_exact(spec, s));
            return interaction_quadrature(spec, s, cfg);
        }
        case IntegratorConfig::Mode::MonteCarlo: {
            if (cfg.samples < 2) throw std::invalid_argument("Monte Carlo requires at least 2 samples for a stderr");
            const Estimate e = estimate(spec, s, EstimatorKind::DirectInnerProduct, cfg.samples, cfg.seed);
            return IndexValue::monte_carlo(e.value, e.stderr_est);
        }
    }
    throw std::logic_error("unreachable");
}

InteractionTable interaction_table(const FunctionSpec& spec, int k, const IntegratorConfig& cfg) {
    const int n = spec.n();
    if (k < 0 || k > n) throw std::invalid_argument("interaction_table: k out of range [0,n]");
    double entry_count = 0;
    for (int s = 0; s <= k; ++s) entry_count += to_double(binomial(static_cast<unsigned>(n), static_cast<unsigned>(s)));
    if (entry_count > static_cast<double>(1u << 22))
        throw unsupported_error("interaction table exceeds 2^22 entries; lower --max-order");
    const std::vector<SubsetMask> subsets = subsets_of_size_at_most(n, k);
    std::vector<IndexValue> values(subsets.size());
    parallel_for(subsets.size(), [&](std::size_t i) { values[i] = interaction(spec, subsets[i], cfg); });
    InteractionTable table;
    table.n = n;
    for (std::size_t i = 0; i < subsets.size(); ++i) table.entries.emplace(subsets[i].bits(), std::move(values[i]));
    return table;
}

BestKApprox best_k_approx(const FunctionSpec& spec, int k, const IntegratorConfig& cfg) {
    const int n = spec.n();
    if (k < 0 || k > n) throw std::invalid_argument("best_k_approx: k out of range [0,n]");
    BestKApprox out{MultilinearPoly<double>(n), std::nullopt, interaction_table(spec, k, cfg)};
    bool all_exact = true;
    for (const auto& [bits, v] : out.centered.entries) all_exact = all_exact && v.exact.has_value();
    // a_k(S) = sum_{T sup S, |T| <= k} (-1/2)^{|T|-|S|} I(f,T).
    if (all_exact) {
        MultilinearPoly<Rational> poly(n);
        for (const auto& [sbits, unused] : out.centered.entries) {
            Rational acc = 0;
            for (const auto& [tbits, v] : out.centered.entries) {
                if ((tbits & sbits) != sbits) continue;
                acc += *v.exact * neg_half_pow(static_cast<unsigned>(std::popcount(tbits) - std::popcount(sbits)));
            }
            if (acc != 0) poly.set(SubsetMask(sbits, n), acc);
        }
        out.poly = to_double_poly(poly);
        out.exact = std::move(poly);
    } else {
        for (const auto& [sbits, unused] : out.centered.entries) {
            double acc = 0;
            for (const auto& [tbits, v] : out.centered.entries) {
                if ((tbits & sbits) != sbits) continue;
                const int e = std::popcount(tbits) - std::popcount(sbits);
                acc += v.value * ((e & 1) ? -1.0 : 1.0) / pow_int(2.0, e);
            }
            if (acc != 0) out.poly.set(SubsetMask(sbits, n), acc);
        }
    }
    return out;
}

double w_basis_eval(const SubsetMask& s, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.n()) throw std::invalid_argument("w_basis_eval: point dimension mismatch");
    double acc = std::pow(12.0, s.size() / 2.0);
    for (int p : s.players()) acc *= x[static_cast<std::size_t>(p - 1)] - 0.5;
    return acc;
}

namespace {

std::vector<double> shifted_point(const SubsetMask& s, std::span<const double> h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.n() || static_cast<int>(h.size()) != s.n())
        throw std::invalid_argument("shift: vector dimension mismatch");
    std::vector<double> y(x.begin(), x.end());
    for (int p : s.players()) y[static_cast<std::size_t>(p - 1)] += h[static_cast<std::size_t>(p - 1)];
    for (double v : y)
        if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("shift: point leaves the unit cube");
    return y;
}

}  // namespace

double shift(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h, std::span<const double> x) {
    return eval(spec, shifted_point(s, h, x));
}

double s_difference(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h,
                    std::span<const double> x) {
    // Moebius expansion of the shift map: sum over T subset S with
    // alternating signs.
    double acc = 0.0;
    const int ssize = s.size();
    for_each_submask(s.bits(), [&](std::uint64_t t) {
        const SubsetMask tm(t, s.n());
        const double v = shift(spec, tm, h, x);
        acc += ((ssize - tm.size()) & 1) ? -v : v;
    });
    return acc;
}

double difference_quotient(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h,
                           std::span<const double> x) {
    double denom = 1.0;
    for (int p : s.players()) {
        const double hi = h[static_cast<std::size_t>(p - 1)];
        if (hi == 0.0) throw std::invalid_argument("difference_quotient: h_i = 0 on S");
        denom *= hi;
    }
    return s_difference(spec, s, h, x) / denom;
}

FunctionSpec as_black_box(const FunctionSpec& spec) {
    if (spec.get_if<BlackBoxSpec>()) return spec;
    FunctionSpec copy = spec;
    auto fn = [copy](std::span<const double> x) { return eval(copy, x); };
    return FunctionSpec::black_box(spec.n(), fn, spec.smooth(), spec.depends());
}

FunctionSpec dual(const FunctionSpec& spec) {
    const int n = spec.n();
    return std::visit(
        [&](const auto& v) -> FunctionSpec {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, MultilinearSpec>) {
                return FunctionSpec::multilinear(dual_poly(v.poly));
            } else if constexpr (std::is_same_v<V, ChoquetSpec>) {
                // Dual game w(S) = 1 - v(N \ S); its Lovasz form is f^d.
                const SetFunction<Rational> game = zeta(v.coeffs);
                SetFunction<Rational> w(n);
                const std::uint64_t all = SubsetMask::full(n).bits();
                for (std::uint64_t bits = 0; bits < w.size(); ++bits)
                    w.at_bits(bits) = 1 - game.at_bits(all & ~bits);
                return FunctionSpec::choquet(mobius(w));
            } else if constexpr (std::is_same_v<V, BlackBoxSpec>) {
                auto inner = v.evaluate;
                auto fn = [inner](std::span<const double> x) {
                    std::vector<double> y(x.size());
                    for (std::size_t i = 0; i < y.size(); ++i) y[i] = 1.0 - x[i];
                    return 1.0 - inner(y);
                };
                return FunctionSpec::black_box(n, fn, v.smooth, spec.depends());
            } else {
                throw unsupported_error(std::string("dual: ") + spec.kind_name() +
                                        " is not closed under dualization; wrap with as_black_box");
            }
        },
        spec.payload());
}

std::pair<MultilinearPoly<Rational>, MultilinearPoly<Rational>> self_dual_split(const MultilinearPoly<Rational>& poly) {
    const MultilinearPoly<Rational> d = dual_poly(poly);
    MultilinearPoly<Rational> sym = poly, anti = poly;
    sym += d;
    sym *= rat(1, 2);
    anti -= d;
    anti *= rat(1, 2);
    return {std::move(sym), std::move(anti)};
}

}  // namespace cubei
