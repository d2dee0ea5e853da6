#include "cubei/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>

#include "cubei/estimators.hpp"
#include "cubei/quadrature.hpp"

namespace cubei {

namespace {

// integral of v_U v_V = (1/3)^{|U cap V|} (1/2)^{|U xor V|}.
Rational monomial_pair_integral(std::uint64_t u, std::uint64_t v) {
    Rational acc = 1;
    int shared = std::popcount(u & v), sym = std::popcount(u ^ v);
    for (int i = 0; i < shared; ++i) acc /= 3;
    for (int i = 0; i < sym; ++i) acc /= 2;
    return acc;
}

template <class T>
T poly_mean(const MultilinearPoly<T>& p) {
    T acc{};
    for (const auto& [bits, c] : p.terms()) {
        T term = c;
        for (int i = 0; i < std::popcount(bits); ++i) term /= T(2);
        acc += term;
    }
    return acc;
}

Rational poly_second_moment(const MultilinearPoly<Rational>& p) {
    Rational acc = 0;
    for (const auto& [u, cu] : p.terms())
        for (const auto& [v, cv] : p.terms()) acc += cu * cv * monomial_pair_integral(u, v);
    return acc;
}

double poly_variance_double(const MultilinearPoly<double>& p) {
    double e2 = 0;
    for (const auto& [u, cu] : p.terms())
        for (const auto& [v, cv] : p.terms()) e2 += cu * cv * to_double(monomial_pair_integral(u, v));
    const double mean = poly_mean(p);
    return e2 - mean * mean;
}

// Exact (mean, raw second moment) for the structured classes.
std::optional<std::pair<Rational, Rational>> exact_raw_moments(const FunctionSpec& spec) {
    return std::visit(
        [&](const auto& v) -> std::optional<std::pair<Rational, Rational>> {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, MultilinearSpec>) {
                return std::pair{poly_mean(v.poly), poly_second_moment(v.poly)};
            } else if constexpr (std::is_same_v<V, ChoquetSpec>) {
                // The pairwise product-moment sum is O(4^n); past n = 10 the
                // Monte Carlo route takes over.
                if (spec.n() > 10) return std::nullopt;
                return std::pair{choquet_mean(v.coeffs), choquet_second_moment(v.coeffs)};
            } else if constexpr (std::is_same_v<V, PseudoMultilinearSpec> || std::is_same_v<V, MultiplicativeSpec>) {
                MultilinearPoly<Rational> g(spec.n());
                const std::vector<UnaryTransform>* transforms;
                if constexpr (std::is_same_v<V, MultiplicativeSpec>) {
                    g.set(SubsetMask::full(spec.n()), 1);
                    transforms = &v.transforms;
                } else {
                    g = v.poly;
                    transforms = &v.transforms;
                }
                std::vector<Rational> m0(transforms->size()), m2(transforms->size());
                for (std::size_t i = 0; i < transforms->size(); ++i) {
                    m0[i] = unary_moments((*transforms)[i]).m0;
                    m2[i] = unary_square_moment((*transforms)[i]);
                }
                Rational mean = 0, raw2 = 0;
                for (const auto& [t, ct] : g.terms()) {
                    Rational term = ct;
                    for (std::uint64_t b = t; b;) {
                        term *= m0[static_cast<std::size_t>(std::countr_zero(b))];
                        b &= b - 1;
                    }
                    mean += term;
                }
                for (const auto& [t, ct] : g.terms())
                    for (const auto& [u, cu] : g.terms()) {
                        Rational term = ct * cu;
                        for (std::uint64_t b = t & u; b;) {
                            term *= m2[static_cast<std::size_t>(std::countr_zero(b))];
                            b &= b - 1;
                        }
                        for (std::uint64_t b = t ^ u; b;) {
                            term *= m0[static_cast<std::size_t>(std::countr_zero(b))];
                            b &= b - 1;
                        }
                        raw2 += term;
                    }
                return std::pair{mean, raw2};
            } else if constexpr (std::is_same_v<V, GeometricMeanSpec>) {
                Rational mean = 1, raw2 = 1;
                for (const Rational& c : v.weights) {
                    mean /= (c + 1);
                    raw2 /= (2 * c + 1);
                }
                return std::pair{mean, raw2};
            } else {
                return std::nullopt;
            }
        },
        spec.payload());
}

}  // namespace

Moments moments(const FunctionSpec& spec, const IntegratorConfig& cfg) {
    if (auto exact = exact_raw_moments(spec); exact && cfg.mode != IntegratorConfig::Mode::MonteCarlo) {
        Rational var = exact->second - exact->first * exact->first;
        Moments m;
        m.mean = to_double(exact->first);
        m.sigma = std::sqrt(std::max(0.0, to_double(var)));
        m.mean_exact = std::move(exact->first);
        m.variance_exact = std::move(var);
        m.method = ValueMethod::ClosedForm;
        return m;
    }
    // Min kinks rule out the tensor rule; Lovasz forms without an exact
    // moment path go through Monte Carlo whatever the config says.
    if (cfg.mode == IntegratorConfig::Mode::MonteCarlo || spec.get_if<ChoquetSpec>()) {
        const Estimate e1 = estimate(spec, SubsetMask::empty(spec.n()), EstimatorKind::DirectInnerProduct, cfg.samples,
                                     cfg.seed);
        FunctionSpec squared = as_black_box(spec);
        const auto* bb = squared.get_if<BlackBoxSpec>();
        auto inner = bb->evaluate;
        FunctionSpec sq = FunctionSpec::black_box(
            spec.n(), [inner](std::span<const double> x) { const double v = inner(x); return v * v; }, spec.smooth(),
            spec.depends());
        const Estimate e2 = estimate(sq, SubsetMask::empty(spec.n()), EstimatorKind::DirectInnerProduct, cfg.samples,
                                     cfg.seed + 1);
        Moments m;
        m.mean = e1.value;
        m.sigma = std::sqrt(std::max(0.0, e2.value - e1.value * e1.value));
        m.method = ValueMethod::MonteCarlo;
        return m;
    }
    const LoweredSpec lowered(spec);
    TensorIntegralSpec t;
    t.active = spec.depends();
    t.order = cfg.gauss_order;
    const double mean = tensor_integral(lowered, t);
    t.square = true;
    const double raw2 = tensor_integral(lowered, t);
    Moments m;
    m.mean = mean;
    m.sigma = std::sqrt(std::max(0.0, raw2 - mean * mean));
    m.method = ValueMethod::Quadrature;
    return m;
}

namespace {

void require_nondegenerate(const Moments& m) {
    const bool zero = m.variance_exact ? (*m.variance_exact == 0) : (m.sigma <= 0.0);
    if (zero) throw degenerate_error("sigma(f) = 0: normalized statistics undefined");
}

}  // namespace

double normalized_index(const FunctionSpec& spec, const SubsetMask& s, const IntegratorConfig& cfg) {
    if (s.is_empty()) throw std::invalid_argument("normalized_index: S must be nonempty");
    const Moments m = moments(spec, cfg);
    require_nondegenerate(m);
    const IndexValue iv = interaction(spec, s, cfg);
    return iv.value / (std::pow(12.0, s.size() / 2.0) * m.sigma);
}

double r_squared(const FunctionSpec& spec, int k, const IntegratorConfig& cfg) {
    if (k < 0 || k > spec.n()) throw std::invalid_argument("r_squared: k out of range [0,n]");
    const Moments m = moments(spec, cfg);
    require_nondegenerate(m);
    if (k == 0) return 0.0;
    const InteractionTable table = interaction_table(spec, k, cfg);
    bool all_exact = m.variance_exact.has_value();
    for (const auto& [bits, v] : table.entries) all_exact = all_exact && v.exact.has_value();
    if (all_exact) {
        Rational acc = 0;
        for (const auto& [bits, v] : table.entries) {
            const int sz = std::popcount(bits);
            if (sz == 0) continue;
            Rational term = *v.exact * *v.exact;
            for (int i = 0; i < sz; ++i) term /= 12;
            acc += term;
        }
        return to_double(acc / *m.variance_exact);
    }
    double acc = 0;
    for (const auto& [bits, v] : table.entries) {
        const int sz = std::popcount(bits);
        if (sz == 0) continue;
        acc += v.value * v.value / std::pow(12.0, sz);
    }
    return acc / (m.sigma * m.sigma);
}

FitReport fit_report(const FunctionSpec& spec, int k, const IntegratorConfig& cfg) {
    if (k < 0 || k > spec.n()) throw std::invalid_argument("fit_report: k out of range [0,n]");
    const Moments m = moments(spec, cfg);
    require_nondegenerate(m);
    FitReport report;
    report.mean = m.mean;
    report.sigma = m.sigma;
    const BestKApprox approx = best_k_approx(spec, k, cfg);
    std::vector<double> cumulative(static_cast<std::size_t>(k) + 1, 0.0);
    for (const auto& [bits, v] : approx.centered.entries) {
        const int sz = std::popcount(bits);
        if (sz == 0) continue;
        const double r = v.value / (std::pow(12.0, sz / 2.0) * m.sigma);
        report.r_table.emplace(bits, r);
        cumulative[static_cast<std::size_t>(sz)] += r * r;
    }
    report.r2.resize(static_cast<std::size_t>(k));
    double running = 0.0;
    for (int j = 1; j <= k; ++j) {
        running += cumulative[static_cast<std::size_t>(j)];
        report.r2[static_cast<std::size_t>(j - 1)] = running;
    }
    // Second route: variance of the expanded approximation polynomial.
    report.r2_check = poly_variance_double(approx.poly) / (m.sigma * m.sigma);
    return report;
}

}  // namespace cubei
