#include "cubei/closed_forms.hpp"

namespace cubei {

Rational beta_fn(int p, int q) {
    if (p < 1 || q < 1) throw std::invalid_argument("beta_fn: requires integer p, q >= 1");
    mpz_class num_p, num_q, den;
    mpz_fac_ui(num_p.get_mpz_t(), static_cast<unsigned long>(p - 1));
    mpz_fac_ui(num_q.get_mpz_t(), static_cast<unsigned long>(q - 1));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(p + q - 1));
    Rational r(num_p * num_q, den);
    r.canonicalize();
    return r;
}

UnaryMoments unary_moments(const UnaryTransform& u) {
    validate_unary(u);
    return std::visit(
        [](const auto& v) -> UnaryMoments {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Identity>) {
                return {rat(1, 2), rat(1)};
            } else if constexpr (std::is_same_v<V, Power>) {
                const Rational& c = v.exponent;
                // m0 = 1/(c+1), m1 = 6c/((c+1)(c+2)).
                return {1 / (c + 1), 6 * c / ((c + 1) * (c + 2))};
            } else if constexpr (std::is_same_v<V, Affine>) {
                // integral of (pt+q) = p/2 + q; 12 integral of (pt+q)(t-1/2) = p.
                return {v.slope / 2 + v.intercept, v.slope};
            } else {
                // Per segment [t0,t1] the transform is y0 + m (t - t0) with
                // m = (y1-y0)/(t1-t0); both moments integrate exactly.
                Rational m0 = 0, m1raw = 0;
                for (std::size_t i = 1; i < v.knots.size(); ++i) {
                    const Rational &t0 = v.knots[i - 1].first, &t1 = v.knots[i].first;
                    const Rational &y0 = v.knots[i - 1].second, &y1 = v.knots[i].second;
                    const Rational m = (y1 - y0) / (t1 - t0);
                    const Rational d1 = t1 - t0, d2 = t1 * t1 - t0 * t0, d3 = t1 * t1 * t1 - t0 * t0 * t0;
                    const Rational b = y0 - m * t0;  // segment is m t + b
                    m0 += m * d2 / 2 + b * d1;
                    // integral of (m t + b) t dt over the segment
                    m1raw += m * d3 / 3 + b * d2 / 2;
                }
                return {m0, 12 * (m1raw - m0 / 2)};
            }
        },
        u);
}

Rational unary_square_moment(const UnaryTransform& u) {
    validate_unary(u);
    return std::visit(
        [](const auto& v) -> Rational {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Identity>) {
                return rat(1, 3);
            } else if constexpr (std::is_same_v<V, Power>) {
                return 1 / (2 * v.exponent + 1);
            } else if constexpr (std::is_same_v<V, Affine>) {
                const Rational &p = v.slope, &q = v.intercept;
                return p * p / 3 + p * q + q * q;
            } else {
                Rational acc = 0;
                for (std::size_t i = 1; i < v.knots.size(); ++i) {
                    const Rational &t0 = v.knots[i - 1].first, &t1 = v.knots[i].first;
                    const Rational &y0 = v.knots[i - 1].second, &y1 = v.knots[i].second;
                    const Rational m = (y1 - y0) / (t1 - t0);
                    const Rational b = y0 - m * t0;
                    const Rational d1 = t1 - t0, d2 = t1 * t1 - t0 * t0, d3 = t1 * t1 * t1 - t0 * t0 * t0;
                    acc += m * m * d3 / 3 + m * b * d2 + b * b * d1;
                }
                return acc;
            }
        },
        u);
}

Rational choquet_interaction(const SetFunction<Rational>& a, const SubsetMask& s) {
    if (s.n() != a.n()) throw std::invalid_argument("choquet_interaction: ground set mismatch");
    const int ssize = s.size();
    Rational acc = 0;
    const std::uint64_t rest = SubsetMask::full(a.n()).bits() & ~s.bits();
    for_each_submask(rest, [&](std::uint64_t u) {
        const std::uint64_t t = s.bits() | u;
        const Rational& c = a.at_bits(t);
        if (c == 0) return;
        const int tsize = std::popcount(t);
        if (t == 0) {
            // Constant term: contributes only to S = empty.
            acc += c;
            return;
        }
        acc += c * beta_fn(ssize + 1, tsize + 1);
    });
    if (ssize == 0) return acc;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 6, static_cast<unsigned long>(ssize));
    return acc * Rational(scale);
}

Rational pseudo_multilinear_interaction(const MultilinearPoly<Rational>& g, std::span<const UnaryTransform> transforms,
                                        const SubsetMask& s) {
    if (static_cast<int>(transforms.size()) != g.n())
        throw std::invalid_argument("pseudo_multilinear_interaction: one transform per variable required");
    if (s.n() != g.n()) throw std::invalid_argument("pseudo_multilinear_interaction: ground set mismatch");
    std::vector<UnaryMoments> m(transforms.size());
    for (std::size_t i = 0; i < transforms.size(); ++i) m[i] = unary_moments(transforms[i]);
    Rational acc = 0;
    for (const auto& [bits, c] : g.terms()) {
        if ((bits & s.bits()) != s.bits()) continue;
        Rational term = c;
        for (std::uint64_t b = bits & ~s.bits(); b;) {
            term *= m[static_cast<std::size_t>(std::countr_zero(b))].m0;
            b &= b - 1;
        }
        for (std::uint64_t b = s.bits(); b;) {
            term *= m[static_cast<std::size_t>(std::countr_zero(b))].m1;
            b &= b - 1;
        }
        acc += term;
    }
    return acc;
}

Rational multiplicative_ratio(std::span<const UnaryTransform> transforms, const SubsetMask& s) {
    if (static_cast<int>(transforms.size()) != s.n())
        throw std::invalid_argument("multiplicative_ratio: ground set mismatch");
    Rational acc = 1;
    for (int p : s.players()) {
        const UnaryMoments m = unary_moments(transforms[static_cast<std::size_t>(p - 1)]);
        if (m.m0 == 0)
            throw degenerate_error("multiplicative_ratio: I(phi," + std::to_string(p) +
                                   ") has zero mean; the ratio is undefined");
        acc *= m.m1 / m.m0;
    }
    return acc;
}

ProductFormApprox multiplicative_product_approx(std::span<const UnaryTransform> transforms) {
    ProductFormApprox out;
    out.mean = 1;
    out.ratios.reserve(transforms.size());
    for (std::size_t i = 0; i < transforms.size(); ++i) {
        const UnaryMoments m = unary_moments(transforms[i]);
        if (m.m0 == 0)
            throw degenerate_error("multiplicative_product_approx: factor " + std::to_string(i + 1) +
                                   " has zero mean; the product form is undefined");
        out.mean *= m.m0;
        out.ratios.push_back(m.m1 / m.m0);
    }
    return out;
}

Rational geometric_mean_interaction(std::span<const Rational> weights, const SubsetMask& s) {
    if (static_cast<int>(weights.size()) != s.n())
        throw std::invalid_argument("geometric_mean_interaction: ground set mismatch");
    Rational acc = 1;
    for (const Rational& c : weights) acc /= (c + 1);
    for (int p : s.players()) {
        const Rational& c = weights[static_cast<std::size_t>(p - 1)];
        acc *= 6 * c / (c + 2);
    }
    return acc;
}

Rational min_product_integral(int only_t, int only_u, int shared) {
    if (only_t < 0 || only_u < 0 || shared < 0) throw std::invalid_argument("min_product_integral: negative sizes");
    const auto term = [](int a, int b, int g) -> Rational {
        // 1/(a+1) * (1/(b+g+1) - 1/(a+b+g+2))
        return (Rational(1, b + g + 1) - Rational(1, a + b + g + 2)) / (a + 1);
    };
    if (only_t == 0 && shared == 0) return Rational(1, only_u + 1);
    if (only_u == 0 && shared == 0) return Rational(1, only_t + 1);
    return term(only_t, only_u, shared) + term(only_u, only_t, shared);
}

Rational choquet_mean(const SetFunction<Rational>& a) {
    Rational acc = 0;
    for (std::uint64_t bits = 0; bits < a.size(); ++bits) {
        const Rational& c = a.at_bits(bits);
        if (c != 0) acc += c * Rational(1, std::popcount(bits) + 1);
    }
    return acc;
}

Rational choquet_second_moment(const SetFunction<Rational>& a) {
    Rational acc = 0;
    for (std::uint64_t t = 0; t < a.size(); ++t) {
        const Rational& ct = a.at_bits(t);
        if (ct == 0) continue;
        for (std::uint64_t u = 0; u < a.size(); ++u) {
            const Rational& cu = a.at_bits(u);
            if (cu == 0) continue;
            const int only_t = std::popcount(t & ~u), only_u = std::popcount(u & ~t), shared = std::popcount(t & u);
            acc += ct * cu * min_product_integral(only_t, only_u, shared);
        }
    }
    return acc;
}

}  // namespace cubei
