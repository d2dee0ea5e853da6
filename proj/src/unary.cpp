#include "cubei/unary.hpp"

#include <algorithm>

namespace cubei {

double unary_eval(const UnaryTransform& u, double t) {
    return std::visit(
        [&](const auto& v) -> double {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Identity>) {
                return t;
            } else if constexpr (std::is_same_v<V, Power>) {
                const double c = to_double(v.exponent);
                if (c == 0.0) return 1.0;
                return std::pow(t, c);
            } else if constexpr (std::is_same_v<V, Affine>) {
                return to_double(v.slope) * t + to_double(v.intercept);
            } else {
                const auto& k = v.knots;
                // Clamp to the covered interval, then linear interpolation.
                if (t <= to_double(k.front().first)) return to_double(k.front().second);
                for (std::size_t i = 1; i < k.size(); ++i) {
                    const double t1 = to_double(k[i].first);
                    if (t <= t1) {
                        const double t0 = to_double(k[i - 1].first);
                        const double y0 = to_double(k[i - 1].second), y1 = to_double(k[i].second);
                        return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
                    }
                }
                return to_double(k.back().second);
            }
        },
        u);
}

bool unary_is_constant(const UnaryTransform& u) {
    return std::visit(
        [](const auto& v) -> bool {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Identity>) {
                return false;
            } else if constexpr (std::is_same_v<V, Power>) {
                return v.exponent == 0;
            } else if constexpr (std::is_same_v<V, Affine>) {
                return v.slope == 0;
            } else {
                const auto& y0 = v.knots.front().second;
                return std::all_of(v.knots.begin(), v.knots.end(), [&](const auto& kv) { return kv.second == y0; });
            }
        },
        u);
}

bool unary_is_smooth(const UnaryTransform& u) {
    return std::visit(
        [](const auto& v) -> bool {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Tabulated>)
                return v.knots.size() == 2;  // a single segment is affine
            else
                return true;
        },
        u);
}

}  // namespace cubei
