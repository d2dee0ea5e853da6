#include "cubei/evaluator.hpp"

namespace cubei {

LoweredSpec::LoweredSpec(const FunctionSpec& spec, const kernels::Backend& backend)
    : n_(spec.n()), kind_(Kind::Callable), depends_(spec.depends()), backend_(&backend) {
    std::visit(
        [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, MultilinearSpec>) {
                kind_ = Kind::Poly;
                for (const auto& [bits, c] : v.poly.terms()) terms_.push_back({bits, to_double(c)});
            } else if constexpr (std::is_same_v<V, ChoquetSpec>) {
                kind_ = Kind::Lovasz;
                for (std::uint64_t bits = 0; bits < v.coeffs.size(); ++bits)
                    if (v.coeffs.at_bits(bits) != 0) terms_.push_back({bits, to_double(v.coeffs.at_bits(bits))});
            } else if constexpr (std::is_same_v<V, PseudoMultilinearSpec>) {
                kind_ = Kind::Transformed;
                for (const auto& [bits, c] : v.poly.terms()) terms_.push_back({bits, to_double(c)});
                transforms_ = v.transforms;
            } else if constexpr (std::is_same_v<V, MultiplicativeSpec>) {
                kind_ = Kind::Transformed;
                terms_.push_back({SubsetMask::full(n_).bits(), 1.0});
                transforms_ = v.transforms;
            } else if constexpr (std::is_same_v<V, GeometricMeanSpec>) {
                kind_ = Kind::Transformed;
                terms_.push_back({SubsetMask::full(n_).bits(), 1.0});
                transforms_.reserve(v.weights.size());
                for (const Rational& c : v.weights) transforms_.push_back(Power{c});
            } else {
                kind_ = Kind::Callable;
                callable_ = v.evaluate;
            }
        },
        spec.payload());
}

void LoweredSpec::eval_batch(const double* pts, std::size_t stride, std::size_t count, double* out) const {
    switch (kind_) {
        case Kind::Poly:
            backend_->poly_eval(terms_.data(), terms_.size(), pts, stride, count, out);
            return;
        case Kind::Lovasz:
            backend_->lovasz_eval(terms_.data(), terms_.size(), pts, stride, count, out);
            return;
        case Kind::Transformed: {
            std::uint64_t used = 0;
            for (const auto& t : terms_) used |= t.mask;
            std::vector<double> y(static_cast<std::size_t>(n_) * count);
            for (int i = 0; i < n_; ++i) {
                const double* src = pts + static_cast<std::size_t>(i) * stride;
                double* dst = y.data() + static_cast<std::size_t>(i) * count;
                if (used & (1ull << i)) {
                    const UnaryTransform& u = transforms_[static_cast<std::size_t>(i)];
                    for (std::size_t p = 0; p < count; ++p) dst[p] = unary_eval(u, src[p]);
                }
            }
            backend_->poly_eval(terms_.data(), terms_.size(), y.data(), count, count, out);
            return;
        }
        case Kind::Callable: {
            std::vector<double> x(static_cast<std::size_t>(n_));
            for (std::size_t p = 0; p < count; ++p) {
                for (int i = 0; i < n_; ++i) x[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i) * stride + p];
                out[p] = callable_(x);
            }
            return;
        }
    }
}

double LoweredSpec::eval_one(std::span<const double> x) const {
    double out = 0.0;
    eval_batch(x.data(), 1, 1, &out);
    return out;
}

}  // namespace cubei
