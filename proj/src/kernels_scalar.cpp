// Scalar reference kernels. These define the semantics; the SIMD variants
// are tested for bit-identical output against them.

#include <bit>

#include "cubei/kernels.hpp"

namespace cubei::kernels {
namespace {

void poly_eval_scalar(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                      std::size_t count, double* out) {
    for (std::size_t p = 0; p < count; ++p) out[p] = 0.0;
    for (std::size_t j = 0; j < nterms; ++j) {
        const std::uint64_t mask = terms[j].mask;
        const double coeff = terms[j].coeff;
        for (std::size_t p = 0; p < count; ++p) {
            double term = coeff;
            for (std::uint64_t b = mask; b;) {
                const std::size_t i = static_cast<std::size_t>(std::countr_zero(b));
                term = term * pts[i * stride + p];
                b &= b - 1;
            }
            out[p] = out[p] + term;
        }
    }
}

void lovasz_eval_scalar(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                        std::size_t count, double* out) {
    for (std::size_t p = 0; p < count; ++p) out[p] = 0.0;
    for (std::size_t j = 0; j < nterms; ++j) {
        const std::uint64_t mask = terms[j].mask;
        const double coeff = terms[j].coeff;
        for (std::size_t p = 0; p < count; ++p) {
            double m = 1.0;
            if (mask) {
                m = pts[static_cast<std::size_t>(std::countr_zero(mask)) * stride + p];
                for (std::uint64_t b = mask & (mask - 1); b;) {
                    const double v = pts[static_cast<std::size_t>(std::countr_zero(b)) * stride + p];
                    m = (v < m) ? v : m;
                    b &= b - 1;
                }
            }
            out[p] = out[p] + coeff * m;
        }
    }
}

void centered_product_scalar(std::uint64_t mask, const double* pts, std::size_t stride, std::size_t count,
                             double* out) {
    for (std::uint64_t b = mask; b;) {
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(b));
        for (std::size_t p = 0; p < count; ++p) out[p] = out[p] * (pts[i * stride + p] - 0.5);
        b &= b - 1;
    }
}

void accumulate_scalar(double* acc, const double* v, double sign, std::size_t count) {
    for (std::size_t p = 0; p < count; ++p) acc[p] = acc[p] + sign * v[p];
}

void beta22_icdf_scalar(const double* u, std::size_t count, double* out) {
    for (std::size_t p = 0; p < count; ++p) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = (lo + hi) * 0.5;
            const double f = mid * mid * (3.0 - 2.0 * mid);
            const bool below = f < u[p];
            lo = below ? mid : lo;
            hi = below ? hi : mid;
        }
        out[p] = (lo + hi) * 0.5;
    }
}

void sum_sumsq_scalar(const double* v, std::size_t count, double* sum, double* sumsq) {
    double s[4] = {0, 0, 0, 0}, q[4] = {0, 0, 0, 0};
    for (std::size_t p = 0; p < count; ++p) {
        const std::size_t lane = p & 3;
        s[lane] = s[lane] + v[p];
        q[lane] = q[lane] + v[p] * v[p];
    }
    *sum = (s[0] + s[2]) + (s[1] + s[3]);
    *sumsq = (q[0] + q[2]) + (q[1] + q[3]);
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend{
        "scalar",          poly_eval_scalar,  lovasz_eval_scalar,
        centered_product_scalar, accumulate_scalar, beta22_icdf_scalar,
        sum_sumsq_scalar,
    };
    return backend;
}

}  // namespace cubei::kernels
