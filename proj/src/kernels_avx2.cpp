// AVX2 kernel variants. Four points per vector; loop structure and
// arithmetic mirror the scalar reference exactly (mul/add, no FMA), so
// results are bit-identical. Tails re-run the scalar code on the remaining
// points.

#ifdef CUBEI_HAVE_AVX2

#include <immintrin.h>

#include <bit>

#include "cubei/kernels.hpp"

namespace cubei::kernels {
namespace {

void poly_eval_avx2(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                    std::size_t count, double* out) {
    const std::size_t main = count & ~std::size_t{3};
    for (std::size_t p = 0; p < main; p += 4) _mm256_storeu_pd(out + p, _mm256_setzero_pd());
    for (std::size_t p = main; p < count; ++p) out[p] = 0.0;
    for (std::size_t j = 0; j < nterms; ++j) {
        const std::uint64_t mask = terms[j].mask;
        const double coeff = terms[j].coeff;
        const __m256d vcoeff = _mm256_set1_pd(coeff);
        for (std::size_t p = 0; p < main; p += 4) {
            __m256d term = vcoeff;
            for (std::uint64_t b = mask; b;) {
                const std::size_t i = static_cast<std::size_t>(std::countr_zero(b));
                term = _mm256_mul_pd(term, _mm256_loadu_pd(pts + i * stride + p));
                b &= b - 1;
            }
            _mm256_storeu_pd(out + p, _mm256_add_pd(_mm256_loadu_pd(out + p), term));
        }
        for (std::size_t p = main; p < count; ++p) {
            double term = coeff;
            for (std::uint64_t b = mask; b;) {
                term = term * pts[static_cast<std::size_t>(std::countr_zero(b)) * stride + p];
                b &= b - 1;
            }
            out[p] = out[p] + term;
        }
    }
}

void lovasz_eval_avx2(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                      std::size_t count, double* out) {
    const std::size_t main = count & ~std::size_t{3};
    for (std::size_t p = 0; p < main; p += 4) _mm256_storeu_pd(out + p, _mm256_setzero_pd());
    for (std::size_t p = main; p < count; ++p) out[p] = 0.0;
    const __m256d ones = _mm256_set1_pd(1.0);
    for (std::size_t j = 0; j < nterms; ++j) {
        const std::uint64_t mask = terms[j].mask;
        const double coeff = terms[j].coeff;
        const __m256d vcoeff = _mm256_set1_pd(coeff);
        for (std::size_t p = 0; p < main; p += 4) {
            __m256d m = ones;
            if (mask) {
                m = _mm256_loadu_pd(pts + static_cast<std::size_t>(std::countr_zero(mask)) * stride + p);
                for (std::uint64_t b = mask & (mask - 1); b;) {
                    const __m256d v = _mm256_loadu_pd(pts + static_cast<std::size_t>(std::countr_zero(b)) * stride + p);
                    m = _mm256_min_pd(v, m);
                    b &= b - 1;
                }
            }
            _mm256_storeu_pd(out + p, _mm256_add_pd(_mm256_loadu_pd(out + p), _mm256_mul_pd(vcoeff, m)));
        }
        for (std::size_t p = main; p < count; ++p) {
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

void centered_product_avx2(std::uint64_t mask, const double* pts, std::size_t stride, std::size_t count, double* out) {
    const std::size_t main = count & ~std::size_t{3};
    const __m256d half = _mm256_set1_pd(0.5);
    for (std::uint64_t b = mask; b;) {
        const std::size_t i = static_cast<std::size_t>(std::countr_zero(b));
        for (std::size_t p = 0; p < main; p += 4) {
            const __m256d x = _mm256_loadu_pd(pts + i * stride + p);
            _mm256_storeu_pd(out + p, _mm256_mul_pd(_mm256_loadu_pd(out + p), _mm256_sub_pd(x, half)));
        }
        for (std::size_t p = main; p < count; ++p) out[p] = out[p] * (pts[i * stride + p] - 0.5);
        b &= b - 1;
    }
}

void accumulate_avx2(double* acc, const double* v, double sign, std::size_t count) {
    const std::size_t main = count & ~std::size_t{3};
    const __m256d vsign = _mm256_set1_pd(sign);
    for (std::size_t p = 0; p < main; p += 4) {
        const __m256d lhs = _mm256_loadu_pd(acc + p);
        const __m256d rhs = _mm256_mul_pd(vsign, _mm256_loadu_pd(v + p));
        _mm256_storeu_pd(acc + p, _mm256_add_pd(lhs, rhs));
    }
    for (std::size_t p = main; p < count; ++p) acc[p] = acc[p] + sign * v[p];
}

void beta22_icdf_avx2(const double* u, std::size_t count, double* out) {
    const std::size_t main = count & ~std::size_t{3};
    const __m256d half = _mm256_set1_pd(0.5), two = _mm256_set1_pd(2.0), three = _mm256_set1_pd(3.0);
    for (std::size_t p = 0; p < main; p += 4) {
        const __m256d target = _mm256_loadu_pd(u + p);
        __m256d lo = _mm256_setzero_pd(), hi = _mm256_set1_pd(1.0);
        for (int it = 0; it < 48; ++it) {
            const __m256d mid = _mm256_mul_pd(_mm256_add_pd(lo, hi), half);
            const __m256d f =
                _mm256_mul_pd(_mm256_mul_pd(mid, mid), _mm256_sub_pd(three, _mm256_mul_pd(two, mid)));
            const __m256d below = _mm256_cmp_pd(f, target, _CMP_LT_OQ);
            lo = _mm256_blendv_pd(lo, mid, below);
            hi = _mm256_blendv_pd(mid, hi, below);
        }
        _mm256_storeu_pd(out + p, _mm256_mul_pd(_mm256_add_pd(lo, hi), half));
    }
    for (std::size_t p = main; p < count; ++p) {
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

void sum_sumsq_avx2(const double* v, std::size_t count, double* sum, double* sumsq) {
    const std::size_t main = count & ~std::size_t{3};
    __m256d vs = _mm256_setzero_pd(), vq = _mm256_setzero_pd();
    for (std::size_t p = 0; p < main; p += 4) {
        const __m256d x = _mm256_loadu_pd(v + p);
        vs = _mm256_add_pd(vs, x);
        vq = _mm256_add_pd(vq, _mm256_mul_pd(x, x));
    }
    alignas(32) double s[4], q[4];
    _mm256_store_pd(s, vs);
    _mm256_store_pd(q, vq);
    for (std::size_t p = main; p < count; ++p) {
        const std::size_t lane = p & 3;
        s[lane] = s[lane] + v[p];
        q[lane] = q[lane] + v[p] * v[p];
    }
    *sum = (s[0] + s[2]) + (s[1] + s[3]);
    *sumsq = (q[0] + q[2]) + (q[1] + q[3]);
}

}  // namespace

namespace detail {

const Backend* avx2_backend_impl() {
    static const Backend backend{
        "avx2",          poly_eval_avx2,  lovasz_eval_avx2, centered_product_avx2,
        accumulate_avx2, beta22_icdf_avx2, sum_sumsq_avx2,
    };
    return &backend;
}

}  // namespace detail
}  // namespace cubei::kernels

#endif  // CUBEI_HAVE_AVX2
