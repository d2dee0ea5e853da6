#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cubei::kernels {

// Batch kernels behind the sampling and quadrature engines. Points are laid
// out coordinate-major (SoA): coordinate i of point p lives at
// pts[i*stride + p]. Every kernel is defined by its scalar reference
// implementation; SIMD variants must produce bit-identical results, which
// pins the accumulation order (4 stripes by point index, combined as
// (s0+s2)+(s1+s3)) and rules out FMA contraction.

struct PolyTerm {
    std::uint64_t mask;
    double coeff;
};

struct Backend {
    const char* name;

    // out[p] = sum_j coeff_j * prod_{i in mask_j} x_i(p). Factors multiply
    // in ascending bit order.
    void (*poly_eval)(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                      std::size_t count, double* out);

    // out[p] = sum_j coeff_j * min_{i in mask_j} x_i(p); the empty mask
    // contributes the constant 1.
    void (*lovasz_eval)(const PolyTerm* terms, std::size_t nterms, const double* pts, std::size_t stride,
                        std::size_t count, double* out);

    // out[p] *= prod_{i in mask} (x_i(p) - 1/2).
    void (*centered_product)(std::uint64_t mask, const double* pts, std::size_t stride, std::size_t count, double* out);

    // acc[p] += sign * v[p].
    void (*accumulate)(double* acc, const double* v, double sign, std::size_t count);

    // Inverse CDF of Beta(2,2): solves 3t^2 - 2t^3 = u by 48 bisection
    // steps (interval width 2^-48, below the 1e-12 contract).
    void (*beta22_icdf)(const double* u, std::size_t count, double* out);

    // Deterministic striped reduction: returns sum v[p] and sum v[p]^2.
    void (*sum_sumsq)(const double* v, std::size_t count, double* sum, double* sumsq);
};

const Backend& scalar_backend();

// nullptr when the build or the host CPU lacks AVX2.
const Backend* avx2_backend();

// Best backend for this host, chosen once at startup.
const Backend& active_backend();

// All backends usable on this host (scalar first). Used by the
// equivalence tests.
std::vector<const Backend*> available_backends();

}  // namespace cubei::kernels
