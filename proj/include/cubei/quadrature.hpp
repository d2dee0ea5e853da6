#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cubei/evaluator.hpp"

namespace cubei {

// Gauss-Legendre rule mapped to [0,1]; exact for polynomials of degree
// <= 2*order - 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_rule(int order);

struct TensorIntegralSpec {
    std::uint64_t active = 0;    // axes integrated; the rest are pinned at 1/2
    std::uint64_t centered = 0;  // multiply the integrand by prod_{i}(x_i - 1/2)
    bool square = false;         // integrate f^2 instead of f
    int order = 8;
};

// Tensor-product Gauss-Legendre integral over the unit cube of
// f(x) * prod_{i in centered}(x_i - 1/2), restricted to the active axes.
// Deterministic accumulation in grid order. Throws unsupported_error when
// the grid would exceed 2^24 points.
double tensor_integral(const LoweredSpec& f, const TensorIntegralSpec& cfg);

// Same grid walk for a raw callable (used for cross-checks on functions
// that never pass through a FunctionSpec).
double tensor_integral_fn(const std::function<double(std::span<const double>)>& f, int n,
                          const TensorIntegralSpec& cfg);

// Integral over [0,1]^n of a function whose restriction to every
// coordinate-ordering simplex is smooth (min-combinations): sums
// Duffy-transformed tensor rules over all n! orderings. Exact to rounding
// for piecewise-polynomial integrands of moderate degree.
double simplex_integral(const std::function<double(std::span<const double>)>& f, int n, int order);

}  // namespace cubei
