#pragma once

#include "cubei/interaction.hpp"

namespace cubei {

// Monte Carlo representations of I(f,S).
enum class EstimatorKind {
    DirectInnerProduct,  // 12^{|S|} f(x) prod_{i in S}(x_i - 1/2), x uniform
    BetaDerivative,      // D^S f(x), x_i ~ Beta(2,2) on S, uniform elsewhere
    BoxVolume,           // 6^{|S|} Delta^S_{y-x} f(x), y_S uniform on [x_S, 1]
    DifferenceQuotient,  // Q^S_{y-x} f(x) under density 6^{|S|} prod (y_i - x_i)
};

struct Estimate {
    double value = 0.0;
    double stderr_est = 0.0;
    std::uint64_t samples = 0;
    // Set when the derivative had to be replaced by finite differences
    // (black-box BetaDerivative); the estimate is then biased O(delta^2).
    bool biased_fd = false;
};

// Unbiased (except as flagged) Monte Carlo estimate of I(f,S) with the
// chosen representation. Deterministic for a fixed (seed, backend):
// samples are generated in fixed blocks of 4096 with per-block seeds, so
// the result does not depend on the worker-lane count. Requires M >= 2.
//
// BetaDerivative needs exact S-partials (multilinear, geometric mean) or a
// smooth black box (central differences, step 1e-4, flagged biased);
// anything else raises unsupported_error.
Estimate estimate(const FunctionSpec& spec, const SubsetMask& s, EstimatorKind kind, std::uint64_t samples,
                  std::uint64_t seed);

const char* estimator_name(EstimatorKind kind);

}  // namespace cubei
