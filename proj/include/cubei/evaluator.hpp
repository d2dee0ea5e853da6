#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cubei/function_spec.hpp"
#include "cubei/kernels.hpp"

namespace cubei {

// Double-precision view of a FunctionSpec, flattened for the batch kernels.
// Built once per numeric task; evaluation is then allocation-light.
class LoweredSpec {
public:
    explicit LoweredSpec(const FunctionSpec& spec, const kernels::Backend& backend = kernels::active_backend());

    int n() const { return n_; }
    std::uint64_t depends() const { return depends_; }

    // Points coordinate-major: coordinate i of point p at pts[i*stride+p].
    void eval_batch(const double* pts, std::size_t stride, std::size_t count, double* out) const;

    double eval_one(std::span<const double> x) const;

    const kernels::Backend& backend() const { return *backend_; }

private:
    enum class Kind { Poly, Lovasz, Transformed, Callable };

    int n_;
    Kind kind_;
    std::uint64_t depends_ = 0;
    const kernels::Backend* backend_;
    std::vector<kernels::PolyTerm> terms_;
    std::vector<UnaryTransform> transforms_;  // Transformed only
    std::function<double(std::span<const double>)> callable_;
};

}  // namespace cubei
