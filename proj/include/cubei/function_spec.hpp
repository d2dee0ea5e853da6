#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "cubei/poly.hpp"
#include "cubei/set_function.hpp"
#include "cubei/unary.hpp"

namespace cubei {

// f(x) = sum_S a(S) prod_{i in S} x_i.
struct MultilinearSpec {
    MultilinearPoly<Rational> poly;
};

// f(x) = sum_T a(T) min_{i in T} x_i (Lovasz form). The coefficients are the
// Moebius transform of the vertex game; no monotonicity constraints are
// imposed. The empty-set term contributes the constant a(empty).
struct ChoquetSpec {
    SetFunction<Rational> coeffs;
};

// f(x) = g(phi_1(x_1), ..., phi_n(x_n)) with g multilinear.
struct PseudoMultilinearSpec {
    MultilinearPoly<Rational> poly;
    std::vector<UnaryTransform> transforms;  // one per variable
};

// f(x) = prod_i phi_i(x_i).
struct MultiplicativeSpec {
    std::vector<UnaryTransform> transforms;
};

// f(x) = prod_i x_i^{c_i}, c_i >= 0 rational, sum c_i = 1 exactly.
struct GeometricMeanSpec {
    std::vector<Rational> weights;
};

// Pointwise evaluator on [0,1]^n. `depends` over-approximates the set of
// effective variables (bit i-1 for x_i); `smooth` gates derivative-based
// estimators. Evaluators must be reentrant: the library may call them
// concurrently.
struct BlackBoxSpec {
    std::function<double(std::span<const double>)> evaluate;
    std::uint64_t depends = ~0ull;
    bool smooth = false;
};

// Tagged union of the supported function classes on [0,1]^n. Immutable
// after construction; safe to share across threads.
class FunctionSpec {
public:
    using Payload =
        std::variant<MultilinearSpec, ChoquetSpec, PseudoMultilinearSpec, MultiplicativeSpec, GeometricMeanSpec, BlackBoxSpec>;

    FunctionSpec(int n, Payload payload);

    static FunctionSpec multilinear(MultilinearPoly<Rational> poly);
    static FunctionSpec choquet(SetFunction<Rational> coeffs);
    static FunctionSpec pseudo_multilinear(MultilinearPoly<Rational> poly, std::vector<UnaryTransform> transforms);
    static FunctionSpec multiplicative(int n, std::vector<UnaryTransform> transforms);
    static FunctionSpec geometric_mean(std::vector<Rational> weights);
    static FunctionSpec black_box(int n, std::function<double(std::span<const double>)> f, bool smooth,
                                  std::uint64_t depends = ~0ull);
    static FunctionSpec constant(int n, Rational c);

    int n() const { return n_; }
    const Payload& payload() const { return *payload_; }

    template <class V>
    const V* get_if() const {
        return std::get_if<V>(payload_.get());
    }

    // Bitmask over-approximating the effective variables. Exact for the
    // structured classes up to coefficient cancellation.
    std::uint64_t depends() const { return depends_; }

    // Whether derivative-based estimators may be applied.
    bool smooth() const { return smooth_; }

    const char* kind_name() const;

private:
    int n_;
    std::shared_ptr<const Payload> payload_;  // immutable, cheap to copy
    std::uint64_t depends_ = 0;
    bool smooth_ = false;
};

// f(x); NaN coordinates are rejected. Coordinates are trusted to lie in
// [0,1]^n (the domain contract of every spec).
double eval(const FunctionSpec& spec, std::span<const double> x);

// Exact evaluation for specs whose value at rational points is rational
// (multilinear, Choquet, and pseudo-multilinear/multiplicative forms with
// integer power exponents). Throws unsupported_error otherwise.
Rational eval_exact(const FunctionSpec& spec, std::span<const Rational> x);

// pi(f)(x_1,...,x_n) = f(x_{pi(1)},...,x_{pi(n)}); pushed into coefficients
// and transform slots for structured specs.
FunctionSpec permute(const FunctionSpec& spec, const Permutation& perm);

// Raised when an operation is not defined for the given spec class.
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a statistic is undefined (sigma = 0, zero mean ratio).
struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cubei
