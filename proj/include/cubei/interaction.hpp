#pragma once

#include <map>
#include <optional>
#include <utility>

#include "cubei/closed_forms.hpp"
#include "cubei/function_spec.hpp"

namespace cubei {

// How a reported value was produced.
enum class ValueMethod { ClosedForm, Quadrature, MonteCarlo };

struct IndexValue {
    double value = 0.0;
    std::optional<Rational> exact;     // set on closed-form paths
    ValueMethod method = ValueMethod::ClosedForm;
    std::optional<double> stderr_est;  // set iff method == MonteCarlo

    static IndexValue closed(Rational r) {
        return {to_double(r), std::move(r), ValueMethod::ClosedForm, std::nullopt};
    }
    static IndexValue quadrature(double v) { return {v, std::nullopt, ValueMethod::Quadrature, std::nullopt}; }
    static IndexValue monte_carlo(double v, double se) { return {v, std::nullopt, ValueMethod::MonteCarlo, se}; }
};

struct IntegratorConfig {
    enum class Mode { Auto, ClosedForm, GaussTensor, MonteCarlo };
    Mode mode = Mode::Auto;
    int gauss_order = 8;          // per active axis
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    double tolerance = 1e-10;     // advisory, echoed into reports
};

// Batch of interaction values keyed by subset mask.
struct InteractionTable {
    int n = 0;
    std::map<std::uint64_t, IndexValue> entries;
};

// I(f,S) = 12^{|S|} integral of f(x) prod_{i in S}(x_i - 1/2) dx.
// Structured specs resolve through the exact closed forms; black boxes use
// tensor Gauss quadrature or Monte Carlo per the config.
IndexValue interaction(const FunctionSpec& spec, const SubsetMask& s, const IntegratorConfig& cfg = {});

// Exact value when the spec class has a closed form (everything except
// black boxes); nullopt otherwise.
std::optional<Rational> interaction_exact(const FunctionSpec& spec, const SubsetMask& s);

// One entry per |S| <= k.
InteractionTable interaction_table(const FunctionSpec& spec, int k, const IntegratorConfig& cfg = {});

// Coefficients of the best k-th approximation in both bases: `centered`
// carries I(f,T) for |T| <= k (the w-basis view), `poly` the expanded
// monomial coefficients a_k(S) = sum_{T sup S, |T| <= k} (-1/2)^{|T|-|S|} I(f,T).
struct BestKApprox {
    MultilinearPoly<double> poly;
    std::optional<MultilinearPoly<Rational>> exact;
    InteractionTable centered;
};

BestKApprox best_k_approx(const FunctionSpec& spec, int k, const IntegratorConfig& cfg = {});

// I of a multilinear polynomial from its monomial coefficients:
// sum_{T superset S} (1/2)^{|T|-|S|} a(T).
template <class T>
T index_from_poly_coeffs(const MultilinearPoly<T>& poly, const SubsetMask& s) {
    if (s.n() != poly.n()) throw std::invalid_argument("index_from_poly_coeffs: ground set mismatch");
    T acc{};
    for (const auto& [bits, c] : poly.terms()) {
        if ((bits & s.bits()) != s.bits()) continue;
        T term = c;
        const int extra = std::popcount(bits) - s.size();
        for (int e = 0; e < extra; ++e) term /= T(2);
        acc += term;
    }
    return acc;
}

// (D^S f)(1/2,...,1/2), computed by actually differentiating the polynomial
// and evaluating at the center; agrees with index_from_poly_coeffs.
template <class T>
T taylor_at_center(const MultilinearPoly<T>& poly, const SubsetMask& s) {
    const MultilinearPoly<T> d = poly.derivative(s);
    const std::vector<T> center(static_cast<std::size_t>(poly.n()), T(1) / T(2));
    return d.template eval_with<T>(center);
}

// Orthonormal basis element w_S(x) = 12^{|S|/2} prod_{i in S}(x_i - 1/2).
double w_basis_eval(const SubsetMask& s, std::span<const double> x);

// S-shift (E^S_h f)(x) = f(x + sum_{j in S} h_j e_j). The shifted point
// must stay inside the cube.
double shift(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h, std::span<const double> x);

// S-difference Delta^S_h f(x) = sum_{T subset S} (-1)^{|S|-|T|} E^T_h f(x).
double s_difference(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h,
                    std::span<const double> x);

// S-difference quotient Q^S_h f(x) = Delta^S_h f(x) / prod_{i in S} h_i.
double difference_quotient(const FunctionSpec& spec, const SubsetMask& s, std::span<const double> h,
                           std::span<const double> x);

// f^d(x) = 1 - f(1 - x). Defined for classes closed under dualization
// (multilinear, Choquet, black box); wrap others via as_black_box first.
FunctionSpec dual(const FunctionSpec& spec);

// View any spec through its pointwise evaluator.
FunctionSpec as_black_box(const FunctionSpec& spec);

// Self-dual and anti-self-dual parts ((f + f^d)/2, (f - f^d)/2).
std::pair<MultilinearPoly<Rational>, MultilinearPoly<Rational>> self_dual_split(const MultilinearPoly<Rational>& poly);

}  // namespace cubei
