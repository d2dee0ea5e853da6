#pragma once

#include <span>

#include "cubei/function_spec.hpp"
#include "cubei/poly.hpp"
#include "cubei/set_function.hpp"
#include "cubei/subset.hpp"
#include "cubei/unary.hpp"

namespace cubei {

// Exact interaction formulas for the structured function classes. Every
// routine here returns exact rationals and doubles as the test oracles for
// the numeric engine.

// B(p,q) = (p-1)!(q-1)!/(p+q-1)! for integers p,q >= 1.
Rational beta_fn(int p, int q);

// First moments of a unary transform:
//   m0 = integral of phi over [0,1]
//   m1 = 12 * integral of phi(t)(t - 1/2) dt
struct UnaryMoments {
    Rational m0;
    Rational m1;
};

UnaryMoments unary_moments(const UnaryTransform& u);

// integral of phi^2 over [0,1]; used by variance computations.
Rational unary_square_moment(const UnaryTransform& u);

// Interaction of f(x) = sum_T a(T) min_{i in T} x_i:
//   6^{|S|} sum_{T superset S} a(T) B(|S|+1, |T|+1),
// extended to S = empty (where it reduces to sum_T a(T)/(|T|+1)).
Rational choquet_interaction(const SetFunction<Rational>& a, const SubsetMask& s);

// Interaction of f(x) = sum_T a(T) prod_{i in T} phi_i(x_i):
//   sum_{T superset S} a(T) prod_{i in T\S} m0(phi_i) prod_{i in S} m1(phi_i).
Rational pseudo_multilinear_interaction(const MultilinearPoly<Rational>& g, std::span<const UnaryTransform> transforms,
                                        const SubsetMask& s);

// For multiplicative f: the ratio of interactions
//   I(f,S)/I(f,empty) = prod_{i in S} m1(phi_i)/m0(phi_i).
// Throws degenerate_error when some m0(phi_i) = 0 (the absolute index is
// still available through pseudo_multilinear_interaction).
Rational multiplicative_ratio(std::span<const UnaryTransform> transforms, const SubsetMask& s);

// Best n-th approximation of a multiplicative function in product form:
//   f_n(x) = mean * prod_i (1 + ratio_i (x_i - 1/2)).
struct ProductFormApprox {
    Rational mean;                 // I(f, empty)
    std::vector<Rational> ratios;  // m1(phi_i)/m0(phi_i)
};

ProductFormApprox multiplicative_product_approx(std::span<const UnaryTransform> transforms);

// Weighted geometric mean prod x_i^{c_i}:
//   I(f,S) = prod_{i in N} 1/(c_i+1) * prod_{i in S} 6 c_i/(c_i+2).
Rational geometric_mean_interaction(std::span<const Rational> weights, const SubsetMask& s);

// Exact mean and raw second moment of the Lovasz form, via the pairwise
// product moments of coordinate minima.
Rational choquet_mean(const SetFunction<Rational>& a);
Rational choquet_second_moment(const SetFunction<Rational>& a);

// integral over the cube of min_T(x) * min_T'(x), parameterized by
// |T\T'|, |T'\T| and |T cap T'|; empty sets contribute the constant 1.
Rational min_product_integral(int only_t, int only_u, int shared);

}  // namespace cubei
