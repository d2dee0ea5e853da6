#pragma once

#include <map>
#include <vector>

#include "cubei/interaction.hpp"

namespace cubei {

// Expectation and standard deviation of f viewed as a random variable on
// the cube. Exact where the spec class admits closed moments.
struct Moments {
    double mean = 0.0;
    double sigma = 0.0;
    std::optional<Rational> mean_exact;
    std::optional<Rational> variance_exact;
    ValueMethod method = ValueMethod::ClosedForm;
};

Moments moments(const FunctionSpec& spec, const IntegratorConfig& cfg = {});

// r(f,S) = I(f,S) / (12^{|S|/2} sigma(f)); the correlation of f with w_S.
// Requires sigma > 0 and S nonempty.
double normalized_index(const FunctionSpec& spec, const SubsetMask& s, const IntegratorConfig& cfg = {});

// R^2_k = sum_{1 <= |T| <= k} r(f,T)^2 = sigma^2(f_k)/sigma^2(f); R^2_0 = 0.
double r_squared(const FunctionSpec& spec, int k, const IntegratorConfig& cfg = {});

struct FitReport {
    double mean = 0.0;
    double sigma = 0.0;
    std::map<std::uint64_t, double> r_table;  // 1 <= |S| <= k
    std::vector<double> r2;                   // R^2_1 ... R^2_k
    // Independent cross-check of the last R^2 entry via the variance of
    // the expanded best-k polynomial.
    double r2_check = 0.0;
};

FitReport fit_report(const FunctionSpec& spec, int k, const IntegratorConfig& cfg = {});

}  // namespace cubei
