#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cubei {

struct CheckResult {
    std::string name;
    bool pass = false;
    long cases = 0;        // how many instances were exercised
    std::string detail;    // failure description or summary statistic
};

enum class VerifyLevel { Quick, Full };

// The property suite behind `verify` and the acceptance criteria. Quick
// trims Monte Carlo budgets; Full runs every numbered criterion at its
// stated tolerance. Deterministic for a fixed seed.
std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed);

// Individual numbered acceptance checks (1-13); `heavy` selects the full
// sample budgets.
CheckResult check_arithmetic_mean_r(std::uint64_t seed);
CheckResult check_min_max_r(std::uint64_t seed);
CheckResult check_geometric_mean_r(std::uint64_t seed);
CheckResult check_banzhaf_equivalence(std::uint64_t seed, bool heavy);
CheckResult check_projection(std::uint64_t seed, bool heavy);
CheckResult check_least_squares_oracle(std::uint64_t seed, bool heavy);
CheckResult check_estimator_agreement(std::uint64_t seed, bool heavy);
CheckResult check_box_volume_normalization(std::uint64_t seed, bool heavy);
CheckResult check_min_centered_integral(std::uint64_t seed);
CheckResult check_duality(std::uint64_t seed, bool heavy);
CheckResult check_structural_zeros(std::uint64_t seed);
CheckResult check_r_squared_consistency(std::uint64_t seed);
CheckResult check_orthonormality(std::uint64_t seed);

}  // namespace cubei
