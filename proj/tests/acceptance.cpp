// Acceptance suite: one line per criterion, at the stated tolerances and
// runtime bounds. Usage: acceptance [--cli <path-to-cube-interact>]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cubei/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int number;
    const char* description;
    double time_limit_s;  // 0 = unbounded
    cubei::CheckResult (*run)(std::uint64_t);
};

constexpr std::uint64_t kSeed = 1;

cubei::CheckResult run_estimators(std::uint64_t seed) { return cubei::check_estimator_agreement(seed, true); }
cubei::CheckResult run_banzhaf(std::uint64_t seed) { return cubei::check_banzhaf_equivalence(seed, true); }
cubei::CheckResult run_projection(std::uint64_t seed) { return cubei::check_projection(seed, true); }
cubei::CheckResult run_ls(std::uint64_t seed) { return cubei::check_least_squares_oracle(seed, true); }
cubei::CheckResult run_mu(std::uint64_t seed) { return cubei::check_box_volume_normalization(seed, true); }
cubei::CheckResult run_duality(std::uint64_t seed) { return cubei::check_duality(seed, true); }

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

    const std::vector<Criterion> criteria = {
        {1, "arithmetic mean: r(f,{i}) = 1/sqrt(n), n = 2..10, 1e-12", 1.0, cubei::check_arithmetic_mean_r},
        {2, "min/max: r and sigma closed forms, n = 2..6, 1e-10", 5.0, cubei::check_min_max_r},
        {3, "symmetric geometric mean: r closed form + importance ordering", 0.0, cubei::check_geometric_mean_r},
        {4, "Banzhaf equivalence on 200 random polynomials, n <= 8, exact", 30.0, run_banzhaf},
        {5, "projection preserves I(f,S) for |S| <= k, 50 specs, n <= 5", 0.0, run_projection},
        {6, "best-k approximations match dense normal equations, n <= 6", 0.0, run_ls},
        {7, "estimator agreement within 4 stderr, >= 9/10 seeds, M = 1e5", 60.0, run_estimators},
        {8, "mu(S) = 6^-|S| Monte Carlo check, |S| = 1..3", 0.0, run_mu},
        {9, "centered min integrals equal 2^-|S| B(|S|+1,|T|+1), 1e-10", 0.0, cubei::check_min_centered_integral},
        {10, "duality laws exact on 100 random multilinear/Choquet specs", 0.0, run_duality},
        {11, "structural zeros: ineffective, dummy partition, k-additive", 0.0, cubei::check_structural_zeros},
        {12, "R^2 consistency: two routes to 1e-10; R2_1(x1 x2) = 6/7", 0.0, cubei::check_r_squared_consistency},
        {13, "w-basis orthonormality to 1e-12, all pairs, n <= 4", 0.0, cubei::check_orthonormality},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = Clock::now();
        cubei::CheckResult result;
        try {
            result = c.run(kSeed);
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        bool pass = result.pass;
        std::string note = result.detail;
        if (pass && c.time_limit_s > 0 && elapsed > c.time_limit_s) {
            pass = false;
            note = "exceeded " + std::to_string(c.time_limit_s) + "s budget";
        }
        std::printf("%s criterion-%02d (%6.2fs, %ld cases): %s%s%s\n", pass ? "PASS" : "FAIL", c.number, elapsed,
                    result.cases, c.description, note.empty() ? "" : " -- ", note.c_str());
        if (!pass) ++failures;
    }

    // Criterion 14: the CLI's full verification level exits 0 in < 5 min.
    if (!cli_path.empty()) {
        const auto start = Clock::now();
        const std::string cmd = cli_path + " verify --level full --seed " + std::to_string(kSeed) + " > /dev/null";
        const int rc = std::system(cmd.c_str());
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        const bool pass = rc == 0 && elapsed < 300.0;
        std::printf("%s criterion-14 (%6.2fs): verify --level full exits 0 in < 5 min%s\n", pass ? "PASS" : "FAIL",
                    elapsed, rc != 0 ? " -- nonzero exit" : "");
        if (!pass) ++failures;
    } else {
        std::printf("SKIP criterion-14: pass --cli <path> to exercise the command-line runner\n");
    }

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
