#include "cubei/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <optional>

#include "cubei/evaluator.hpp"
#include "cubei/parallel.hpp"
#include "cubei/rng.hpp"

namespace cubei {

const char* estimator_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::DirectInnerProduct: return "direct";
        case EstimatorKind::BetaDerivative: return "beta";
        case EstimatorKind::BoxVolume: return "box";
        case EstimatorKind::DifferenceQuotient: return "quotient";
    }
    return "?";
}

namespace {

constexpr std::size_t kBlockSamples = 4096;
constexpr double kFdStep = 1e-4;  // central-difference step for black boxes

inline double uniform_open(Xoshiro256pp& rng) {
    // (0,1): 52 random bits centered in their bucket.
    return (static_cast<double>(rng.next() >> 12) + 0.5) * 0x1.0p-52;
}

struct BlockStats {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Fills `vals` with Delta^S_{y-x} f at each point: alternating sum of f
// over the 2^|S| corners mixing base rows (x) and shifted rows (y).
void s_difference_batch(const LoweredSpec& f, const SubsetMask& s, const std::vector<double>& base,
                        const std::vector<double>& yrows, std::size_t count, std::vector<double>& scratch,
                        std::vector<double>& corner, std::vector<double>& vals) {
    const kernels::Backend& backend = f.backend();
    const auto players = s.players();
    std::fill(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(count), 0.0);
    for_each_submask(s.bits(), [&](std::uint64_t t) {
        scratch.assign(base.begin(), base.end());
        for (std::size_t pi = 0; pi < players.size(); ++pi) {
            const int coord = players[pi] - 1;
            if (t & (1ull << coord))
                std::memcpy(scratch.data() + static_cast<std::size_t>(coord) * kBlockSamples,
                            yrows.data() + pi * kBlockSamples, count * sizeof(double));
        }
        f.eval_batch(scratch.data(), kBlockSamples, count, corner.data());
        const double sign = ((s.size() - std::popcount(t)) & 1) ? -1.0 : 1.0;
        backend.accumulate(vals.data(), corner.data(), sign, count);
    });
}

}  // namespace

Estimate estimate(const FunctionSpec& spec, const SubsetMask& s, EstimatorKind kind, std::uint64_t samples,
                  std::uint64_t seed) {
    if (s.n() != spec.n()) throw std::invalid_argument("estimate: ground set mismatch");
    if (samples < 2) throw std::invalid_argument("estimate: at least 2 samples required for a stderr");
    const int n = spec.n();

    // Subsets touching an ineffective variable have a zero index; every
    // representation integrates a quantity that vanishes identically.
    if ((s.bits() & ~spec.depends()) != 0) return {0.0, 0.0, samples, false};

    // Difference-based representations evaluate 2^{|S|} corners per sample.
    if ((kind == EstimatorKind::BoxVolume || kind == EstimatorKind::DifferenceQuotient) && s.size() > 12)
        throw unsupported_error("estimator needs 2^|S| evaluations per sample; |S| > 12 is impractical, use direct");

    const kernels::Backend& backend = kernels::active_backend();
    const LoweredSpec lowered(spec, backend);

    // BetaDerivative needs an exact S-partial or a smooth black box.
    const MultilinearSpec* as_poly = spec.get_if<MultilinearSpec>();
    const GeometricMeanSpec* as_geo = spec.get_if<GeometricMeanSpec>();
    const BlackBoxSpec* as_bb = spec.get_if<BlackBoxSpec>();
    std::optional<LoweredSpec> dpoly;
    bool biased_fd = false;
    if (kind == EstimatorKind::BetaDerivative && !s.is_empty()) {
        if (as_poly) {
            dpoly.emplace(FunctionSpec::multilinear(as_poly->poly.derivative(s)), backend);
        } else if (as_geo) {
            // D^S f = f * prod_{i in S} c_i / x_i, handled inline below.
        } else if (as_bb && spec.smooth()) {
            if (s.size() > 12)
                throw unsupported_error("central differences need 2^|S| evaluations per sample; |S| > 12 is impractical");
            biased_fd = true;  // central differences, biased O(delta^2)
        } else {
            throw unsupported_error(std::string("BetaDerivative needs exact S-partials or a smooth black box; ") +
                                    spec.kind_name() + " provides neither");
        }
    }

    double scale = 1.0;
    switch (kind) {
        case EstimatorKind::DirectInnerProduct:
            for (int i = 0; i < s.size(); ++i) scale *= 12.0;
            break;
        case EstimatorKind::BoxVolume:
            for (int i = 0; i < s.size(); ++i) scale *= 6.0;
            break;
        case EstimatorKind::BetaDerivative:
            if (biased_fd)
                for (int i = 0; i < s.size(); ++i) scale /= 2.0 * kFdStep;
            break;
        case EstimatorKind::DifferenceQuotient:
            break;
    }

    const std::size_t nblocks = static_cast<std::size_t>((samples + kBlockSamples - 1) / kBlockSamples);
    std::vector<BlockStats> stats(nblocks);
    const auto splayers = s.players();

    parallel_for(nblocks, [&](std::size_t b) {
        const std::size_t count =
            static_cast<std::size_t>(std::min<std::uint64_t>(kBlockSamples, samples - b * kBlockSamples));
        Xoshiro256pp rng = block_rng(seed, b, static_cast<std::uint64_t>(kind));
        std::vector<double> pts(static_cast<std::size_t>(n) * kBlockSamples);
        std::vector<double> vals(kBlockSamples, 0.0);

        switch (kind) {
            case EstimatorKind::DirectInnerProduct: {
                for (std::size_t p = 0; p < count; ++p)
                    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) * kBlockSamples + p] = rng.uniform();
                lowered.eval_batch(pts.data(), kBlockSamples, count, vals.data());
                backend.centered_product(s.bits(), pts.data(), kBlockSamples, count, vals.data());
                break;
            }
            case EstimatorKind::BetaDerivative: {
                for (std::size_t p = 0; p < count; ++p)
                    for (int i = 0; i < n; ++i)
                        pts[static_cast<std::size_t>(i) * kBlockSamples + p] =
                            s.contains(i + 1) ? uniform_open(rng) : rng.uniform();
                for (int pl : splayers) {
                    double* row = pts.data() + static_cast<std::size_t>(pl - 1) * kBlockSamples;
                    backend.beta22_icdf(row, count, row);
                }
                if (dpoly) {
                    dpoly->eval_batch(pts.data(), kBlockSamples, count, vals.data());
                } else if (as_geo) {
                    lowered.eval_batch(pts.data(), kBlockSamples, count, vals.data());
                    for (int pl : splayers) {
                        const double c = to_double(as_geo->weights[static_cast<std::size_t>(pl - 1)]);
                        const double* row = pts.data() + static_cast<std::size_t>(pl - 1) * kBlockSamples;
                        for (std::size_t p = 0; p < count; ++p) vals[p] *= c / row[p];
                    }
                } else {
                    // Mixed central difference over the clamped point.
                    for (int pl : splayers) {
                        double* row = pts.data() + static_cast<std::size_t>(pl - 1) * kBlockSamples;
                        for (std::size_t p = 0; p < count; ++p)
                            row[p] = std::min(1.0 - kFdStep, std::max(kFdStep, row[p]));
                    }
                    std::vector<double> corner(static_cast<std::size_t>(n) * kBlockSamples);
                    std::vector<double> feval(kBlockSamples);
                    const std::size_t corners = std::size_t{1} << splayers.size();
                    for (std::size_t cbits = 0; cbits < corners; ++cbits) {
                        corner.assign(pts.begin(), pts.end());
                        int parity = 0;
                        for (std::size_t j = 0; j < splayers.size(); ++j) {
                            const double off = (cbits >> j) & 1 ? kFdStep : -kFdStep;
                            parity += ((cbits >> j) & 1) ? 0 : 1;
                            double* row = corner.data() + static_cast<std::size_t>(splayers[j] - 1) * kBlockSamples;
                            for (std::size_t p = 0; p < count; ++p) row[p] += off;
                        }
                        lowered.eval_batch(corner.data(), kBlockSamples, count, feval.data());
                        backend.accumulate(vals.data(), feval.data(), (parity & 1) ? -1.0 : 1.0, count);
                    }
                }
                break;
            }
            case EstimatorKind::BoxVolume:
            case EstimatorKind::DifferenceQuotient: {
                const bool quotient = kind == EstimatorKind::DifferenceQuotient;
                std::vector<double> yrows(splayers.size() * kBlockSamples);
                std::vector<double> weight(kBlockSamples, 1.0);
                for (std::size_t p = 0; p < count; ++p) {
                    for (int i = 0; i < n; ++i) {
                        const double u = rng.uniform();
                        pts[static_cast<std::size_t>(i) * kBlockSamples + p] =
                            (quotient && s.contains(i + 1)) ? 1.0 - std::cbrt(1.0 - u) : u;
                    }
                    double w = 1.0;
                    for (std::size_t j = 0; j < splayers.size(); ++j) {
                        const double x = pts[static_cast<std::size_t>(splayers[j] - 1) * kBlockSamples + p];
                        double y;
                        if (quotient) {
                            y = x + (1.0 - x) * std::sqrt(uniform_open(rng));
                            w *= y - x;  // divide by the box edge product
                        } else {
                            y = x + rng.uniform() * (1.0 - x);
                            w *= 1.0 - x;  // importance weight of uniform-on-[x,1]
                        }
                        yrows[j * kBlockSamples + p] = y;
                    }
                    if (!splayers.empty()) weight[p] = w;
                }
                std::vector<double> scratch(static_cast<std::size_t>(n) * kBlockSamples);
                std::vector<double> corner(kBlockSamples);
                s_difference_batch(lowered, s, pts, yrows, count, scratch, corner, vals);
                if (!splayers.empty()) {
                    if (quotient)
                        for (std::size_t p = 0; p < count; ++p) vals[p] /= weight[p];
                    else
                        for (std::size_t p = 0; p < count; ++p) vals[p] *= weight[p];
                }
                break;
            }
        }

        BlockStats st;
        backend.sum_sumsq(vals.data(), count, &st.sum, &st.sumsq);
        stats[b] = st;
    });

    double sum = 0.0, sumsq = 0.0;
    for (const BlockStats& st : stats) {
        sum += st.sum;
        sumsq += st.sumsq;
    }
    const double m = static_cast<double>(samples);
    const double mean = sum / m;
    double var = (sumsq - m * mean * mean) / (m - 1.0);
    if (var < 0.0) var = 0.0;
    return {scale * mean, scale * std::sqrt(var / m), samples, biased_fd};
}

}  // namespace cubei
