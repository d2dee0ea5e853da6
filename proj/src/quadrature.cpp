#include "cubei/quadrature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubei {

GaussRule gauss_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_rule: order must be >= 1");
    const int m = order;
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(m));
    rule.weights.resize(static_cast<std::size_t>(m));
    // Newton iteration on P_m over [-1,1], then map to [0,1].
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (m == 1) {
                p1 = x;
            }
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pm = (m == 1) ? x : p1;
            const double pm1 = (m == 1) ? 1.0 : p0;
            pp = m * (x * pm - pm1) / (x * x - 1.0);
            const double dx = pm / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
        rule.nodes[static_cast<std::size_t>(m - 1 - i)] = 0.5 * (1.0 + x);
        rule.weights[static_cast<std::size_t>(i)] = 0.5 * w;
        rule.weights[static_cast<std::size_t>(m - 1 - i)] = 0.5 * w;
    }
    if (m == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
    }
    return rule;
}

namespace {

constexpr std::size_t kGridLimit = std::size_t{1} << 24;
constexpr std::size_t kBlock = 512;

// Walks the tensor grid over the active axes in blocks, filling a
// coordinate-major point buffer (inactive axes pinned at 1/2) and handing
// each block to `consume(pts, count, weights)`.
template <class Consume>
void walk_grid(int n, std::uint64_t active, int order, Consume&& consume) {
    const GaussRule rule = gauss_rule(order);
    std::vector<int> axes;
    for (int i = 0; i < n; ++i)
        if (active & (1ull << i)) axes.push_back(i);
    const std::size_t dims = axes.size();
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        if (total > kGridLimit / static_cast<std::size_t>(order))
            throw unsupported_error("tensor quadrature grid exceeds 2^24 points; use Monte Carlo");
        total *= static_cast<std::size_t>(order);
    }
    std::vector<double> pts(static_cast<std::size_t>(n) * kBlock, 0.5);
    std::vector<double> wts(kBlock);
    std::vector<std::size_t> idx(dims, 0);
    std::size_t done = 0;
    while (done < total) {
        const std::size_t count = std::min(kBlock, total - done);
        for (std::size_t p = 0; p < count; ++p) {
            double w = 1.0;
            for (std::size_t d = 0; d < dims; ++d) {
                const std::size_t k = idx[d];
                pts[static_cast<std::size_t>(axes[d]) * kBlock + p] = rule.nodes[k];
                w *= rule.weights[k];
            }
            wts[p] = w;
            // Odometer increment over the multi-index.
            for (std::size_t d = 0; d < dims; ++d) {
                if (++idx[d] < static_cast<std::size_t>(order)) break;
                idx[d] = 0;
            }
        }
        consume(pts.data(), count, wts.data());
        done += count;
    }
}

}  // namespace

double tensor_integral(const LoweredSpec& f, const TensorIntegralSpec& cfg) {
    const kernels::Backend& backend = f.backend();
    double acc = 0.0;
    std::vector<double> vals(kBlock);
    walk_grid(f.n(), cfg.active, cfg.order, [&](const double* pts, std::size_t count, const double* wts) {
        f.eval_batch(pts, kBlock, count, vals.data());
        if (cfg.square)
            for (std::size_t p = 0; p < count; ++p) vals[p] *= vals[p];
        if (cfg.centered) backend.centered_product(cfg.centered, pts, kBlock, count, vals.data());
        for (std::size_t p = 0; p < count; ++p) acc += wts[p] * vals[p];
    });
    return acc;
}

double tensor_integral_fn(const std::function<double(std::span<const double>)>& f, int n,
                          const TensorIntegralSpec& cfg) {
    double acc = 0.0;
    std::vector<double> x(static_cast<std::size_t>(n));
    walk_grid(n, cfg.active, cfg.order, [&](const double* pts, std::size_t count, const double* wts) {
        for (std::size_t p = 0; p < count; ++p) {
            for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = pts[static_cast<std::size_t>(i) * kBlock + p];
            double v = f(x);
            if (cfg.square) v *= v;
            if (cfg.centered) {
                for (std::uint64_t b = cfg.centered; b;) {
                    v *= x[static_cast<std::size_t>(std::countr_zero(b))] - 0.5;
                    b &= b - 1;
                }
            }
            acc += wts[p] * v;
        }
    });
    return acc;
}

double simplex_integral(const std::function<double(std::span<const double>)>& f, int n, int order) {
    if (n < 1 || n > 8) throw std::invalid_argument("simplex_integral: supported for 1 <= n <= 8");
    const GaussRule rule = gauss_rule(order);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<double> t(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));
    std::vector<std::size_t> idx(static_cast<std::size_t>(n));
    double acc = 0.0;
    do {
        // Duffy map: x_{perm[k]} = prod_{j >= k} t_j, Jacobian prod_j t_j^j.
        std::fill(idx.begin(), idx.end(), 0);
        std::size_t total = 1;
        for (int d = 0; d < n; ++d) total *= static_cast<std::size_t>(order);
        for (std::size_t q = 0; q < total; ++q) {
            double w = 1.0, jac = 1.0;
            for (int d = 0; d < n; ++d) {
                t[static_cast<std::size_t>(d)] = rule.nodes[idx[static_cast<std::size_t>(d)]];
                w *= rule.weights[idx[static_cast<std::size_t>(d)]];
                for (int rep = 0; rep < d; ++rep) jac *= t[static_cast<std::size_t>(d)];
            }
            double prod = 1.0;
            for (int k = n - 1; k >= 0; --k) {
                prod *= t[static_cast<std::size_t>(k)];
                x[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = prod;
            }
            acc += w * jac * f(x);
            for (int d = 0; d < n; ++d) {
                if (++idx[static_cast<std::size_t>(d)] < static_cast<std::size_t>(order)) break;
                idx[static_cast<std::size_t>(d)] = 0;
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

}  // namespace cubei
