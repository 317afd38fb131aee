#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "latcode/erasure_code.hpp"
#include "latcode/rng.hpp"
#include "latcode/subsets.hpp"

namespace latcode {

// Trials are consumed in fixed-size blocks, each with its own stream keyed by
// (seed, subset index, block index); totals do not depend on how blocks are
// scheduled across workers.
inline constexpr std::uint64_t kTrialBlock = 8192;

// Finite codebook: the coset representatives {0..M-1}^k pushed through the
// embedding, centered, and scaled so the mean power meets E[X^t X] = nP.
struct Constellation {
    ErasureCode code;
    std::vector<std::vector<long long>> coeff_set; // lexicographic
    double scale;
    std::vector<std::vector<double>> points; // n-vectors, centroid zero
};

inline Constellation build_constellation(const ErasureCode& code, int M, double P) {
    if (M < 2) throw error(errc::bad_params, "constellation needs M >= 2");
    if (!(P > 0.0)) throw error(errc::bad_params, "constellation needs P > 0");

    Constellation c{code, {}, 1.0, {}};
    const int k = code.k;
    std::vector<long long> u(static_cast<std::size_t>(k), 0);
    while (true) {
        c.coeff_set.push_back(u);
        int i = k - 1;
        while (i >= 0 && u[static_cast<std::size_t>(i)] == M - 1) {
            u[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++u[static_cast<std::size_t>(i)];
    }

    const Matrix embed = code.phi * code.mother.generator; // n x k
    std::vector<double> centroid(static_cast<std::size_t>(code.n), 0.0);
    for (const auto& coeffs : c.coeff_set) {
        std::vector<double> x(static_cast<std::size_t>(code.n), 0.0);
        for (int r = 0; r < code.n; ++r) {
            double s = 0.0;
            for (int j = 0; j < k; ++j)
                s += embed(static_cast<std::size_t>(r), static_cast<std::size_t>(j)) *
                     static_cast<double>(coeffs[static_cast<std::size_t>(j)]);
            x[static_cast<std::size_t>(r)] = s;
            centroid[static_cast<std::size_t>(r)] += s;
        }
        c.points.push_back(std::move(x));
    }
    for (double& v : centroid) v /= static_cast<double>(c.points.size());

    double mean_power = 0.0;
    for (auto& x : c.points) {
        for (int r = 0; r < code.n; ++r) {
            x[static_cast<std::size_t>(r)] -= centroid[static_cast<std::size_t>(r)];
            mean_power += x[static_cast<std::size_t>(r)] * x[static_cast<std::size_t>(r)];
        }
    }
    mean_power /= static_cast<double>(c.points.size());
    c.scale = std::sqrt(static_cast<double>(code.n) * P / mean_power);
    for (auto& x : c.points)
        for (double& v : x) v *= c.scale;
    return c;
}

struct SimResult {
    std::vector<int> subset;
    std::uint64_t trials;
    std::uint64_t errors;
    double p_e;
    double ci95_halfwidth; // normal approximation
    double sigma;
    std::uint64_t seed;
};

namespace detail {

inline int subset_rank(const std::vector<int>& subset, int n, int k) {
    const auto all = k_subsets(n, k);
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i] == subset) return static_cast<int>(i);
    throw error(errc::bad_subset, "subset must be a strictly increasing k-subset of 1..n");
}

} // namespace detail

// Monte Carlo block-error rate for one erasure pattern: draw a codeword
// uniformly, add i.i.d. Gaussian noise (std sigma) to the retained
// coordinates, decode by nearest projected codeword (exhaustive, ties to the
// lexicographically smallest coefficient vector).
inline SimResult simulate(const Constellation& c, const std::vector<int>& subset, double sigma,
                          std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw error(errc::bad_params, "simulate needs trials >= 1");
    if (sigma < 0.0) throw error(errc::bad_params, "sigma must be nonnegative");
    const int rank = detail::subset_rank(subset, c.code.n, c.code.k);
    const int k = c.code.k;

    const Matrix child = c.code.phi.select_rows(subset) * c.code.mother.generator;
    if (!(det(child.gram()) > kRankTolerance))
        throw error(errc::reduced_rank, "subset " + subset_label(subset) +
                                            " is undecodable even without noise");

    // Projected codebook for this pattern.
    const std::size_t count = c.points.size();
    std::vector<double> proj(count * static_cast<std::size_t>(k));
    for (std::size_t p = 0; p < count; ++p)
        for (int j = 0; j < k; ++j)
            proj[p * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
                c.points[p][static_cast<std::size_t>(subset[static_cast<std::size_t>(j)] - 1)];

    std::uint64_t errors = 0;
    std::vector<double> y(static_cast<std::size_t>(k));
    for (std::uint64_t block = 0; block * kTrialBlock < trials; ++block) {
        RngStream rng(seed, {static_cast<std::uint64_t>(rank), block});
        const std::uint64_t lo = block * kTrialBlock;
        const std::uint64_t hi = std::min(trials, lo + kTrialBlock);
        for (std::uint64_t t = lo; t < hi; ++t) {
            const std::size_t sent = static_cast<std::size_t>(rng.uniform_below(count));
            for (int j = 0; j < k; ++j)
                y[static_cast<std::size_t>(j)] =
                    proj[sent * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] +
                    sigma * rng.gaussian();
            std::size_t best = 0;
            double best_d = 0.0;
            for (std::size_t p = 0; p < count; ++p) {
                double d = 0.0;
                for (int j = 0; j < k; ++j) {
                    const double diff =
                        y[static_cast<std::size_t>(j)] -
                        proj[p * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
                    d += diff * diff;
                }
                if (p == 0 || d < best_d) {
                    best_d = d;
                    best = p;
                }
            }
            if (best != sent) ++errors;
        }
    }

    SimResult r;
    r.subset = subset;
    r.trials = trials;
    r.errors = errors;
    r.p_e = static_cast<double>(errors) / static_cast<double>(trials);
    r.ci95_halfwidth = 1.96 * std::sqrt(r.p_e * (1.0 - r.p_e) / static_cast<double>(trials));
    r.sigma = sigma;
    r.seed = seed;
    return r;
}

struct SimulationSweep {
    std::vector<SimResult> per_subset; // lexicographic subset order
    double worst_pe;
};

inline SimulationSweep simulate_all(const Constellation& c, double sigma, std::uint64_t trials,
                                    std::uint64_t seed) {
    SimulationSweep sweep{{}, 0.0};
    for (const auto& subset : k_subsets(c.code.n, c.code.k)) {
        SimResult r = simulate(c, subset, sigma, trials, seed);
        sweep.worst_pe = std::max(sweep.worst_pe, r.p_e);
        sweep.per_subset.push_back(std::move(r));
    }
    return sweep;
}

} // namespace latcode
