#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "latcode/erasure_code.hpp"
#include "latcode/matrix.hpp"
#include "latcode/rng.hpp"

namespace latcode {

enum class Objective { beta_min, beta_geo };

inline const char* objective_name(Objective o) {
    return o == Objective::beta_min ? "beta_min" : "beta_geo";
}

// Haar-uniform n x k frame with orthonormal columns: QR of an i.i.d. standard
// Gaussian matrix with the R_ii > 0 sign convention.
inline Matrix random_stiefel(int n, int k, RngStream& rng) {
    if (k > n || k < 1) throw error(errc::bad_dims, "random_stiefel needs 1 <= k <= n");
    Matrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) = rng.gaussian();
    return qr_thin(g).q;
}

struct SearchConfig {
    int n;
    int k;
    Lattice mother;
    Objective objective = Objective::beta_min;
    int restarts = 20;
    int local_steps = 400;
    double step_scale = 0.5; // initial Givens angle bound, radians
    int halve_after = 20;    // consecutive rejections before halving the angle
    std::uint64_t seed = 0;
    bool keep_trace = false;

    SearchConfig(int n_, int k_, Lattice mother_) : n(n_), k(k_), mother(std::move(mother_)) {
        if (k < 1 || k > n) throw error(errc::bad_dims, "search needs 1 <= k <= n");
        if (mother.generator.rows() != static_cast<std::size_t>(k) ||
            mother.generator.cols() != static_cast<std::size_t>(k))
            throw error(errc::bad_dims, "mother generator must be k x k");
    }
};

struct SearchResult {
    ErasureCode best_code;
    double best_value;
    Objective objective;
    std::uint64_t evaluations;
    std::vector<std::pair<std::uint64_t, double>> trace; // (evaluation index, new incumbent)
};

namespace detail {

inline double objective_value(const ErasureCode& code, Objective obj) {
    const CodeReport rep = code_report(code);
    return obj == Objective::beta_min ? rep.beta_min : rep.beta_geo;
}

// Left-multiply by a Givens rotation in the (i,j) plane: rotates rows i and j,
// so orthonormal columns stay orthonormal exactly (up to roundoff).
inline void apply_givens(Matrix& m, int i, int j, double angle) {
    const double cs = std::cos(angle), sn = std::sin(angle);
    for (std::size_t col = 0; col < m.cols(); ++col) {
        const double vi = m(static_cast<std::size_t>(i), col);
        const double vj = m(static_cast<std::size_t>(j), col);
        m(static_cast<std::size_t>(i), col) = cs * vi - sn * vj;
        m(static_cast<std::size_t>(j), col) = sn * vi + cs * vj;
    }
}

struct RestartOutcome {
    Matrix best_phi;
    double best_value;
    std::uint64_t evaluations;
    std::vector<std::pair<std::uint64_t, double>> trace;
};

inline RestartOutcome run_restart(const SearchConfig& cfg, std::uint64_t restart_index) {
    RngStream rng(cfg.seed, {restart_index});
    RestartOutcome out{random_stiefel(cfg.n, cfg.k, rng), 0.0, 0, {}};
    out.best_value =
        objective_value(ErasureCode(out.best_phi, cfg.mother), cfg.objective);
    out.evaluations = 1;
    if (cfg.keep_trace) out.trace.emplace_back(0, out.best_value);

    Matrix phi = out.best_phi;
    double theta = cfg.step_scale;
    int rejections = 0;
    const int planes = cfg.n * (cfg.n - 1) / 2;
    for (int step = 0; step < cfg.local_steps; ++step) {
        const int plane = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(planes)));
        int i = 0, j = 1, p = plane;
        for (i = 0; i < cfg.n - 1; ++i) {
            const int row_planes = cfg.n - 1 - i;
            if (p < row_planes) {
                j = i + 1 + p;
                break;
            }
            p -= row_planes;
        }
        const double angle = rng.uniform(-theta, theta);

        Matrix candidate = phi;
        apply_givens(candidate, i, j, angle);
        const double value =
            objective_value(ErasureCode(candidate, cfg.mother), cfg.objective);
        ++out.evaluations;
        if (value > out.best_value) {
            out.best_value = value;
            phi = std::move(candidate);
            out.best_phi = phi;
            rejections = 0;
            if (cfg.keep_trace) out.trace.emplace_back(out.evaluations - 1, value);
        } else {
            if (++rejections >= cfg.halve_after) {
                theta *= 0.5;
                rejections = 0;
            }
        }
    }
    return out;
}

} // namespace detail

// Random-restart hill climbing over the Stiefel manifold of embeddings.
// Restarts are independent (stream split on restart index) and reduced in
// index order, so the result is identical however they are scheduled.
inline SearchResult search(const SearchConfig& cfg) {
    if (cfg.restarts < 1) throw error(errc::bad_params, "search needs restarts >= 1");
    if (!(cfg.step_scale > 0.0 && cfg.step_scale < 1.5707963267948966))
        throw error(errc::bad_params, "step_scale must lie in (0, pi/2)");

    std::optional<detail::RestartOutcome> best;
    std::uint64_t evaluations = 0;
    std::vector<std::pair<std::uint64_t, double>> trace;
    for (int r = 0; r < cfg.restarts; ++r) {
        detail::RestartOutcome out = detail::run_restart(cfg, static_cast<std::uint64_t>(r));
        for (const auto& [local_idx, value] : out.trace)
            trace.emplace_back(evaluations + local_idx, value);
        evaluations += out.evaluations;
        if (!best || out.best_value > best->best_value) best = std::move(out);
    }
    SearchResult result{ErasureCode(best->best_phi, cfg.mother), best->best_value,
                        cfg.objective, evaluations, std::move(trace)};
    return result;
}

} // namespace latcode
