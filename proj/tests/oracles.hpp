#pragma once

// Brute-force reference implementations used only by tests. These stay
// independent of the enumeration code they check: everything is a direct
// scan over an integer box.

#include <cmath>
#include <cstdint>
#include <vector>

#include "latcode/matrix.hpp"
#include "latcode/rng.hpp"

namespace oracle {

// Visit every u in [-box, box]^k.
template <typename Fn>
void for_each_point(int k, int box, Fn&& fn) {
    std::vector<long long> u(static_cast<std::size_t>(k), -box);
    while (true) {
        fn(u);
        int i = k - 1;
        while (i >= 0 && u[static_cast<std::size_t>(i)] == box) {
            u[static_cast<std::size_t>(i)] = -box;
            --i;
        }
        if (i < 0) break;
        ++u[static_cast<std::size_t>(i)];
    }
}

inline double quad_form(const latcode::Matrix& g, const std::vector<long long>& u) {
    double q = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            q += static_cast<double>(u[i]) * g(i, j) * static_cast<double>(u[j]);
    return q;
}

// min over u in [-box, box]^k \ {0} of u^t G u.
inline double brute_shortest_sq(const latcode::Matrix& gram, int box) {
    double best = -1.0;
    for_each_point(static_cast<int>(gram.rows()), box, [&](const std::vector<long long>& u) {
        bool zero = true;
        for (long long v : u)
            if (v != 0) zero = false;
        if (zero) return;
        const double q = quad_form(gram, u);
        if (best < 0.0 || q < best) best = q;
    });
    return best;
}

// argmin over u in [-box, box]^k of ||target - gen*u||^2, ties to the
// lexicographically smallest u.
inline std::vector<long long> brute_closest(const latcode::Matrix& gen,
                                            const std::vector<double>& target, int box) {
    std::vector<long long> best_u;
    double best = 0.0;
    for_each_point(static_cast<int>(gen.cols()), box, [&](const std::vector<long long>& u) {
        double d = 0.0;
        for (std::size_t r = 0; r < gen.rows(); ++r) {
            double s = target[r];
            for (std::size_t c = 0; c < gen.cols(); ++c)
                s -= gen(r, c) * static_cast<double>(u[c]);
            d += s * s;
        }
        if (best_u.empty() || d < best) {
            best = d;
            best_u = u;
        }
    });
    return best_u;
}

// Random full-rank k x k generator with entries uniform in [-2,2]. The
// determinant filter keeps the draw comfortably full rank.
inline latcode::Matrix random_generator(int k, latcode::RngStream& rng,
                                        double min_gram_det = 1e-4) {
    while (true) {
        latcode::Matrix m(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-2.0, 2.0);
        if (latcode::det(m.gram()) > min_gram_det) return m;
    }
}

} // namespace oracle
