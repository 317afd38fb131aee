#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "latcode/error.hpp"
#include "latcode/matrix.hpp"

namespace latcode {

inline constexpr double kRankTolerance = 1e-10; // on det(Gram)
inline constexpr int kMaxEnumRank = 8;

// Rank-k lattice given by an m x k generator (columns are basis vectors'
// coordinates; lattice = generator * Z^k). Full column rank is enforced here
// so the operations below can assume it.
struct Lattice {
    Matrix generator;

    explicit Lattice(Matrix gen) : generator(std::move(gen)) {
        if (generator.rows() < generator.cols())
            throw error(errc::bad_dims, "generator needs rows >= cols");
        if (generator.cols() == 0) throw error(errc::bad_dims, "generator needs rank >= 1");
        if (!(det(generator.gram()) > kRankTolerance))
            throw error(errc::numerically_singular, "generator is rank deficient");
    }

    std::size_t rank() const { return generator.cols(); }
    std::size_t ambient_dim() const { return generator.rows(); }
};

struct ShortestVectorResult {
    std::vector<long long> coeffs; // nonzero; first nonzero entry positive
    double squared_length;
};

namespace detail {

// Schnorr-Euchner depth-first enumeration over u in Z^k of
// ||R u - y||^2 + offset, R upper triangular from Cholesky/QR.
// For SVP y = 0 and the zero vector is excluded; for CVP ties within tie_eps
// resolve to the lexicographically smallest coefficient vector.
struct Enumerator {
    const Matrix& r;
    std::vector<double> y;
    bool exclude_zero;
    double tie_eps;

    int k;
    std::vector<long long> u, best_u;
    double best_cost;
    bool have_best = false;

    Enumerator(const Matrix& r_, std::vector<double> y_, bool exclude_zero_, double tie_eps_)
        : r(r_), y(std::move(y_)), exclude_zero(exclude_zero_), tie_eps(tie_eps_),
          k(static_cast<int>(r_.rows())), u(r_.rows(), 0), best_u(r_.rows(), 0),
          best_cost(0.0) {}

    void seed(std::vector<long long> u0) {
        double cost = 0.0;
        for (int i = 0; i < k; ++i) {
            double acc = y[i];
            for (int j = i; j < k; ++j) acc -= r(i, j) * static_cast<double>(u0[j]);
            cost += acc * acc;
        }
        best_u = std::move(u0);
        best_cost = cost;
        have_best = true;
    }

    static bool lex_less(const std::vector<long long>& a, const std::vector<long long>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }

    void offer(double cost) {
        if (exclude_zero) {
            bool zero = true;
            for (long long v : u)
                if (v != 0) {
                    zero = false;
                    break;
                }
            if (zero) return;
        }
        if (!have_best || cost < best_cost - tie_eps) {
            best_cost = cost;
            best_u = u;
            have_best = true;
        } else if (cost <= best_cost + tie_eps) {
            if (cost < best_cost) best_cost = cost;
            if (lex_less(u, best_u)) best_u = u;
        }
    }

    double bound() const { return have_best ? best_cost + tie_eps : 1e300; }

    void descend(int i, double partial) {
        if (i < 0) {
            offer(partial);
            return;
        }
        const double rii = r(i, i);
        double proj = y[i];
        for (int j = i + 1; j < k; ++j) proj -= r(i, j) * static_cast<double>(u[j]);
        const double c = proj / rii;
        const double r2 = rii * rii;

        const double room = bound() - partial;
        if (room < 0.0) return;
        const double t = std::sqrt(room / r2);
        const long long lo = static_cast<long long>(std::ceil(c - t - 1e-12));
        const long long hi = static_cast<long long>(std::floor(c + t + 1e-12));
        if (lo > hi) return;

        const long long x0 = std::llround(c);
        const long long dir = (c >= static_cast<double>(x0)) ? 1 : -1;
        for (long long radius = 0;; ++radius) {
            bool any = false;
            for (int side = 0; side < (radius == 0 ? 1 : 2); ++side) {
                const long long x = (side == 0) ? x0 + dir * radius : x0 - dir * radius;
                if (x < lo || x > hi) continue;
                any = true;
                const double dxc = static_cast<double>(x) - c;
                const double cost = partial + r2 * dxc * dxc;
                if (cost > bound()) continue; // bound may have shrunk
                u[static_cast<std::size_t>(i)] = x;
                descend(i - 1, cost);
            }
            if (!any && radius >= 1) break;
        }
        u[static_cast<std::size_t>(i)] = 0;
    }
};

inline void check_enum_rank(std::size_t k) {
    if (k > static_cast<std::size_t>(kMaxEnumRank))
        throw error(errc::dimension_too_large, "enumeration supports rank <= 8");
}

} // namespace detail

// Globally shortest nonzero vector of the lattice with the given Gram matrix.
inline ShortestVectorResult shortest_vector_of_gram(const Matrix& gram) {
    detail::check_enum_rank(gram.rows());
    const std::size_t k = gram.rows();
    const Matrix r = cholesky_upper(gram, kRankTolerance);

    detail::Enumerator e(r, std::vector<double>(k, 0.0), /*exclude_zero=*/true,
                         /*tie_eps=*/0.0);
    // Seed with the best diagonal entry (a unit coefficient vector) so the
    // search starts from a feasible incumbent.
    std::size_t bi = 0;
    for (std::size_t i = 1; i < k; ++i)
        if (gram(i, i) < gram(bi, bi)) bi = i;
    std::vector<long long> u0(k, 0);
    u0[bi] = 1;
    e.seed(std::move(u0));
    e.descend(static_cast<int>(k) - 1, 0.0);

    ShortestVectorResult out{e.best_u, e.best_cost};
    for (long long v : out.coeffs) {
        if (v > 0) break;
        if (v < 0) {
            for (long long& w : out.coeffs) w = -w;
            break;
        }
    }
    return out;
}

inline Matrix gram(const Lattice& lat) { return lat.generator.gram(); }

inline double determinant(const Lattice& lat) {
    const double d = det(gram(lat));
    if (!(d > kRankTolerance))
        throw error(errc::numerically_singular, "Gram determinant not positive");
    return d;
}

inline ShortestVectorResult shortest_vector(const Lattice& lat) {
    return shortest_vector_of_gram(gram(lat));
}

inline double packing_radius(const Lattice& lat) {
    return std::sqrt(shortest_vector(lat).squared_length) / 2.0;
}

// Volume of the unit-radius Euclidean ball in R^k.
inline double unit_ball_volume(int k) {
    if (k < 1) throw error(errc::bad_dims, "unit_ball_volume needs k >= 1");
    const double pi = 3.14159265358979323846;
    return std::pow(pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

inline double packing_density(const Lattice& lat) {
    const int k = static_cast<int>(lat.rank());
    const double rho = packing_radius(lat);
    return unit_ball_volume(k) * std::pow(rho, k) / std::sqrt(determinant(lat));
}

// Integer coefficients u minimizing ||target - generator*u||; ties within
// numerical noise go to the lexicographically smallest u.
inline std::vector<long long> closest_vector(const Lattice& lat,
                                             const std::vector<double>& target) {
    detail::check_enum_rank(lat.rank());
    if (target.size() != lat.ambient_dim())
        throw error(errc::bad_dims, "target length must match ambient dimension");
    const std::size_t k = lat.rank();
    const QrThin qr = qr_thin(lat.generator);

    std::vector<double> y(k, 0.0); // Q1^t target
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < lat.ambient_dim(); ++r) s += qr.q(r, i) * target[r];
        y[i] = s;
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(y[i]));
    detail::Enumerator e(qr.r, y, /*exclude_zero=*/false,
                         /*tie_eps=*/1e-9 * (1.0 + scale * scale));

    // Babai nearest-plane point as the initial incumbent.
    std::vector<long long> u0(k, 0);
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
        double proj = y[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < static_cast<int>(k); ++j)
            proj -= qr.r(i, j) * static_cast<double>(u0[static_cast<std::size_t>(j)]);
        u0[static_cast<std::size_t>(i)] = std::llround(proj / qr.r(i, i));
    }
    e.seed(std::move(u0));
    e.descend(static_cast<int>(k) - 1, 0.0);
    return e.best_u;
}

} // namespace latcode
