#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "latcode/erasure_code.hpp"
#include "latcode/matrix.hpp"
#include "latcode/subsets.hpp"

namespace latcode {

inline constexpr double kContactTolerance = 1e-7;
inline constexpr int kDefaultSearchBox = 6;

// Post-erasure noise body for pattern S, pulled back to mother coordinates:
// B_S(r) = { y : ||Phi_S y||^2 <= r^2 }, an ellipsoid with quadratic form
// Phi_S^t Phi_S.
struct NoiseEllipsoid {
    std::vector<int> subset;
    Matrix quad_form; // k x k, symmetric PSD
    double radius;

    bool contains(const std::vector<double>& y) const {
        double q = 0.0;
        for (std::size_t i = 0; i < quad_form.rows(); ++i)
            for (std::size_t j = 0; j < quad_form.cols(); ++j)
                q += y[i] * quad_form(i, j) * y[j];
        return q <= radius * radius;
    }
};

inline NoiseEllipsoid ellipsoid(const ErasureCode& code, const std::vector<int>& subset,
                                double r) {
    if (!is_valid_subset(subset, code.n, code.k))
        throw error(errc::bad_subset, "subset must be a strictly increasing k-subset of 1..n");
    if (!(r > 0.0)) throw error(errc::bad_params, "radius must be positive");
    return NoiseEllipsoid{subset, code.phi.select_rows(subset).gram(), r};
}

struct ContactReport {
    std::vector<int> subset;
    std::vector<std::vector<long long>> contact_points; // coefficient vectors u
    bool touched;
};

namespace detail {

// Visit every u in [-box, box]^k except u = 0, in lexicographic order.
template <typename Fn>
inline void for_each_box_point(int k, int box, Fn&& fn) {
    std::vector<long long> u(static_cast<std::size_t>(k), -box);
    while (true) {
        bool zero = true;
        for (long long v : u)
            if (v != 0) {
                zero = false;
                break;
            }
        if (!zero) fn(u);
        int i = k - 1;
        while (i >= 0 && u[static_cast<std::size_t>(i)] == box) {
            u[static_cast<std::size_t>(i)] = -box;
            --i;
        }
        if (i < 0) break;
        ++u[static_cast<std::size_t>(i)];
    }
}

inline double child_point_norm(const Matrix& child_gen, const std::vector<long long>& u) {
    double nsq = 0.0;
    for (std::size_t r = 0; r < child_gen.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < child_gen.cols(); ++c)
            s += child_gen(r, c) * static_cast<double>(u[c]);
        nsq += s * s;
    }
    return std::sqrt(nsq);
}

} // namespace detail

// True iff no nonzero lattice point of the mother lattice (searched over the
// coefficient box) lies strictly inside any noise body B_S(r).
inline bool admissible(const ErasureCode& code, double r, int search_box = kDefaultSearchBox) {
    if (!(r > 0.0)) throw error(errc::bad_params, "radius must be positive");
    std::vector<Matrix> gens;
    for (const auto& subset : k_subsets(code.n, code.k))
        gens.push_back(code.phi.select_rows(subset) * code.mother.generator);
    bool ok = true;
    detail::for_each_box_point(code.k, search_box, [&](const std::vector<long long>& u) {
        if (!ok) return;
        for (const Matrix& gen : gens)
            if (detail::child_point_norm(gen, u) < r - 1e-9) {
                ok = false;
                return;
            }
    });
    return ok;
}

// Lattice points sitting on the boundary of each B_S(r), within
// kContactTolerance. One report per subset, lexicographic order.
inline std::vector<ContactReport> contacts(const ErasureCode& code, double r,
                                           int search_box = kDefaultSearchBox) {
    if (!(r > 0.0)) throw error(errc::bad_params, "radius must be positive");
    std::vector<ContactReport> reports;
    for (const auto& subset : k_subsets(code.n, code.k)) {
        const Matrix gen = code.phi.select_rows(subset) * code.mother.generator;
        ContactReport rep{subset, {}, false};
        detail::for_each_box_point(code.k, search_box, [&](const std::vector<long long>& u) {
            if (std::abs(detail::child_point_norm(gen, u) - r) < kContactTolerance)
                rep.contact_points.push_back(u);
        });
        rep.touched = !rep.contact_points.empty();
        reports.push_back(std::move(rep));
    }
    return reports;
}

struct Point2 {
    double x;
    double y;
};

struct EllipsePolyline {
    std::vector<int> subset;
    std::vector<Point2> points; // 256 boundary samples
};

struct PlotData {
    std::vector<EllipsePolyline> ellipses;
    std::vector<Point2> lattice_points; // points of V*Z^2 within the window
};

namespace detail {

struct Eigen2 {
    double lo, hi;    // eigenvalues, lo <= hi
    double vx, vy;    // unit eigenvector for lo
};

inline Eigen2 eigen_sym2(const Matrix& q) {
    const double a = q(0, 0), b = q(0, 1), c = q(1, 1);
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4 * b * b));
    Eigen2 e;
    e.lo = (tr - disc) / 2;
    e.hi = (tr + disc) / 2;
    // eigenvector for lo
    if (std::abs(b) > 1e-15) {
        e.vx = e.lo - c;
        e.vy = b;
    } else if (a <= c) {
        e.vx = 1;
        e.vy = 0;
    } else {
        e.vx = 0;
        e.vy = 1;
    }
    const double norm = std::hypot(e.vx, e.vy);
    e.vx /= norm;
    e.vy /= norm;
    return e;
}

} // namespace detail

// Eccentricity of the ellipse y^t Q y = r^2 (0 for a circle).
inline double ellipse_eccentricity(const Matrix& quad_form) {
    const detail::Eigen2 e = detail::eigen_sym2(quad_form);
    if (!(e.lo > 0.0)) throw error(errc::reduced_rank, "degenerate noise ellipsoid");
    return std::sqrt(std::max(0.0, 1.0 - e.lo / e.hi));
}

// Boundary polylines of all C(n,2) noise ellipses plus the mother-lattice
// points inside [-window, window]^2. Rank-2 codes only.
inline PlotData plot_data(const ErasureCode& code, double r, double window,
                          int samples_per_ellipse = 256) {
    if (code.k != 2) throw error(errc::unsupported_rank, "plot_data supports k = 2 only");
    if (!(r > 0.0)) throw error(errc::bad_params, "radius must be positive");
    if (window < 0.0) throw error(errc::bad_params, "window must be nonnegative");

    const double pi = 3.14159265358979323846;
    PlotData out;
    for (const auto& subset : k_subsets(code.n, code.k)) {
        const NoiseEllipsoid body = ellipsoid(code, subset, r);
        const detail::Eigen2 e = detail::eigen_sym2(body.quad_form);
        if (!(e.lo > 1e-12))
            throw error(errc::reduced_rank,
                        "degenerate noise ellipsoid for subset " + subset_label(subset));
        const double semi_major = r / std::sqrt(e.lo); // along (vx, vy)
        const double semi_minor = r / std::sqrt(e.hi);
        EllipsePolyline poly{subset, {}};
        poly.points.reserve(static_cast<std::size_t>(samples_per_ellipse));
        for (int s = 0; s < samples_per_ellipse; ++s) {
            const double t = 2 * pi * s / samples_per_ellipse;
            const double u = semi_major * std::cos(t);
            const double v = semi_minor * std::sin(t);
            poly.points.push_back({u * e.vx - v * e.vy, u * e.vy + v * e.vx});
        }
        out.ellipses.push_back(std::move(poly));
    }

    if (window > 0.0) {
        const Matrix vinv = inverse(code.mother.generator);
        double reach = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            reach = std::max(reach, std::abs(vinv(i, 0)) + std::abs(vinv(i, 1)));
        const int box = static_cast<int>(std::ceil(reach * window)) + 1;
        const Matrix& v = code.mother.generator;
        for (long long u1 = -box; u1 <= box; ++u1)
            for (long long u2 = -box; u2 <= box; ++u2) {
                const double x = v(0, 0) * u1 + v(0, 1) * u2;
                const double y = v(1, 0) * u1 + v(1, 1) * u2;
                if (std::abs(x) <= window && std::abs(y) <= window)
                    out.lattice_points.push_back({x, y});
            }
    }
    return out;
}

inline void write_plot_csv(std::ostream& os, const PlotData& data) {
    os << "# sections: ellipse,<subset>,<x>,<y> and lattice,<x>,<y>\n";
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& poly : data.ellipses)
        for (const auto& p : poly.points)
            os << "ellipse," << subset_label(poly.subset) << "," << num(p.x) << "," << num(p.y)
               << "\n";
    for (const auto& p : data.lattice_points)
        os << "lattice," << num(p.x) << "," << num(p.y) << "\n";
}

} // namespace latcode
