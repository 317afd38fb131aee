#pragma once

#include <cmath>

#include "latcode/error.hpp"
#include "latcode/subsets.hpp"

namespace latcode {

// Upper bound on beta_min^(2/k): averaging child Grams over all k-subsets
// contracts the mother Gram by exactly k/n.
inline double trace_bound(int n, int k) {
    if (k < 1 || n < k) throw error(errc::bad_dims, "trace_bound needs 1 <= k <= n");
    return static_cast<double>(k) / static_cast<double>(n);
}

// Upper bound on the geometric-mean contraction ratio beta_geo, from the
// Cauchy-Binet identity plus AM-GM on the child determinants. Holds with
// equality iff all child determinants are equal.
inline double determinant_bound(double mother_density, double child_density, int n, int k) {
    if (k < 1 || n < k) throw error(errc::bad_dims, "determinant_bound needs 1 <= k <= n");
    if (!(mother_density > 0.0 && mother_density <= 1.0))
        throw error(errc::bad_params, "mother density must lie in (0,1]");
    if (!(child_density > 0.0 && child_density <= 1.0))
        throw error(errc::bad_params, "child density must lie in (0,1]");
    return child_density / (mother_density * std::sqrt(static_cast<double>(binomial(n, k))));
}

// Best lattice packing density in R^k. Table-driven; extend as needed.
inline double optimal_density(int k) {
    const double pi = 3.14159265358979323846;
    switch (k) {
        case 1: return 1.0;
        case 2: return pi / std::sqrt(12.0); // hexagonal
        case 3: return pi / std::sqrt(18.0); // face-centered cubic
        default:
            throw error(errc::unknown_dimension,
                        "no optimal density tabulated for k = " + std::to_string(k));
    }
}

// Density of the cubic lattice Z^k.
inline double cubic_density(int k) {
    const double pi = 3.14159265358979323846;
    return std::pow(pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0) * std::pow(0.5, k);
}

struct BoundsReport {
    int n;
    int k;
    double trace_bound;              // bound on beta_min^(2/k); equals k/n
    double det_bound_beta_geo;       // bound on beta_geo
    double det_bound_exponent_2k;    // the same bound raised to 2/k, for plotting
    double mother_density;
    double child_density_assumption;
};

inline BoundsReport bounds_report(int n, int k, double mother_density, double child_density) {
    BoundsReport r;
    r.n = n;
    r.k = k;
    r.trace_bound = trace_bound(n, k);
    r.det_bound_beta_geo = determinant_bound(mother_density, child_density, n, k);
    r.det_bound_exponent_2k = std::pow(r.det_bound_beta_geo, 2.0 / static_cast<double>(k));
    r.mother_density = mother_density;
    r.child_density_assumption = child_density;
    return r;
}

} // namespace latcode
