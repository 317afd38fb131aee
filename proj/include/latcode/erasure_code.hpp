#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "latcode/error.hpp"
#include "latcode/lattice.hpp"
#include "latcode/matrix.hpp"
#include "latcode/subsets.hpp"

namespace latcode {

inline constexpr double kOrthoTolerance = 1e-9; // entrywise, on Phi^t Phi - I

inline double orthonormality_residual(const Matrix& phi) {
    return max_abs_diff(phi.gram(), Matrix::identity(phi.cols()));
}

// An (n,k) lattice erasure code: an orthonormal embedding phi (n x k) applied
// to a full-rank mother lattice V (k x k). The embedded lattice is
// phi * V * Z^k; erasure pattern S keeps the rows of phi indexed by S.
struct ErasureCode {
    int n;
    int k;
    Matrix phi;     // n x k, orthonormal columns
    Lattice mother; // k x k generator

    ErasureCode(Matrix phi_, Lattice mother_)
        : n(static_cast<int>(phi_.rows())), k(static_cast<int>(phi_.cols())),
          phi(std::move(phi_)), mother(std::move(mother_)) {
        if (k > n) throw error(errc::bad_dims, "code needs k <= n");
        if (mother.generator.rows() != static_cast<std::size_t>(k) ||
            mother.generator.cols() != static_cast<std::size_t>(k))
            throw error(errc::bad_dims, "mother generator must be k x k");
        const double res = orthonormality_residual(phi);
        if (res > kOrthoTolerance)
            throw error(errc::bad_params, "phi columns not orthonormal (residual " +
                                              std::to_string(res) + ")");
    }
};

// Generator of the child lattice for erasure pattern S: Phi_S * V.
inline Matrix child_generator(const ErasureCode& code, const std::vector<int>& subset) {
    if (!is_valid_subset(subset, code.n, code.k))
        throw error(errc::bad_subset, "subset must be a strictly increasing k-subset of 1..n");
    return code.phi.select_rows(subset) * code.mother.generator;
}

inline Lattice child_lattice(const ErasureCode& code, const std::vector<int>& subset) {
    Matrix gen = child_generator(code, subset);
    try {
        return Lattice(std::move(gen));
    } catch (const error& e) {
        if (e.code() == errc::numerically_singular)
            throw error(errc::reduced_rank, "child lattice for subset " + subset_label(subset) +
                                                " is rank deficient");
        throw;
    }
}

struct SubsetReport {
    std::vector<int> subset; // sorted, 1-based
    Matrix gram;             // k x k Gram of the child lattice
    double det;
    double shortest_sq; // 0 for a rank-deficient child
    double beta;        // (rho_S / rho_V)^k; 0 for a rank-deficient child
    double density;     // Delta(Lambda_S); 0 for a rank-deficient child
};

struct CodeReport {
    std::vector<SubsetReport> per_subset; // lexicographic subset order
    double beta_min;
    double beta_geo; // geometric mean of beta over subsets
    double rho_min;
    double mother_shortest_sq;
    double mother_det;
    double mother_density;
};

// Per-subset packing metrics over all C(n,k) erasure patterns. A rank
// deficient child is reported with beta = 0 (that pattern is undecodable),
// never thrown.
inline CodeReport code_report(const ErasureCode& code) {
    CodeReport rep;
    const Matrix mother_gram = code.mother.generator.gram();
    rep.mother_det = det(mother_gram);
    rep.mother_shortest_sq = shortest_vector_of_gram(mother_gram).squared_length;
    const double rho_v = std::sqrt(rep.mother_shortest_sq) / 2.0;
    rep.mother_density =
        unit_ball_volume(code.k) * std::pow(rho_v, code.k) / std::sqrt(rep.mother_det);

    double log_beta_sum = 0.0;
    bool any_degenerate = false;
    rep.beta_min = 0.0;
    rep.rho_min = 0.0;
    bool first = true;

    for (const auto& subset : k_subsets(code.n, code.k)) {
        SubsetReport sr;
        sr.subset = subset;
        const Matrix gen = code.phi.select_rows(subset) * code.mother.generator;
        sr.gram = gen.gram();
        sr.det = det(sr.gram);
        if (sr.det > kRankTolerance) {
            sr.shortest_sq = shortest_vector_of_gram(sr.gram).squared_length;
            const double rho_s = std::sqrt(sr.shortest_sq) / 2.0;
            sr.beta = std::pow(sr.shortest_sq / rep.mother_shortest_sq, code.k / 2.0);
            sr.density =
                unit_ball_volume(code.k) * std::pow(rho_s, code.k) / std::sqrt(sr.det);
            log_beta_sum += std::log(sr.beta);
        } else {
            sr.det = std::max(sr.det, 0.0);
            sr.shortest_sq = 0.0;
            sr.beta = 0.0;
            sr.density = 0.0;
            any_degenerate = true;
        }
        const double rho_s = std::sqrt(sr.shortest_sq) / 2.0;
        if (first || sr.beta < rep.beta_min) rep.beta_min = sr.beta;
        if (first || rho_s < rep.rho_min) rep.rho_min = rho_s;
        first = false;
        rep.per_subset.push_back(std::move(sr));
    }

    rep.beta_geo = any_degenerate
                       ? 0.0
                       : std::exp(log_beta_sum / static_cast<double>(rep.per_subset.size()));
    return rep;
}

// Cauchy-Binet identity: sum over k-subsets of det(Lambda_S) equals
// det(Lambda_V) for any orthonormal phi. Returns the relative residual.
inline double verify_cauchy_binet(const ErasureCode& code) {
    double sum = 0.0;
    for (const auto& subset : k_subsets(code.n, code.k)) {
        const Matrix gen = code.phi.select_rows(subset) * code.mother.generator;
        sum += det(gen.gram());
    }
    const double mother_det = det(code.mother.generator.gram());
    return std::abs(sum - mother_det) / mother_det;
}

// Sum over k-subsets of Phi_S^t Phi_S equals C(n-1,k-1) * I. Returns the max
// entrywise residual.
inline double verify_phi_sum(const ErasureCode& code) {
    Matrix sum(code.k, code.k);
    for (const auto& subset : k_subsets(code.n, code.k))
        sum = sum + code.phi.select_rows(subset).gram();
    const double c = static_cast<double>(binomial(code.n - 1, code.k - 1));
    return max_abs_diff(sum, Matrix::identity(code.k) * c);
}

} // namespace latcode
