#include <doctest.h>

#include <cmath>
#include <cstring>

#include "latcode/constructions.hpp"
#include "latcode/erasure_code.hpp"
#include "latcode/search.hpp"
#include "oracles.hpp"

using namespace latcode;

namespace {

// Orthonormal frame whose {3,4} child collapses: rows e1, e2, 0, 0.
ErasureCode degenerate_code() {
    Matrix phi(4, 2, {1, 0, 0, 1, 0, 0, 0, 0});
    return ErasureCode(std::move(phi), Lattice(Matrix::identity(2)));
}

ErasureCode random_code(int n, int k, RngStream& rng) {
    Matrix phi = random_stiefel(n, k, rng);
    Matrix mother = oracle::random_generator(k, rng);
    return ErasureCode(std::move(phi), Lattice(std::move(mother)));
}

} // namespace

TEST_CASE("child lattices of the 4-2 construction") {
    const ErasureCode code = builtin("4-2-z2").code;
    const double a2 = 1.0 / 3.0;

    const Lattice first = child_lattice(code, {1, 2});
    CHECK(max_abs_diff(gram(first), Matrix(2, 2, {2 * a2, 0, 0, 2 * a2})) < 1e-12);

    const Lattice last = child_lattice(code, {3, 4});
    CHECK(max_abs_diff(gram(last), Matrix(2, 2, {a2, 0, 0, a2})) < 1e-12);
}

TEST_CASE("k = n identity code reproduces Z^k") {
    for (int k : {1, 2, 3}) {
        ErasureCode code(Matrix::identity(static_cast<std::size_t>(k)),
                         Lattice(Matrix::identity(static_cast<std::size_t>(k))));
        std::vector<int> all(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) all[static_cast<std::size_t>(i)] = i + 1;
        CHECK(max_abs_diff(gram(child_lattice(code, all)),
                           Matrix::identity(static_cast<std::size_t>(k))) < 1e-12);
    }
}

TEST_CASE("bad subsets are rejected") {
    const ErasureCode code = builtin("4-2-z2").code;
    CHECK_THROWS_AS(child_lattice(code, {1}), error);
    CHECK_THROWS_AS(child_lattice(code, {1, 5}), error);
    CHECK_THROWS_AS(child_lattice(code, {2, 1}), error);
    CHECK_THROWS_AS(child_lattice(code, {2, 2}), error);
    try {
        child_lattice(code, {1, 5});
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::bad_subset);
    }
}

TEST_CASE("rank-deficient child throws from child_lattice") {
    const ErasureCode code = degenerate_code();
    try {
        child_lattice(code, {3, 4});
        CHECK(false);
    } catch (const error& e) {
        CHECK(e.code() == errc::reduced_rank);
    }
}

TEST_CASE("code_report aggregates for the paper constructions") {
    const CodeReport r42 = code_report(builtin("4-2-z2").code);
    CHECK(r42.per_subset.size() == 6);
    CHECK(r42.beta_min == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r42.beta_geo == doctest::Approx(std::pow(2.0, 1.0 / 6.0) / 3.0).epsilon(1e-12));

    const CodeReport r41 = code_report(builtin("4-1").code);
    CHECK(r41.beta_min * r41.beta_min == doctest::Approx(0.25).epsilon(1e-12));

    const CodeReport rfcc = code_report(builtin("4-3-fcc").code);
    CHECK(std::pow(rfcc.beta_min, 2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subset report invariants") {
    for (const auto& name : builtin_names()) {
        const NamedConstruction nc = builtin(name);
        const CodeReport rep = code_report(nc.code);
        const double rho_v = std::sqrt(rep.mother_shortest_sq) / 2.0;
        CHECK(rep.per_subset.size() == binomial(nc.code.n, nc.code.k));
        for (const auto& sr : rep.per_subset) {
            const double rho_s = std::sqrt(sr.shortest_sq) / 2.0;
            CHECK(std::abs(sr.beta - std::pow(rho_s / rho_v, nc.code.k)) < 1e-9);
        }
    }
}

TEST_CASE("degenerate children are reported, not fatal") {
    const CodeReport rep = code_report(degenerate_code());
    CHECK(rep.beta_min == 0.0);
    CHECK(rep.beta_geo == 0.0);
    int degenerate = 0;
    for (const auto& sr : rep.per_subset)
        if (sr.beta == 0.0) {
            ++degenerate;
            CHECK(sr.shortest_sq == 0.0);
            CHECK(sr.density == 0.0);
        }
    CHECK(degenerate == 5); // only {1,2} survives for the e1,e2 frame
}

TEST_CASE("cauchy-binet identity") {
    CHECK(verify_cauchy_binet(builtin("4-2-z2").code) < 1e-8);
    CHECK(verify_cauchy_binet(builtin("4-3-cubic").code) < 1e-8);
    RngStream rng(314, {0});
    CHECK(verify_cauchy_binet(random_code(5, 2, rng)) < 1e-8);
}

TEST_CASE("phi-sum identity") {
    const ErasureCode c42 = builtin("4-2-z2").code;
    CHECK(verify_phi_sum(c42) < 1e-9);
    Matrix sum(2, 2);
    for (const auto& s : k_subsets(4, 2)) sum = sum + c42.phi.select_rows(s).gram();
    CHECK(max_abs_diff(sum, Matrix::identity(2) * 3.0) < 1e-9);

    CHECK(verify_phi_sum(builtin("4-3-cubic").code) < 1e-9);
    CHECK(verify_phi_sum(builtin("4-1").code) < 1e-9);
}

TEST_CASE("identity sweep over 100 random codes") {
    RngStream rng(2718, {0});
    int count = 0;
    while (count < 100) {
        for (int n = 3; n <= 5 && count < 100; ++n) {
            for (int k = 1; k <= n && count < 100; ++k) {
                const ErasureCode code = random_code(n, k, rng);
                ++count;

                CHECK(verify_cauchy_binet(code) < 1e-8);
                CHECK(verify_phi_sum(code) < 1e-9);

                const CodeReport rep = code_report(code);
                CHECK(std::pow(rep.beta_min, 2.0 / k) <= trace_bound(n, k) + 1e-9);

                double log_sum = 0.0;
                for (const auto& sr : rep.per_subset) log_sum += std::log(sr.density);
                const double child_geo =
                    std::exp(log_sum / static_cast<double>(rep.per_subset.size()));
                CHECK(rep.beta_geo <=
                      determinant_bound(rep.mother_density, child_geo, n, k) + 1e-9);
            }
        }
    }
}

TEST_CASE("code_report is bit-identical across runs") {
    const ErasureCode code = builtin("4-2-z2").code;
    const CodeReport a = code_report(code);
    const CodeReport b = code_report(code);
    REQUIRE(a.per_subset.size() == b.per_subset.size());
    CHECK(std::memcmp(&a.beta_min, &b.beta_min, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.beta_geo, &b.beta_geo, sizeof(double)) == 0);
    for (std::size_t i = 0; i < a.per_subset.size(); ++i) {
        CHECK(a.per_subset[i].subset == b.per_subset[i].subset);
        CHECK(std::memcmp(a.per_subset[i].gram.data().data(), b.per_subset[i].gram.data().data(),
                          a.per_subset[i].gram.data().size() * sizeof(double)) == 0);
        CHECK(std::memcmp(&a.per_subset[i].beta, &b.per_subset[i].beta, sizeof(double)) == 0);
    }
}

TEST_CASE("non-orthonormal phi is rejected") {
    Matrix phi(4, 2, {1, 0, 0.5, 1, 0, 0, 0, 0});
    CHECK_THROWS_AS(ErasureCode(std::move(phi), Lattice(Matrix::identity(2))), error);
}
