#include <doctest.h>

#include <cmath>

#include "latcode/lattice.hpp"
#include "latcode/search.hpp"
#include "oracles.hpp"

using namespace latcode;

namespace {

const double kPi = 3.14159265358979323846;

Matrix fcc_generator() { return Matrix(3, 3, {-1, 1, 0, -1, -1, -1, 0, 0, 1}); }
Matrix bcc_generator() { return Matrix(3, 3, {1, -1, 1, -1, 1, 1, -1, -1, 1}); }

} // namespace

TEST_CASE("gram of paper generators") {
    CHECK(max_abs_diff(gram(Lattice(Matrix::identity(2))), Matrix::identity(2)) == 0.0);

    const Matrix g_fcc = gram(Lattice(fcc_generator()));
    CHECK(max_abs_diff(g_fcc, Matrix(3, 3, {2, 0, 1, 0, 2, 1, 1, 1, 2})) < 1e-12);

    const Matrix g_bcc = gram(Lattice(bcc_generator()));
    CHECK(max_abs_diff(g_bcc, Matrix(3, 3, {3, -1, -1, -1, 3, -1, -1, -1, 3})) < 1e-12);
}

TEST_CASE("determinants") {
    for (int k : {1, 2, 3, 4})
        CHECK(determinant(Lattice(Matrix::identity(static_cast<std::size_t>(k)))) ==
              doctest::Approx(1.0).epsilon(1e-12));
    CHECK(determinant(Lattice(fcc_generator())) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(Lattice(Matrix(2, 2, {1, 1, 1, 1})), error);
}

TEST_CASE("shortest vector on paper lattices") {
    CHECK(shortest_vector(Lattice(Matrix::identity(3))).squared_length ==
          doctest::Approx(1.0).epsilon(1e-12));

    const Lattice fcc(fcc_generator());
    const double fcc_short = shortest_vector(fcc).squared_length;
    CHECK(fcc_short == doctest::Approx(oracle::brute_shortest_sq(gram(fcc), 4)).epsilon(1e-12));
    CHECK(fcc_short == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(shortest_vector(Lattice(bcc_generator())).squared_length ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("shortest vector result invariants") {
    RngStream rng(2024, {7});
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_below(4));
        const Matrix gen = oracle::random_generator(k, rng);
        const Lattice lat(gen);
        const auto res = shortest_vector(lat);

        bool nonzero = false;
        for (long long v : res.coeffs)
            if (v != 0) nonzero = true;
        CHECK(nonzero);
        for (long long v : res.coeffs) {
            if (v == 0) continue;
            CHECK(v > 0); // first nonzero coefficient positive
            break;
        }
        const double q = oracle::quad_form(gram(lat), res.coeffs);
        CHECK(std::abs(q - res.squared_length) <= 1e-9 * std::max(1.0, q));
    }
}

TEST_CASE("enumeration matches brute force on random lattices") {
    RngStream rng(511, {0});
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_below(4));
        const Matrix gen = oracle::random_generator(k, rng);
        const double expected = oracle::brute_shortest_sq(gen.gram(), 5);
        const double got = shortest_vector(Lattice(gen)).squared_length;
        CHECK(std::abs(got - expected) <= 1e-9 * expected);
    }
}

TEST_CASE("packing radius") {
    CHECK(packing_radius(Lattice(Matrix::identity(2))) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(packing_radius(Lattice(bcc_generator())) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    // (4,2) child with Gram (1/3) I: generator (1/sqrt(3)) I
    const double a = 1.0 / std::sqrt(3.0);
    CHECK(packing_radius(Lattice(Matrix(2, 2, {a, 0, 0, a}))) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("unit ball volume") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(unit_ball_volume(2) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(unit_ball_volume(0), error);
}

TEST_CASE("packing density") {
    CHECK(packing_density(Lattice(Matrix::identity(2))) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(packing_density(Lattice(fcc_generator())) ==
          doctest::Approx(kPi / std::sqrt(18.0)).epsilon(1e-12));
    const double d = 9.0 / 4.0 - 1.0 / std::sqrt(2.0);
    CHECK(packing_density(Lattice(bcc_generator())) ==
          doctest::Approx(kPi * std::sqrt(3.0) / 8.0).epsilon(1e-12));
    CHECK(kPi * std::pow(d, 1.5) / 12.0 == doctest::Approx(0.5017).epsilon(1e-3));
}

TEST_CASE("scaling covariance") {
    RngStream rng(88, {1});
    for (double c : {0.5, 3.0}) {
        for (int k : {1, 2, 3}) {
            const Matrix gen = oracle::random_generator(k, rng);
            const Lattice lat(gen);
            const Lattice scaled(gen * c);
            CHECK(packing_radius(scaled) ==
                  doctest::Approx(c * packing_radius(lat)).epsilon(1e-9));
            CHECK(determinant(scaled) ==
                  doctest::Approx(std::pow(c, 2 * k) * determinant(lat)).epsilon(1e-9));
        }
    }
}

TEST_CASE("density is rotation invariant") {
    RngStream rng(99, {3});
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2 + static_cast<int>(rng.uniform_below(2));
        const Matrix gen = oracle::random_generator(k, rng);
        const Matrix rot = random_stiefel(k, k, rng);
        const double before = packing_density(Lattice(gen));
        const double after = packing_density(Lattice(rot * gen));
        CHECK(std::abs(before - after) < 1e-9);
    }
}

TEST_CASE("closest vector examples") {
    // tie at 0.5 resolves to the lexicographically smaller coefficient
    const Lattice z1(Matrix::identity(1));
    CHECK(closest_vector(z1, {0.5}) == std::vector<long long>{0});

    const Lattice z2(Matrix::identity(2));
    CHECK(closest_vector(z2, {0.6, -0.4}) == std::vector<long long>({1, 0}));
    CHECK(closest_vector(z2, {0.6, -0.4}) == oracle::brute_closest(z2.generator, {0.6, -0.4}, 3));

    // exact lattice point comes back unchanged
    RngStream rng(5, {0});
    const Matrix gen = oracle::random_generator(3, rng);
    const std::vector<long long> u0 = {2, -1, 3};
    std::vector<double> target = gen.times({2.0, -1.0, 3.0});
    CHECK(closest_vector(Lattice(gen), target) == u0);
}

TEST_CASE("closest vector matches brute force on random instances") {
    RngStream rng(512, {0});
    for (int trial = 0; trial < 60; ++trial) {
        const int k = 1 + static_cast<int>(rng.uniform_below(3));
        const Matrix gen = oracle::random_generator(k, rng);
        std::vector<double> target(static_cast<std::size_t>(k));
        for (double& t : target) t = rng.uniform(-3.0, 3.0);
        CHECK(closest_vector(Lattice(gen), target) == oracle::brute_closest(gen, target, 5));
    }
}

TEST_CASE("closest vector translation equivariance") {
    RngStream rng(513, {0});
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 2;
        const Matrix gen = oracle::random_generator(k, rng);
        const Lattice lat(gen);
        std::vector<double> t = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const std::vector<long long> u0 = {1, -2};
        const std::vector<double> shift = gen.times({1.0, -2.0});
        std::vector<double> t_shifted = {t[0] + shift[0], t[1] + shift[1]};

        auto base = closest_vector(lat, t);
        auto moved = closest_vector(lat, t_shifted);
        CHECK(moved == std::vector<long long>({base[0] + u0[0], base[1] + u0[1]}));
    }
}

TEST_CASE("rank limits") {
    Matrix big = Matrix::identity(9);
    CHECK_THROWS_AS(shortest_vector(Lattice(big)), error);
    try {
        shortest_vector(Lattice(Matrix::identity(9)));
    } catch (const error& e) {
        CHECK(e.code() == errc::dimension_too_large);
    }
}
