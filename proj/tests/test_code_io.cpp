#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "latcode/code_io.hpp"
#include "latcode/constructions.hpp"

using namespace latcode;

TEST_CASE("json round trip preserves entries") {
    const ErasureCode code = builtin("4-2-z2").code;
    const nlohmann::json j = code_to_json(code, "roundtrip");
    const CodeFile loaded = code_from_json(nlohmann::json::parse(j.dump()));
    CHECK(loaded.name == std::optional<std::string>("roundtrip"));
    CHECK(max_abs_diff(loaded.code.phi, code.phi) == 0.0);
    CHECK(max_abs_diff(loaded.code.mother.generator, code.mother.generator) == 0.0);
}

TEST_CASE("file round trip through disk") {
    const std::string path = "roundtrip_code.json";
    const ErasureCode code = builtin("4-3-bcc").code;
    save_code_file(path, code, "bcc");
    const CodeFile loaded = load_code_file(path);
    CHECK(loaded.name == std::optional<std::string>("bcc"));
    CHECK(max_abs_diff(loaded.code.phi, code.phi) == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("decimal-rounded phi is repaired by QR") {
    const ErasureCode code = builtin("4-2-z2").code;
    nlohmann::json j = code_to_json(code);
    auto phi = j["phi"].get<std::vector<double>>();
    for (double& v : phi) v = std::round(v * 1e7) / 1e7;
    j["phi"] = phi;

    Matrix rounded(4, 2, phi);
    const double res = orthonormality_residual(rounded);
    REQUIRE(res > 1e-9);
    REQUIRE(res <= 1e-6);

    const CodeFile loaded = code_from_json(j);
    CHECK(orthonormality_residual(loaded.code.phi) <= 1e-9);
    CHECK(max_abs_diff(loaded.code.phi, code.phi) < 1e-5);
}

TEST_CASE("invalid documents are rejected with the violated invariant named") {
    const auto expect_failure = [](nlohmann::json j, const char* needle) {
        try {
            code_from_json(j);
            FAIL_CHECK("expected rejection: " << needle);
        } catch (const error& e) {
            CHECK(e.code() == errc::bad_code_file);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    nlohmann::json good = code_to_json(builtin("4-2-z2").code);

    nlohmann::json j = good;
    j.erase("phi");
    expect_failure(j, "phi");

    j = good;
    auto phi = j["phi"].get<std::vector<double>>();
    phi[0] += 0.2; // far beyond the file tolerance
    j["phi"] = phi;
    expect_failure(j, "orthonormal");

    j = good;
    phi = j["phi"].get<std::vector<double>>();
    phi.pop_back();
    j["phi"] = phi;
    expect_failure(j, "n*k");

    j = good;
    j["k"] = 5;
    expect_failure(j, "k <= n");

    j = good;
    j["v"] = std::vector<double>{1, 1, 1, 1};
    expect_failure(j, "rank deficient");
}
