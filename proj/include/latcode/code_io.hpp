#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "latcode/erasure_code.hpp"
#include "latcode/error.hpp"
#include "latcode/matrix.hpp"

namespace latcode {

// File tolerance is looser than the in-memory invariant because code files
// carry decimal-rounded entries; anything in (1e-9, 1e-6] is repaired by QR.
inline constexpr double kFileOrthoTolerance = 1e-6;

struct CodeFile {
    ErasureCode code;
    std::optional<std::string> name;
};

inline nlohmann::json code_to_json(const ErasureCode& code,
                                   const std::optional<std::string>& name = std::nullopt) {
    nlohmann::json j;
    j["n"] = code.n;
    j["k"] = code.k;
    j["phi"] = code.phi.data();
    j["v"] = code.mother.generator.data();
    if (name) j["name"] = *name;
    return j;
}

inline CodeFile code_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw error(errc::bad_code_file, "document is not an object");
    for (const char* field : {"n", "k", "phi", "v"})
        if (!j.contains(field))
            throw error(errc::bad_code_file, std::string("missing field '") + field + "'");

    int n, k;
    std::vector<double> phi_entries, v_entries;
    try {
        n = j.at("n").get<int>();
        k = j.at("k").get<int>();
        phi_entries = j.at("phi").get<std::vector<double>>();
        v_entries = j.at("v").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_code_file, std::string("malformed field: ") + e.what());
    }
    if (n < 1 || k < 1 || k > n)
        throw error(errc::bad_code_file, "violated invariant: 1 <= k <= n");
    if (phi_entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(k))
        throw error(errc::bad_code_file, "violated invariant: phi must hold n*k entries");
    if (v_entries.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(k))
        throw error(errc::bad_code_file, "violated invariant: v must hold k*k entries");

    Matrix phi(static_cast<std::size_t>(n), static_cast<std::size_t>(k), std::move(phi_entries));
    const double res = orthonormality_residual(phi);
    if (res > kFileOrthoTolerance)
        throw error(errc::bad_code_file,
                    "violated invariant: phi columns not orthonormal (residual " +
                        std::to_string(res) + " > 1e-6)");
    if (res > kOrthoTolerance) phi = qr_thin(phi).q; // repair rounded entries

    Matrix v(static_cast<std::size_t>(k), static_cast<std::size_t>(k), std::move(v_entries));
    if (!(det(v.gram()) > kRankTolerance))
        throw error(errc::bad_code_file, "violated invariant: mother generator is rank deficient");

    CodeFile out{ErasureCode(std::move(phi), Lattice(std::move(v))), std::nullopt};
    if (j.contains("name") && j.at("name").is_string())
        out.name = j.at("name").get<std::string>();
    return out;
}

inline CodeFile load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::bad_code_file, "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_code_file, std::string("parse failure: ") + e.what());
    }
    return code_from_json(j);
}

inline void save_code_file(const std::string& path, const ErasureCode& code,
                           const std::optional<std::string>& name = std::nullopt) {
    std::ofstream out(path);
    if (!out) throw error(errc::bad_code_file, "cannot write '" + path + "'");
    out << code_to_json(code, name).dump(2) << "\n";
}

} // namespace latcode
