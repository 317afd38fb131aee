#pragma once

#include <stdexcept>
#include <string>

namespace latcode {

enum class errc {
    numerically_singular,
    dimension_too_large,
    reduced_rank,
    bad_subset,
    bad_dims,
    bad_params,
    unknown_name,
    unknown_dimension,
    unsupported_rank,
    bad_code_file,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::numerically_singular: return "NUMERICALLY_SINGULAR";
        case errc::dimension_too_large:  return "DIMENSION_TOO_LARGE";
        case errc::reduced_rank:         return "REDUCED_RANK";
        case errc::bad_subset:           return "BAD_SUBSET";
        case errc::bad_dims:             return "BAD_DIMS";
        case errc::bad_params:           return "BAD_PARAMS";
        case errc::unknown_name:         return "UNKNOWN_NAME";
        case errc::unknown_dimension:    return "UNKNOWN_DIMENSION";
        case errc::unsupported_rank:     return "UNSUPPORTED_RANK";
        case errc::bad_code_file:        return "BAD_CODE_FILE";
    }
    return "UNKNOWN";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what_arg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what_arg), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

} // namespace latcode
