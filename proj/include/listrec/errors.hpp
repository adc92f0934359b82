#pragma once

#include <stdexcept>
#include <string>

namespace listrec {

// Error categories, mirrored one-to-one by the C API status codes.
enum class errc {
    invalid_argument = 1,
    division_by_zero,
    invalid_modulus,
    irreducible_search_failed,
    dimension_mismatch,
    degree_too_high,
    under_determined,
    not_closed,
    closure_violation,
    regime_violation,
    agreement_too_low,
    table_too_large,
    config_invalid,
    io_error,
};

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

// Overload for literals: nothing is constructed unless the check fails.
inline void require(bool ok, errc code, const char* what) {
    if (!ok) [[unlikely]] fail(code, std::string(what));
}

}  // namespace listrec
