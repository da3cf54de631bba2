#pragma once

#include <stdexcept>
#include <string>

namespace eppm {

enum class errc {
    bad_params,
    not_prime,
    wrong_residue_class,
    not_twin_primes,
    parse_error,
    verification_failed,
    too_large,
    bad_length,
    index_out_of_range,
    scheme_mismatch,
    non_positive,
    not_bracketed,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace eppm
