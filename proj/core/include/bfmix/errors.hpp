#ifndef BFMIX_ERRORS_HPP
#define BFMIX_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bfmix {

enum class ErrorKind {
    division_by_zero,
    field_extension_unsupported,
    insufficient_order,
    degenerate_invariants,
    near_pole,
    invalid_parameter,
    no_separatrix,
    singularity_encountered,
    irregular_singularity,
    log_in_basis,
    missing_prerequisite,
    out_of_scope,
    assumption_violated,
    invalid_action,
    contour_unreliable,
    usage,
    verification_failed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Inputs the user can fix map to exit code 2, the rest to 3.
bool is_input_error(ErrorKind kind);

}

#endif
