#include "bfmix/errors.hpp"

namespace bfmix {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::division_by_zero: return "DivisionByZero";
    case ErrorKind::field_extension_unsupported: return "FieldExtensionUnsupported";
    case ErrorKind::insufficient_order: return "InsufficientOrder";
    case ErrorKind::degenerate_invariants: return "DegenerateInvariants";
    case ErrorKind::near_pole: return "NearPole";
    case ErrorKind::invalid_parameter: return "InvalidParameter";
    case ErrorKind::no_separatrix: return "NoSeparatrix";
    case ErrorKind::singularity_encountered: return "SingularityEncountered";
    case ErrorKind::irregular_singularity: return "IrregularSingularity";
    case ErrorKind::log_in_basis: return "LogInBasis";
    case ErrorKind::missing_prerequisite: return "MissingPrerequisite";
    case ErrorKind::out_of_scope: return "OutOfScope";
    case ErrorKind::assumption_violated: return "AssumptionViolated";
    case ErrorKind::invalid_action: return "InvalidAction";
    case ErrorKind::contour_unreliable: return "ContourUnreliable";
    case ErrorKind::usage: return "UsageError";
    case ErrorKind::verification_failed: return "VerificationFailed";
    }
    return "Unknown";
}

bool is_input_error(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_parameter:
    case ErrorKind::degenerate_invariants:
    case ErrorKind::no_separatrix:
    case ErrorKind::out_of_scope:
    case ErrorKind::assumption_violated:
    case ErrorKind::invalid_action:
    case ErrorKind::usage:
    case ErrorKind::field_extension_unsupported:
        return true;
    default:
        return false;
    }
}

}
