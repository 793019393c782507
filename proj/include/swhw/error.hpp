#pragma once

#include <stdexcept>
#include <string>

namespace swhw {

enum class ErrorKind {
    ZeroInput,
    FieldMismatch,
    CharacteristicClash,
    EvenResidueChar,
    NotInField,
    Degenerate,
    NotIsotropic,
    NotIndependent,
    NotSquarefree,
    DimensionMismatch,
    SplittingMismatch,
    BadValuation,
    ValidationFailed,
    MissingInput,
    ParityViolation,
    HodgeConditionViolated,
    InconsistentSynthesis,
    NotHomotopy,
    NotQuasiIso,
    NotSymmetricHomotopy,
    ParseError,
    InvalidArgument,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace swhw
