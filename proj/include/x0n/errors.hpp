#ifndef X0N_ERRORS_HPP
#define X0N_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace x0n {

enum class ErrorKind {
    // usage
    InvalidArgument,
    ParseError,
    // series
    ZeroLeadingCoefficient,
    PrecisionExceeded,
    // relations
    NoRelationFound,
    AmbiguousRelation,
    NoExpressionFound,
    AmbiguousExpression,
    InconsistentPartial,
    BudgetExceeded,
    // moduli
    PointNotOnCurve,
    DenominatorVanishes,
    SingularCurve,
    PointAtInfinity,
    NotTwists,
    NotQuadraticTwist,
    UnknownCurve,
    // heegner
    UnsupportedLevel,
    PrecisionUnreachable,
    ReconstructionFailed,
    ImaginaryResidueTooLarge,
    // catalog
    UnknownLabel,
    NetworkUnavailable,
    SchemaMismatch,
    UnknownLevel,
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

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace x0n

#endif // X0N_ERRORS_HPP
