#pragma once

#include <stdexcept>
#include <string>

namespace adelab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ADELAB_ERROR_TYPE(Name)                                        \
    struct Name : Error {                                              \
        explicit Name(const std::string& what = #Name) : Error(what) {} \
    }

ADELAB_ERROR_TYPE(DenominatorNotUnit);
ADELAB_ERROR_TYPE(DivisionByZeroPoly);
ADELAB_ERROR_TYPE(ZeroLeadingCoefficient);
ADELAB_ERROR_TYPE(SingularPoint);
ADELAB_ERROR_TYPE(PreconditionFailed);
ADELAB_ERROR_TYPE(EmptyScan);
ADELAB_ERROR_TYPE(NotOnCurve);
ADELAB_ERROR_TYPE(SingularBranch);
ADELAB_ERROR_TYPE(CertificateViolation);
ADELAB_ERROR_TYPE(UnknownName);
ADELAB_ERROR_TYPE(NotIdempotent);
ADELAB_ERROR_TYPE(BadLinearPart);
ADELAB_ERROR_TYPE(InsufficientPrecision);
ADELAB_ERROR_TYPE(SingularStep);
ADELAB_ERROR_TYPE(BadCharacteristic);
ADELAB_ERROR_TYPE(SingularCurve);
ADELAB_ERROR_TYPE(NotIntegralK);
ADELAB_ERROR_TYPE(BetaOutOfRange);
ADELAB_ERROR_TYPE(NewtonDivergence);
ADELAB_ERROR_TYPE(UnknownTable);
ADELAB_ERROR_TYPE(InvalidArgument);

#undef ADELAB_ERROR_TYPE

} // namespace adelab
