#pragma once

#include <stdexcept>
#include <string>

namespace anticyc {

// Base class for all typed domain errors.  `code()` is the stable machine
// readable name that ends up in CLI error reports; `what()` carries the
// human readable context (offending indices, values, ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define ANTICYC_DEFINE_ERROR(NAME)                                      \
    class NAME : public DomainError {                                   \
    public:                                                             \
        explicit NAME(const std::string& msg)                           \
            : DomainError(#NAME, msg) {}                                \
    }

// quadfield
ANTICYC_DEFINE_ERROR(BoundExceeded);
ANTICYC_DEFINE_ERROR(NonSplitPrime);
ANTICYC_DEFINE_ERROR(NonIntegralResult);
ANTICYC_DEFINE_ERROR(ConductorMismatch);
ANTICYC_DEFINE_ERROR(NotProperIdeal);

// heckechar
ANTICYC_DEFINE_ERROR(NoSolution);
ANTICYC_DEFINE_ERROR(ClassNumberUnsupported);
ANTICYC_DEFINE_ERROR(NotPrimitive);
ANTICYC_DEFINE_ERROR(ConductorGap);
ANTICYC_DEFINE_ERROR(BadCharacterSpec);

// qexp
ANTICYC_DEFINE_ERROR(SchemaError);
ANTICYC_DEFINE_ERROR(MultiplicativityError);
ANTICYC_DEFINE_ERROR(RecursionError);
ANTICYC_DEFINE_ERROR(InternalMismatch);
ANTICYC_DEFINE_ERROR(VanishingSplitCoefficient);
ANTICYC_DEFINE_ERROR(TruncationExceeded);

// padic_measure
ANTICYC_DEFINE_ERROR(PrecisionExhausted);
ANTICYC_DEFINE_ERROR(DivisionNotExact);
ANTICYC_DEFINE_ERROR(CyclotomicLevelTooSmall);
ANTICYC_DEFINE_ERROR(CoefficientNotIntegral);
ANTICYC_DEFINE_ERROR(NotDepleted);
ANTICYC_DEFINE_ERROR(RingMismatch);

// nearly_holo
ANTICYC_DEFINE_ERROR(PrecisionLoss);
ANTICYC_DEFINE_ERROR(IncompleteRepresentatives);

// lvalues
ANTICYC_DEFINE_ERROR(SlowConvergence);
ANTICYC_DEFINE_ERROR(DivisionByZero);

#undef ANTICYC_DEFINE_ERROR

} // namespace anticyc
