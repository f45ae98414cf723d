#pragma once

#include <stdexcept>
#include <string>

namespace zerostrip {

// Exit-code-2 class: bad inputs, precondition violations, malformed configs.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exit-code-3 class: numerically detected failures during an otherwise valid run.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

#define ZEROSTRIP_VALIDATION_ERROR(Name)                                   \
    struct Name : ValidationError {                                       \
        explicit Name(const std::string& msg) : ValidationError(msg) {}   \
    }
#define ZEROSTRIP_NUMERICAL_ERROR(Name)                                   \
    struct Name : NumericalError {                                        \
        explicit Name(const std::string& msg) : NumericalError(msg) {}    \
    }

// characters
ZEROSTRIP_VALIDATION_ERROR(NonPrimitiveError);
ZEROSTRIP_VALIDATION_ERROR(CharacterLookupError);

// dseries
ZEROSTRIP_VALIDATION_ERROR(NonInvertibleError);
ZEROSTRIP_VALIDATION_ERROR(NoEulerProductError);
ZEROSTRIP_VALIDATION_ERROR(DomainError);

// strips
ZEROSTRIP_NUMERICAL_ERROR(SingularCoefficientMatrixError);
ZEROSTRIP_NUMERICAL_ERROR(EvaluationTooCloseError);
ZEROSTRIP_NUMERICAL_ERROR(PivotVanishesError);
ZEROSTRIP_NUMERICAL_ERROR(RankDeficientError);
ZEROSTRIP_NUMERICAL_ERROR(BetaNotFoundError);
ZEROSTRIP_NUMERICAL_ERROR(EpsilonZeroError);
ZEROSTRIP_NUMERICAL_ERROR(AllRootNumbersEqualError);
ZEROSTRIP_NUMERICAL_ERROR(DimensionCollapseError);

// scanner
ZEROSTRIP_NUMERICAL_ERROR(BoundaryTooCloseError);
ZEROSTRIP_NUMERICAL_ERROR(NoConvergenceError);
ZEROSTRIP_NUMERICAL_ERROR(DivergedError);
ZEROSTRIP_NUMERICAL_ERROR(NoZerosFoundError);

// convexity / torus
ZEROSTRIP_NUMERICAL_ERROR(DivergentTailError);
ZEROSTRIP_NUMERICAL_ERROR(DerivativeVanishesError);
ZEROSTRIP_VALIDATION_ERROR(DimensionTooLargeError);

#undef ZEROSTRIP_VALIDATION_ERROR
#undef ZEROSTRIP_NUMERICAL_ERROR

}  // namespace zerostrip
