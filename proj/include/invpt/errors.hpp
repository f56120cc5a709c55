#pragma once

#include <stdexcept>
#include <string>

namespace invpt {

// Every failure carries a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define INVPT_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& what) : Error(#Name, what) {}    \
    };

INVPT_DEFINE_ERROR(DegenerateInput)
INVPT_DEFINE_ERROR(SingularMap)
INVPT_DEFINE_ERROR(ZeroDirection)
INVPT_DEFINE_ERROR(DimensionMismatch)
INVPT_DEFINE_ERROR(NoConvergence)
INVPT_DEFINE_ERROR(ToleranceAmbiguity)
INVPT_DEFINE_ERROR(InteriorViolation)
INVPT_DEFINE_ERROR(ClassMismatch)
INVPT_DEFINE_ERROR(DegenerateBase)
INVPT_DEFINE_ERROR(ResampleExhausted)
INVPT_DEFINE_ERROR(InvalidSpec)
INVPT_DEFINE_ERROR(ParseError)

#undef INVPT_DEFINE_ERROR

class BudgetExhausted : public Error {
public:
    BudgetExhausted(const std::string& what, double best_residual)
        : Error("BudgetExhausted", what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace invpt
