#ifndef AMPQED_ERRORS_HPP
#define AMPQED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ampqed {

/// Base class for all engine errors. Each subtype carries a stable,
/// machine-readable reason code that is propagated into reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define AMPQED_DEFINE_ERROR(NAME)                                             \
    class NAME : public Error {                                               \
    public:                                                                   \
        explicit NAME(const std::string& message) : Error(#NAME, message) {}  \
    }

AMPQED_DEFINE_ERROR(NotReciprocal);
AMPQED_DEFINE_ERROR(NotHermitian);
AMPQED_DEFINE_ERROR(NonPositiveSpectrum);
AMPQED_DEFINE_ERROR(ZeroEigenvalue);
AMPQED_DEFINE_ERROR(GridMismatch);
AMPQED_DEFINE_ERROR(GridTooCoarse);
AMPQED_DEFINE_ERROR(SingularOperator);
AMPQED_DEFINE_ERROR(AnalyticityViolation);
AMPQED_DEFINE_ERROR(ConfigError);
AMPQED_DEFINE_ERROR(IoError);

#undef AMPQED_DEFINE_ERROR

} // namespace ampqed

#endif
