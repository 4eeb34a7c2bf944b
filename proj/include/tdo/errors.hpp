#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tdo {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable identifier (the CLI prints `kind: message`).
class error : public std::runtime_error {
public:
    error(std::string_view kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define TDO_DEFINE_ERROR(Name)                                             \
    class Name : public error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : error(#Name, what) {}     \
    }

TDO_DEFINE_ERROR(DomainError);
TDO_DEFINE_ERROR(ParameterError);
TDO_DEFINE_ERROR(NonRealSigma);
TDO_DEFINE_ERROR(ConstraintViolation);
TDO_DEFINE_ERROR(SingularityApproached);
TDO_DEFINE_ERROR(UnknownCase);
TDO_DEFINE_ERROR(UnitsError);
TDO_DEFINE_ERROR(CriterionViolated);
TDO_DEFINE_ERROR(NonPositiveAlpha);
TDO_DEFINE_ERROR(ConvergenceWarning);
TDO_DEFINE_ERROR(FormatError);
TDO_DEFINE_ERROR(StepSizeUnderflow);

#undef TDO_DEFINE_ERROR

} // namespace tdo
