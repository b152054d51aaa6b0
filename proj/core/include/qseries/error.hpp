#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qseries {

enum class ErrorKind {
    ScaleMismatch,
    NotAUnit,
    DenominatorNotExpandable,
    PoleAtOne,
    DivergentProduct,
    NonTruncatable,
    SpecializationHitsZero,
    InsufficientPrecision,
    UnboundedTail,
    Overflow,
    InvalidArgument,
    UnknownName,
    Schema,
    Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// that the harness can map it onto a report verdict.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace qseries
