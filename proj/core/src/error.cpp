#include "qseries/error.hpp"
#include "qseries/qexp.hpp"

namespace qseries {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::ScaleMismatch: return "ScaleMismatch";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::DenominatorNotExpandable: return "DenominatorNotExpandable";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::DivergentProduct: return "DivergentProduct";
    case ErrorKind::NonTruncatable: return "NonTruncatable";
    case ErrorKind::SpecializationHitsZero: return "SpecializationHitsZero";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::UnboundedTail: return "UnboundedTail";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Io: return "IoError";
    }
    return "Unknown";
}

QExp QExp::parse(const std::string& text) {
    try {
        std::size_t used = 0;
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            const std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return QExp(n);
        }
        const std::int64_t n = std::stoll(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument(text);
        const std::string rest = text.substr(slash + 1);
        const std::int64_t d = std::stoll(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        return QExp(n, d);
    } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidArgument, "cannot parse exponent '" + text + "'");
    }
}

} // namespace qseries
