#include "cgg/rational.hpp"

#include "cgg/errors.hpp"

#include <cctype>

namespace cgg {

std::string format_rational(const Rational& r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string trimmed(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return text.substr(begin, end - begin);
}

[[noreturn]] void bad_literal(const std::string& text) {
    throw Error(ErrorCode::ParseError, "invalid rational literal '" + text + "'");
}

} // namespace

Rational parse_rational(const std::string& text) {
    const std::string s = trimmed(text);
    if (s.empty()) bad_literal(text);

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = (s[pos] == '-');
        ++pos;
    }
    const std::string body = s.substr(pos);
    if (body.empty()) bad_literal(text);

    Rational magnitude;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        const std::string num = body.substr(0, slash);
        const std::string den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad_literal(text);
        const BigInt d(den);
        if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
        magnitude = Rational(BigInt(num), d);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        const std::string whole = body.substr(0, dot);
        const std::string frac = body.substr(dot + 1);
        // Require digits on both sides, so ".5" and "5." are rejected.
        if (!all_digits(whole) || !all_digits(frac)) bad_literal(text);
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        magnitude = Rational(BigInt(whole) * scale + BigInt(frac), scale);
    } else {
        if (!all_digits(body)) bad_literal(text);
        magnitude = Rational(BigInt(body));
    }
    return negative ? Rational(-magnitude) : magnitude;
}

Rational rational_abs(const Rational& r) {
    return r < 0 ? Rational(-r) : r;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Uncovered: return "Uncovered";
        case ErrorCode::UnboundedGrain: return "UnboundedGrain";
        case ErrorCode::Incomparable: return "Incomparable";
        case ErrorCode::OverlappingGrains: return "OverlappingGrains";
        case ErrorCode::EmptyInterval: return "EmptyInterval";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::IgnorePreprocessing: return "IgnorePreprocessing";
        case ErrorCode::AmbiguousSelection: return "AmbiguousSelection";
        case ErrorCode::MultipleBaseEquilibria: return "MultipleBaseEquilibria";
        case ErrorCode::InvalidDiscount: return "InvalidDiscount";
        case ErrorCode::DegenerateRoles: return "DegenerateRoles";
        case ErrorCode::RoleLabelMissing: return "RoleLabelMissing";
        case ErrorCode::InvalidBounds: return "InvalidBounds";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "UnknownError";
}

} // namespace cgg
