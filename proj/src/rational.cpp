#include "circa/rational.hpp"

#include "circa/errors.hpp"

namespace circa {

namespace {

Int parse_int(const std::string& text, const std::string& whole) {
    if (text.empty()) {
        throw ParseError("malformed rational literal: " + whole);
    }
    try {
        return Int(text);
    } catch (const std::runtime_error&) {
        throw ParseError("malformed rational literal: " + whole);
    }
}

}  // namespace

Rational rat(const Int& num, const Int& den) {
    if (den == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    // Division of two canonical rationals canonicalizes the quotient.
    return Rational(num) / Rational(den);
}

Rational rat(long num, long den) { return rat(Int(num), Int(den)); }

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(parse_int(text, text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (den.find('/') != std::string::npos) {
        throw ParseError("malformed rational literal: " + text);
    }
    const Int d = parse_int(den, text);
    if (d == 0) {
        throw ParseError("zero denominator in rational literal: " + text);
    }
    return rat(parse_int(num, text), d);
}

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace circa
