#include "urnlab/rational.hpp"

#include <cctype>

namespace urnlab {

namespace {

BigInt pow10(long e) {
    BigInt r = 1;
    for (long i = 0; i < e; ++i) r *= 10;
    return r;
}

// strict base-10 integer (optional sign); avoids cpp_int's base autodetection
BigInt decimal_bigint(std::string_view s) {
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i >= s.size()) throw std::invalid_argument("parse_rational: missing digits");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw std::invalid_argument("parse_rational: bad digit in integer part");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? -v : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string s(text);
    // strip surrounding whitespace
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("parse_rational: empty string");
    s = s.substr(b, e - b + 1);

    if (auto slash = s.find('/'); slash != std::string::npos) {
        BigInt num = decimal_bigint(std::string_view(s).substr(0, slash));
        BigInt den = decimal_bigint(std::string_view(s).substr(slash + 1));
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + s + "'");
        return Rational(num, den);
    }

    // decimal / scientific form
    bool neg = false;
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false, seen_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("parse_rational: bad number '" + s + "'");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_len;
        } else if (c == 'e' || c == 'E') {
            break;
        } else {
            throw std::invalid_argument("parse_rational: bad character in '" + s + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("parse_rational: no digits in '" + s + "'");
    long exp10 = 0;
    if (i < s.size()) {  // exponent part
        ++i;  // skip e/E
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw std::invalid_argument("parse_rational: bad exponent in '" + s + "'");
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                throw std::invalid_argument("parse_rational: bad exponent in '" + s + "'");
            exp10 = exp10 * 10 + (s[i] - '0');
            if (exp10 > 100000) throw std::invalid_argument("parse_rational: exponent too large");
        }
        if (eneg) exp10 = -exp10;
    }

    BigInt mant = digits.empty() ? BigInt(0) : decimal_bigint(digits);
    if (neg) mant = -mant;
    long shift = exp10 - frac_len;
    if (shift >= 0) return Rational(mant * pow10(shift), 1);
    return Rational(mant, pow10(-shift));
}

}  // namespace urnlab
