#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace urnlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Ball counts. 128 bits so that totals never need an overflow audit,
// even at horizons far beyond what the experiments use.
using Count = unsigned __int128;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt to_bigint(Count c) {
    return BigInt(c);
}

inline Rational rational_of(Count c) { return Rational(to_bigint(c)); }

inline double count_to_double(Count c) { return static_cast<double>(c); }

inline std::string count_to_string(Count c) {
    if (c == 0) return "0";
    std::string s;
    while (c > 0) {
        s.push_back(static_cast<char>('0' + static_cast<unsigned>(c % 10)));
        c /= 10;
    }
    return {s.rbegin(), s.rend()};
}

inline std::string rational_to_string(const Rational& r) {
    return r.str();
}

// Parses "p/q", integer, or decimal strings ("0.25", "2.5e-1") into an
// exact rational. Decimal text maps to digits/10^k, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

// C(n, k) for small k; n may be huge (totals grow with the horizon).
inline BigInt binomial(const BigInt& n, uint64_t k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (BigInt(k) > n) return 0;
    BigInt num = 1, den = 1;
    for (uint64_t i = 0; i < k; ++i) {
        num *= n - BigInt(i);
        den *= BigInt(i + 1);
    }
    return num / den;
}

}  // namespace urnlab
