#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace arcflow {

// Exact non-negative rational on 128/64-bit integers. Used for the item
// ordering key (sum of normalized weights) and for dual values in pricing,
// where floating point would make tie behavior platform-dependent.
struct Rational {
    unsigned __int128 num = 0;
    std::uint64_t den = 1;
    bool negative = false;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) {
        if (d == 0) throw std::invalid_argument("rational: zero denominator");
        negative = (n < 0) != (d < 0) && n != 0;
        num = n < 0 ? static_cast<unsigned __int128>(-(n + 1)) + 1 : static_cast<unsigned __int128>(n);
        den = d < 0 ? static_cast<std::uint64_t>(-(d + 1)) + 1 : static_cast<std::uint64_t>(d);
        reduce();
    }

    void reduce() {
        if (num == 0) {
            den = 1;
            negative = false;
            return;
        }
        std::uint64_t g = gcd_u128_u64(num, den);
        num /= g;
        den /= g;
    }

    static std::uint64_t gcd_u128_u64(unsigned __int128 a, std::uint64_t b) {
        // gcd(a, b) with b != 0 fits in 64 bits.
        std::uint64_t r = static_cast<std::uint64_t>(a % b);
        return r == 0 ? b : std::gcd(b, r);
    }

    // a/b + c/d over a common denominator, exact; throws on overflow.
    Rational& add_fraction(std::int64_t n, std::int64_t d) {
        Rational other(n, d);
        unsigned __int128 l = static_cast<unsigned __int128>(den) * other.den;
        if (l > UINT64_MAX) throw std::overflow_error("rational: denominator overflow");
        unsigned __int128 a = num * (static_cast<std::uint64_t>(l) / den);
        unsigned __int128 b = other.num * (static_cast<std::uint64_t>(l) / other.den);
        if (negative == other.negative) {
            num = a + b;
        } else if (a >= b) {
            num = a - b;
        } else {
            num = b - a;
            negative = other.negative;
        }
        den = static_cast<std::uint64_t>(l);
        reduce();
        return *this;
    }

    // strict total order via cross-multiplication; |num| <= ~2^70 keeps the
    // products inside 128 bits for any instance the parser accepts
    int compare(const Rational& o) const {
        if (negative != o.negative) {
            if (num == 0 && o.num == 0) return 0;
            return negative ? -1 : 1;
        }
        unsigned __int128 a = num * o.den;
        unsigned __int128 b = o.num * den;
        int c = a < b ? -1 : (a > b ? 1 : 0);
        return negative ? -c : c;
    }

    bool operator<(const Rational& o) const { return compare(o) < 0; }
    bool operator==(const Rational& o) const { return compare(o) == 0; }
    bool operator!=(const Rational& o) const { return compare(o) != 0; }

    double to_double() const {
        double v = static_cast<double>(num) / static_cast<double>(den);
        return negative ? -v : v;
    }

    // Exact decimal rendering; valid whenever den divides a power of ten
    // (always true for values parsed from decimal text).
    std::string to_decimal_string() const;

    // Parses an optionally signed decimal literal ("2", "-0.75") exactly.
    static Rational from_decimal_string(const std::string& text);
};

} // namespace arcflow
