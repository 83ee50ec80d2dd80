#include "arcflow/rational.hpp"

#include <cctype>

namespace arcflow {

std::string Rational::to_decimal_string() const {
    unsigned __int128 n = num;
    std::uint64_t d = den;
    // Scale the denominator to a power of ten: den = 2^a * 5^b after reduce().
    int twos = 0, fives = 0;
    std::uint64_t rest = d;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) throw std::domain_error("rational has no finite decimal form");
    int digits = twos > fives ? twos : fives;
    for (int i = fives; i < twos; ++i) n *= 5;
    for (int i = twos; i < fives; ++i) n *= 2;
    // n / 10^digits
    std::string raw;
    if (n == 0) raw = "0";
    while (n > 0) {
        raw.insert(raw.begin(), static_cast<char>('0' + static_cast<int>(n % 10)));
        n /= 10;
    }
    while (static_cast<int>(raw.size()) <= digits) raw.insert(raw.begin(), '0');
    std::string out = negative && raw.find_first_not_of('0') != std::string::npos ? "-" : "";
    if (digits == 0) return out + raw;
    out += raw.substr(0, raw.size() - digits);
    std::string frac = raw.substr(raw.size() - digits);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
    return out;
}

Rational Rational::from_decimal_string(const std::string& text) {
    std::size_t pos = 0;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        neg = text[pos] == '-';
        ++pos;
    }
    unsigned __int128 n = 0;
    std::uint64_t d = 1;
    bool any_digit = false, seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("bad decimal: " + text);
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("bad decimal: " + text);
        any_digit = true;
        n = n * 10 + static_cast<unsigned>(c - '0');
        if (seen_point) {
            if (d > UINT64_MAX / 10) throw std::overflow_error("decimal too precise: " + text);
            d *= 10;
        }
        if (n > (static_cast<unsigned __int128>(1) << 100))
            throw std::overflow_error("decimal too large: " + text);
    }
    if (!any_digit) throw std::invalid_argument("bad decimal: " + text);
    Rational r;
    r.num = n;
    r.den = d;
    r.negative = neg && n != 0;
    r.reduce();
    return r;
}

} // namespace arcflow
