#include "gbik/rat.hpp"

#include <cmath>
#include <stdexcept>

namespace gbik {

namespace {

// GMP string constructors treat a leading zero as octal; force base 10.
Int int_base10(const std::string& digits, bool neg) {
    std::size_t i = 0;
    while (i + 1 < digits.size() && digits[i] == '0') ++i;
    Int v(digits.substr(i));
    return neg ? Int(-v) : v;
}

// sign? digits ('.' digits)?  ->  (integer, pow10 of fractional part)
std::pair<Int, Int> parse_decimal(const std::string& t, std::size_t& i, const std::string& full) {
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
        neg = (t[i] == '-');
        ++i;
    }
    std::string digits;
    std::size_t frac_len = 0;
    bool seen_dot = false;
    for (; i < t.size(); ++i) {
        char c = t[i];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("rat_from_string: bad decimal " + full);
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        digits.push_back(c);
        if (seen_dot) ++frac_len;
    }
    if (digits.empty()) throw std::invalid_argument("rat_from_string: no digits in " + full);
    Int den = 1;
    for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
    return {int_base10(digits, neg), den};
}

}  // namespace

Rat rat_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    if (t.empty()) throw std::invalid_argument("rat_from_string: empty input");

    std::size_t i = 0;
    auto [num, nden] = parse_decimal(t, i, s);
    Rat r = Rat(num) / Rat(nden);
    if (i < t.size()) {
        if (t[i] != '/') throw std::invalid_argument("rat_from_string: bad character in " + s);
        ++i;
        auto [dnum, dden] = parse_decimal(t, i, s);
        if (i != t.size()) throw std::invalid_argument("rat_from_string: bad character in " + s);
        if (dnum == 0) throw std::invalid_argument("rat_from_string: zero denominator in " + s);
        r = r * Rat(dden) / Rat(dnum);
    }
    return r;
}

std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat snap_to_grid(double v, std::int64_t den) {
    if (!std::isfinite(v)) throw std::invalid_argument("snap_to_grid: non-finite value");
    if (den <= 0) throw std::invalid_argument("snap_to_grid: denominator must be positive");
    double scaled = v * static_cast<double>(den);
    if (std::fabs(scaled) >= 9.2e18)
        throw std::invalid_argument("snap_to_grid: value out of range");
    auto k = static_cast<std::int64_t>(std::llround(scaled));
    return Rat(Int(k), Int(den));
}

Rat rat_pow(const Rat& base, int e) {
    if (e < 0) throw std::invalid_argument("rat_pow: negative exponent");
    Rat acc = 1;
    Rat b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace gbik
