#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <string>

namespace gbik {

// Exact rational scalar. mpq keeps the canonical form we rely on:
// gcd(num, den) == 1, den > 0, zero == 0/1.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat rat_from_string(const std::string& s);      // "-3/4", "15", "0.125" (exact decimal)
std::string rat_to_string(const Rat& r);        // canonical "n" or "n/d"

// Snap a floating-point value onto the grid k / den (den defaults to 1e9).
Rat snap_to_grid(double v, std::int64_t den = 1000000000LL);

Rat rat_pow(const Rat& base, int e);            // e >= 0
Rat rat_abs(const Rat& r);

}  // namespace gbik
