#ifndef LIFTSCHED_RATIONAL_HPP
#define LIFTSCHED_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace liftsched {

// All arithmetic in the verification paths is exact; Rat is an
// arbitrary-precision rational in canonical form (denominator > 0, reduced).
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p" and "p/q" forms.
Rat rat_parse(const std::string& text);

std::string rat_str(const Rat& r);

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

// Floor of a rational as an arbitrary-precision integer.
Int rat_floor(const Rat& r);
Int rat_ceil(const Rat& r);

// (a)_b = a (a-1) ... (a-b+1), with (a)_0 = 1.
Rat lower_factorial(const Rat& a, unsigned long b);

Int int_pow(const Int& base, unsigned long e);
Int binomial(unsigned long n, unsigned long k);
Int factorial(unsigned long n);

} // namespace liftsched

#endif
