#include "liftsched/rational.hpp"

#include "liftsched/errors.hpp"

namespace liftsched {

Rat rat_parse(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw Error("cannot parse rational: '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Int rat_ceil(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rat lower_factorial(const Rat& a, unsigned long b) {
    Rat result = 1;
    Rat term = a;
    for (unsigned long i = 0; i < b; ++i) {
        result *= term;
        term -= 1;
    }
    return result;
}

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

} // namespace liftsched
