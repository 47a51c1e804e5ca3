#ifndef ORBITCENSUS_RATIONAL_HPP
#define ORBITCENSUS_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "orbitcensus/errors.hpp"

namespace orbitcensus {

// Exact rational arithmetic is backed by GMP. mpq_class keeps values in
// lowest terms with a positive denominator, which is exactly the invariant
// the rest of the code relies on.
using Rat = mpq_class;

struct RatPoint {
    Rat x, y;
};

inline Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

// Exact conversion: every finite binary64 value is a dyadic rational.
inline Rat rat_from_double(double v) { return Rat(v); }

inline double rat_to_double(const Rat& a) { return a.get_d(); }

// 2^e for possibly negative e.
inline Rat rat_pow2(long e) {
    Rat r(1);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-e));
    }
    return r;
}

// Largest e with 2^e <= a (requires a > 0).
inline long rat_floor_log2(const Rat& a) {
    if (a <= 0) throw input_error("rat_floor_log2: nonpositive argument");
    long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
    // sizeinbase over/undershoots by one; fix up exactly.
    while (rat_pow2(e) > a) --e;
    while (rat_pow2(e + 1) <= a) ++e;
    return e;
}

// Largest power of two <= a.
inline Rat rat_pow2_floor(const Rat& a) { return rat_pow2(rat_floor_log2(a)); }

inline Rat rat_floor(const Rat& a) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return Rat(q);
}

inline Rat rat_ceil(const Rat& a) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    return Rat(q);
}

inline long rat_to_long(const Rat& a) {
    if (a.get_den() != 1) throw input_error("rat_to_long: not an integer");
    if (!a.get_num().fits_slong_p()) throw input_error("rat_to_long: out of range");
    return a.get_num().get_si();
}

// Nearest multiple of step (ties toward +inf); step > 0.
inline Rat rat_round_to_step(const Rat& a, const Rat& step) {
    return rat_floor(a / step + Rat(1, 2)) * step;
}

// gcd of two nonnegative rationals: largest g with a, b integer multiples.
inline Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a == 0) return b;
    if (b == 0) return a;
    mpz_class num, den;
    mpz_gcd(num.get_mpz_t(), Rat(a * b.get_den() * a.get_den()).get_num_mpz_t(),
            Rat(b * a.get_den() * b.get_den()).get_num_mpz_t());
    den = a.get_den() * b.get_den();
    Rat g(num, den);
    g.canonicalize();
    return g;
}

// Canonical "num/den" serialization (bit-exact round trip).
inline std::string rat_to_string(const Rat& a) {
    return a.get_num().get_str() + "/" + a.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
        throw input_error("cannot parse rational: " + s);
    if (r.get_den() == 0) throw input_error("zero denominator: " + s);
    r.canonicalize();
    return r;
}

// Rational upper bound of e^x for x >= 0, via partial Taylor sums with an
// explicit remainder bound. Intended for moderate x (certified Euler math).
inline Rat exp_upper(const Rat& x) {
    if (x < 0) throw input_error("exp_upper: negative argument");
    if (x > 800) throw certified_mode_infeasible("exp_upper: exponent too large");
    // Split x = n + f with 0 <= f < 1; e <= E_UP; e^f <= sum + remainder.
    Rat n = rat_floor(x);
    Rat f = x - n;
    const Rat E_UP(2718281828459046L, 1000000000000000L);
    Rat en(1);
    for (long i = 0; i < rat_to_long(n); ++i) en *= E_UP;
    Rat sum(0), term(1);
    for (int i = 1; i <= 13; ++i) {
        sum += term;
        term *= f;
        term /= i;
    }
    // Remainder of the tail, crude geometric bound: term * 14/13.
    sum += term * Rat(14, 13);
    return en * sum;
}

}  // namespace orbitcensus

#endif
