#ifndef ORBITCENSUS_INTERVAL_HPP
#define ORBITCENSUS_INTERVAL_HPP

#include <vector>

#include "orbitcensus/rational.hpp"

namespace orbitcensus {

// Closed interval with exact rational endpoints. No outward rounding is ever
// needed: every arithmetic operation below is exact.
struct RatInterval {
    Rat lo, hi;

    RatInterval() : lo(0), hi(0) {}
    RatInterval(Rat v) : lo(v), hi(std::move(v)) {}
    RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat mag() const { return rat_max(rat_abs(lo), rat_abs(hi)); }
    // Smallest |v| over the interval.
    Rat mig() const { return contains_zero() ? Rat(0) : rat_min(rat_abs(lo), rat_abs(hi)); }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}
inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}
inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {rat_min(rat_min(p1, p2), rat_min(p3, p4)),
            rat_max(rat_max(p1, p2), rat_max(p3, p4))};
}

inline RatInterval operator*(const Rat& c, const RatInterval& a) {
    return c >= 0 ? RatInterval{c * a.lo, c * a.hi} : RatInterval{c * a.hi, c * a.lo};
}

// Reciprocal; requires 0 not in the interval.
inline RatInterval rat_interval_inv(const RatInterval& a) {
    if (a.contains_zero()) throw input_error("interval reciprocal across zero");
    return {1 / a.hi, 1 / a.lo};
}

inline RatInterval rat_interval_hull(const RatInterval& a, const RatInterval& b) {
    return {rat_min(a.lo, b.lo), rat_max(a.hi, b.hi)};
}

inline bool rat_interval_subset(const RatInterval& inner, const RatInterval& outer) {
    return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

// x^n by repeated squaring with the even-power tightening |x|^n.
inline RatInterval rat_interval_pow(const RatInterval& a, unsigned n) {
    if (n == 0) return RatInterval(Rat(1));
    if (n % 2 == 0) {
        Rat m = a.mag(), g = a.mig();
        Rat mh(1), ml(1);
        for (unsigned i = 0; i < n; ++i) {
            mh *= m;
            ml *= g;
        }
        return {ml, mh};
    }
    RatInterval r = a;
    for (unsigned i = 1; i < n; ++i) r = r * a;
    return r;
}

// Rational enclosure of sqrt(v) for v >= 0, width <= 2^-prec_bits.
inline RatInterval rat_sqrt_enclosure(const Rat& v, long prec_bits) {
    if (v < 0) throw input_error("rat_sqrt_enclosure: negative argument");
    if (v == 0) return RatInterval(Rat(0));
    // Scale so that the integer sqrt carries enough bits.
    mpz_class num = v.get_num(), den = v.get_den();
    long extra = 2 * prec_bits + 16;
    mpz_class scaled = (num << extra) / den;  // floor((v) * 2^extra)
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());  // floor(sqrt(scaled))
    Rat lo(root, mpz_class(1) << (extra / 2));
    lo.canonicalize();
    Rat hi((root + 1), mpz_class(1) << (extra / 2));
    hi.canonicalize();
    // lo^2 <= scaled/2^extra <= v and (root+1)^2 > scaled >= v*2^extra - 1.
    // Nudge hi upward to be safe against the floor in `scaled`.
    hi += rat_pow2(-prec_bits - 4);
    return {lo, hi};
}

// --- univariate rational polynomials (dense) --------------------------------

struct RatPoly1 {
    std::vector<Rat> c;  // c[i] * t^i

    int degree() const { return static_cast<int>(c.size()) - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

inline RatPoly1 poly1_add(const RatPoly1& a, const RatPoly1& b) {
    RatPoly1 r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

inline RatPoly1 poly1_mul(const RatPoly1& a, const RatPoly1& b) {
    RatPoly1 r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.resize(a.c.size() + b.c.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

inline RatPoly1 poly1_scale(const RatPoly1& a, const Rat& s) {
    RatPoly1 r = a;
    for (Rat& v : r.c) v *= s;
    r.trim();
    return r;
}

inline Rat poly1_eval(const RatPoly1& a, const Rat& t) {
    Rat acc(0);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = acc * t + a.c[i];
    return acc;
}

// Interval Horner evaluation over t in [I.lo, I.hi].
inline RatInterval poly1_eval(const RatPoly1& a, const RatInterval& t) {
    RatInterval acc(Rat(0));
    for (std::size_t i = a.c.size(); i-- > 0;) acc = acc * t + RatInterval(a.c[i]);
    return acc;
}

}  // namespace orbitcensus

#endif
