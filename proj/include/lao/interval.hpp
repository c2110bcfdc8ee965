#pragma once

#include <lao/rational.hpp>

#include <stdexcept>
#include <utility>

namespace lao {

/// Round down to a multiple of 10^-digits.
inline Rational round_down(const Rational& q, int digits) {
    BigInt scale = pow10(digits);
    return Rational((q * Rational(scale)).floor(), scale);
}

/// Round up to a multiple of 10^-digits.
inline Rational round_up(const Rational& q, int digits) {
    BigInt scale = pow10(digits);
    return Rational((q * Rational(scale)).ceil(), scale);
}

/// A closed rational interval [lo, hi] enclosing an exact real value.
/// All operations round outward only; an enclosure never loses its target.
struct Interval {
    Rational lo, hi;

    Interval() = default;
    Interval(Rational point) : lo(point), hi(std::move(point)) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (hi < lo) throw std::logic_error("Interval: lo > hi");
    }

    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

inline Interval operator+(const Interval& a, const Interval& b) {
    return Interval(a.lo + b.lo, a.hi + b.hi);
}

inline Interval operator-(const Interval& a, const Interval& b) {
    return Interval(a.lo - b.hi, a.hi - b.lo);
}

inline Interval operator-(const Interval& a) { return Interval(-a.hi, -a.lo); }

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return Interval(min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4)));
}

inline Interval operator*(const Rational& s, const Interval& a) { return Interval(s) * a; }

/// 1/[lo, hi]; the interval must not contain zero.
inline Interval reciprocal(const Interval& a) {
    if (a.lo <= 0 && a.hi >= 0)
        throw std::domain_error("reciprocal: interval contains zero");
    return Interval(Rational(1) / a.hi, Rational(1) / a.lo);
}

inline Interval operator/(const Interval& a, const Interval& b) {
    return a * reciprocal(b);
}

/// Compress endpoints outward to multiples of 10^-digits, bounding the
/// size of numerators and denominators carried through long computations.
inline Interval round_out(const Interval& a, int digits) {
    return Interval(round_down(a.lo, digits), round_up(a.hi, digits));
}

namespace detail {

/// atanh(z) for rational |z| <= 1/2, via its odd power series with a
/// geometric tail bound. Terms are rounded outward each step so the
/// working rationals stay near `digits` precision.
inline Interval atanh_interval(const Rational& z, int digits) {
    if (z < 0) {
        Interval pos = atanh_interval(-z, digits);
        return Interval(-pos.hi, -pos.lo);
    }
    if (z.is_zero()) return Interval(Rational(0));
    if (z > Rational(1, 2)) throw std::invalid_argument("atanh_interval: |z| must be <= 1/2");
    const int wd = digits + 6;
    const Rational tiny(BigInt(1), pow10(wd));
    Interval zz = round_out(Interval(z * z), wd);
    Interval zpow(z);
    Interval sum(Rational(0));
    long long j = 0;
    while (true) {
        Interval term(zpow.lo / Rational(2 * j + 1), zpow.hi / Rational(2 * j + 1));
        sum = round_out(sum + term, wd);
        zpow = round_out(zpow * zz, wd);
        ++j;
        if (zpow.hi / Rational(2 * j + 1) < tiny) break;
        if (j > 100000) throw std::logic_error("atanh_interval: series failed to converge");
    }
    // remaining tail: sum_{i>=j} z^(2i+1)/(2i+1) <= zpow.hi / ((2j+1)(1-z^2))
    Rational tail = zpow.hi / (Rational(2 * j + 1) * (Rational(1) - zz.hi));
    sum.hi += tail;
    return sum;
}

inline Interval ln2_interval(int digits) {
    // ln 2 = 2 atanh(1/3)
    Interval a = atanh_interval(Rational(1, 3), digits + 2);
    return round_out(Interval(a.lo + a.lo, a.hi + a.hi), digits);
}

}  // namespace detail

namespace detail {

/// Taylor enclosure of e^r for rational r in [0, 1/2], working at 10^-wd.
inline Interval exp_series(const Rational& r, int wd) {
    const Rational tiny(BigInt(1), pow10(wd));
    Interval term(Rational(1));
    Interval sum(Rational(1));
    long long j = 1;
    while (true) {
        term = round_out(Interval(term.lo * r / Rational(j), term.hi * r / Rational(j)), wd);
        sum = round_out(sum + term, wd);
        if (term.hi <= tiny) break;  // outward rounding never drops below one ulp
        ++j;
        if (j > 100000) throw std::logic_error("exp_series: failed to converge");
    }
    // remaining tail <= term.hi * (r/(j+1)) / (1 - r/(j+2)) <= term.hi for r <= 1/2
    sum.hi += term.hi;
    return sum;
}

}  // namespace detail

/// Enclosure of e^x of width <= 10^-digits, for any rational x.
inline Interval exp_interval(const Rational& x, int digits) {
    if (x.is_zero()) return Interval(Rational(1));
    if (x < 0) {
        // e^x = 1/e^-x; the result is below 1, so reciprocation tightens
        Interval pos = exp_interval(-x, digits + 2);
        Interval out = round_out(reciprocal(pos), digits + 1);
        if (out.width() > Rational(BigInt(1), pow10(digits)))
            throw std::logic_error("exp_interval: enclosure too wide");
        return out;
    }
    // Halve into the series range once, then square back up exactly.
    int halvings = 0;
    Rational reduced = x;
    while (reduced > Rational(1, 2)) {
        reduced /= 2;
        ++halvings;
        if (halvings > 64) throw std::invalid_argument("exp_interval: argument too large");
    }
    // Working precision absorbs the squared magnitude: e^x < 3^ceil(x).
    long long xc = x.ceil().convert_to<long long>();
    BigInt mag_bound = boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(xc));
    int magnitude = static_cast<int>(mag_bound.str().size());
    Interval sum = detail::exp_series(reduced, digits + 6 + halvings + magnitude);
    for (int i = 0; i < halvings; ++i) sum = sum * sum;  // exact endpoints
    Interval out = round_out(sum, digits + 1);
    if (out.width() > Rational(BigInt(1), pow10(digits)))
        throw std::logic_error("exp_interval: enclosure too wide");
    return out;
}

/// Enclosure of ln(y) of width <= 10^-digits, for rational y > 0.
inline Interval ln_interval(const Rational& y, int digits) {
    if (y <= 0) throw std::invalid_argument("ln_interval: argument must be positive");
    const int wd = digits + 4;
    Rational reduced = y;
    long long m = 0;  // ln y = ln reduced + m ln 2
    while (reduced > Rational(3, 2)) {
        reduced /= 2;
        ++m;
    }
    while (reduced < Rational(3, 4)) {
        reduced *= 2;
        --m;
    }
    Rational z = (reduced - 1) / (reduced + 1);  // in (-1/7, 1/5]
    Interval a = detail::atanh_interval(z, wd);
    Interval result(a.lo + a.lo, a.hi + a.hi);
    if (m != 0) {
        Interval l2 = detail::ln2_interval(wd);
        result = result + Rational(m) * l2;
    }
    Interval out = round_out(result, digits + 1);
    if (out.width() > Rational(BigInt(1), pow10(digits)))
        throw std::logic_error("ln_interval: enclosure too wide");
    return out;
}

/// Enclosure of base^expo for rational base > 0. Exact (width zero) when
/// the exponent is an integer; otherwise via exp(expo * ln(base)).
inline Interval pow_interval(const Rational& base, const Rational& expo, int digits) {
    if (base <= 0) throw std::invalid_argument("pow_interval: base must be positive");
    if (expo.is_integer()) {
        long long e = expo.numerator().convert_to<long long>();
        return Interval(Rational::pow(base, e));
    }
    Interval l = ln_interval(base, digits + 8);
    Interval p = round_out(expo * l, digits + 8);
    Interval lo_end = exp_interval(p.lo, digits + 4);
    Interval hi_end = exp_interval(p.hi, digits + 4);
    return round_out(Interval(lo_end.lo, hi_end.hi), digits + 1);
}

}  // namespace lao
