#include <lao/interval.hpp>

#include <catch_amalgamated.hpp>

using namespace lao;

namespace {

Rational q(const char* s) { return *Rational::parse(s); }

Rational width_limit(int digits) { return Rational(BigInt(1), pow10(digits)); }

// The enclosure must pass within `digits` decimal places of a reference
// literal (itself accurate to ~1e-16).
bool near(const Interval& enc, const char* literal, int digits) {
    Rational pad(BigInt(1), pow10(digits));
    Rational v = q(literal);
    return enc.intersects(Interval(v - pad, v + pad));
}

}  // namespace

TEST_CASE("directed rounding brackets the value at the requested grid") {
    Rational v(123456789, 97);
    for (int d : {0, 3, 9}) {
        Rational lo = round_down(v, d), hi = round_up(v, d);
        CHECK(lo <= v);
        CHECK(v <= hi);
        CHECK(hi - lo <= width_limit(d));
    }
    Rational neg(-7, 3);
    CHECK(round_down(neg, 2) == Rational(-234, 100));
    CHECK(round_up(neg, 2) == Rational(-233, 100));
    CHECK(round_down(Rational(1, 2), 3) == Rational(1, 2));
}

TEST_CASE("interval arithmetic rounds outward only") {
    Interval a(Rational(1, 3), Rational(1, 2));
    Interval b(Rational(-2), Rational(5));
    Interval prod = a * b;
    CHECK(prod.lo == Rational(-1));
    CHECK(prod.hi == Rational(5, 2));
    CHECK((a + b).lo == Rational(-5, 3));
    CHECK(reciprocal(Interval(Rational(1, 4), Rational(1, 2))).lo == Rational(2));
    CHECK_THROWS_AS(reciprocal(Interval(Rational(-1), Rational(1))), std::domain_error);
    CHECK_THROWS_AS(Interval(Rational(2), Rational(1)), std::logic_error);
}

TEST_CASE("exp enclosures hit known digits") {
    CHECK(exp_interval(Rational(0), 12).lo == Rational(1));

    Interval e1 = exp_interval(Rational(1), 14);
    CHECK(e1.width() <= width_limit(14));
    CHECK(near(e1, "2.718281828459045", 14));

    Interval em1 = exp_interval(Rational(-1), 14);
    CHECK(near(em1, "0.3678794411714423", 14));

    Interval eh = exp_interval(Rational(-1, 2), 12);
    CHECK(near(eh, "0.6065306597126334", 12));

    Interval big = exp_interval(Rational(3), 12);
    CHECK(near(big, "20.085536923187668", 12));
}

TEST_CASE("ln enclosures hit known digits") {
    CHECK(ln_interval(Rational(1), 12).contains(Rational(0)));

    Interval l2 = ln_interval(Rational(2), 14);
    CHECK(l2.width() <= width_limit(14));
    CHECK(near(l2, "0.6931471805599453", 14));

    Interval l10 = ln_interval(Rational(10), 12);
    CHECK(near(l10, "2.302585092994046", 12));

    Interval lhalf = ln_interval(Rational(1, 2), 12);
    CHECK(near(lhalf, "-0.6931471805599453", 12));

    CHECK_THROWS_AS(ln_interval(Rational(0), 12), std::invalid_argument);
    CHECK_THROWS_AS(ln_interval(Rational(-3), 12), std::invalid_argument);
}

TEST_CASE("exp and ln invert each other inside enclosures") {
    for (const char* s : {"1/3", "7/5", "9/4", "1/17"}) {
        Rational x = q(s);
        Interval lx = ln_interval(x, 16);
        Interval back_lo = exp_interval(lx.lo, 14);
        Interval back_hi = exp_interval(lx.hi, 14);
        CHECK(back_lo.lo <= x);
        CHECK(x <= back_hi.hi);
    }
}

TEST_CASE("pow enclosures: exact on integer exponents, tight on fractional") {
    Interval exact = pow_interval(Rational(3, 2), Rational(5), 12);
    CHECK(exact.lo == exact.hi);
    CHECK(exact.lo == Rational(243, 32));
    CHECK(pow_interval(Rational(7, 3), Rational(-2), 12).lo == Rational(9, 49));

    // sqrt(10/9) = 1.05409255338945978...
    Interval root = pow_interval(Rational(10, 9), Rational(1, 2), 12);
    CHECK(near(root, "1.0540925533894598", 12));
    CHECK(root.width() <= width_limit(11));

    // 2^(1/100) = 1.00695555005671880...
    Interval small = pow_interval(Rational(2), Rational(1, 100), 12);
    CHECK(near(small, "1.0069555500567188", 12));

    CHECK_THROWS_AS(pow_interval(Rational(-2), Rational(1, 2), 12), std::invalid_argument);
}

TEST_CASE("the classical randomized ski-rental constant via enclosures") {
    // e/(e-1) = 1/(1 - e^-1) = 1.58197670686932642...
    Interval em1 = exp_interval(Rational(-1), 14);
    Interval c = reciprocal(Interval(Rational(1)) - em1);
    CHECK(near(c, "1.5819767068693264", 13));
}
