#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lao {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator; every operation is exact (no rounding anywhere).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(long long n) : v_(static_cast<BigInt>(n)) {}
    Rational(const BigInt& n) : v_(n) {}

    Rational(BigInt num, BigInt den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        v_ = BigRat(num, den);  // canonicalized by the backend
    }

    Rational(long long num, long long den)
        : Rational(BigInt(num), BigInt(den)) {}

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    /// Largest integer <= value.
    BigInt floor() const {
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;  // truncates toward zero
        if (n % d != 0 && n < 0) --q;
        return q;
    }

    /// Smallest integer >= value.
    BigInt ceil() const {
        BigInt n = numerator(), d = denominator();
        BigInt q = n / d;
        if (n % d != 0 && n > 0) ++q;
        return q;
    }

    double to_double() const { return v_.convert_to<double>(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.v_ == 0) throw std::domain_error("Rational: division by zero");
        return Rational(a.v_ / b.v_);
    }
    friend Rational operator-(const Rational& a) { return Rational(-a.v_); }

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) {
        if (b.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= b.v_;
        return *this;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// Exact integer power. Negative exponents invert (base must be nonzero).
    static Rational pow(const Rational& base, long long e) {
        if (e == 0) return Rational(1);
        if (e < 0) {
            if (base.is_zero()) throw std::domain_error("Rational: 0 to a negative power");
            return pow(Rational(1) / base, -e);
        }
        BigInt n = boost::multiprecision::pow(base.numerator(), static_cast<unsigned>(e));
        BigInt d = boost::multiprecision::pow(base.denominator(), static_cast<unsigned>(e));
        Rational r;
        r.v_ = BigRat(n, d);  // n/d already in lowest terms
        return r;
    }

    /// Compact form: "num" when integral, else "num/den".
    std::string str() const {
        if (is_integer()) return numerator().str();
        return numerator().str() + "/" + denominator().str();
    }

    /// Always "num/den", even for integers ("3/1").
    std::string fraction_str() const {
        return numerator().str() + "/" + denominator().str();
    }

    /// Plain decimal with at most `sig` significant digits (round half up),
    /// trailing zeros trimmed: 1/2 -> "0.5", 3 -> "3".
    std::string decimal_str(int sig = 12) const;

    /// Accepts "num/den" (den a positive integer) or a terminating decimal
    /// ("3", "-1.25", ".5"). Anything else yields nullopt.
    static std::optional<Rational> parse(std::string_view s);

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
        return os << q.str();
    }

private:
    explicit Rational(BigRat v) : v_(std::move(v)) {}
    BigRat v_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// 10^e as a BigInt (e >= 0).
inline BigInt pow10(int e) {
    return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(e));
}

inline std::string Rational::decimal_str(int sig) const {
    if (sig < 1) throw std::invalid_argument("decimal_str: sig must be positive");
    if (is_zero()) return "0";
    Rational a = lao::abs(*this);
    BigInt ipart = a.floor();
    int frac_digits;
    if (ipart > 0) {
        int int_digits = static_cast<int>(ipart.str().size());
        frac_digits = sig > int_digits ? sig - int_digits : 0;
    } else {
        // count leading zeros after the decimal point
        int zeros = 0;
        Rational t = a;
        while (t * 10 < 1) {
            t *= 10;
            ++zeros;
            if (zeros > 10000) throw std::overflow_error("decimal_str: value too small");
        }
        frac_digits = zeros + sig;
    }
    // round half up at frac_digits places
    Rational scaled = a * Rational(pow10(frac_digits)) + Rational(1, 2);
    BigInt m = scaled.floor();
    std::string digits = m.str();
    if (static_cast<int>(digits.size()) <= frac_digits)
        digits.insert(0, frac_digits + 1 - digits.size(), '0');
    std::string ip = digits.substr(0, digits.size() - frac_digits);
    std::string fp = digits.substr(digits.size() - frac_digits);
    while (!fp.empty() && fp.back() == '0') fp.pop_back();
    std::string out = (sign() < 0 ? "-" : "") + ip;
    if (!fp.empty()) out += "." + fp;
    return out;
}

inline std::optional<Rational> Rational::parse(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i >= s.size()) return std::nullopt;
    auto all_digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    // strip leading zeros so the bignum constructor cannot read "0..." as octal
    auto from_digits = [](std::string_view t) {
        std::size_t nz = t.find_first_not_of('0');
        if (nz == std::string_view::npos) return BigInt(0);
        return BigInt{std::string(t.substr(nz))};
    };
    std::string_view body = s.substr(i);
    std::size_t slash = body.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        BigInt d = from_digits(den);
        if (d == 0) return std::nullopt;
        BigInt n = from_digits(num);
        if (neg) n = -n;
        return Rational(n, d);
    }
    std::size_t dot = body.find('.');
    if (dot == std::string_view::npos) {
        if (!all_digits(body)) return std::nullopt;
        BigInt n = from_digits(body);
        if (neg) n = -n;
        return Rational(n);
    }
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (!all_digits(fp)) return std::nullopt;        // require digits after '.'
    if (!ip.empty() && !all_digits(ip)) return std::nullopt;
    BigInt n = from_digits(std::string(ip) + std::string(fp));
    if (neg) n = -n;
    return Rational(n, pow10(static_cast<int>(fp.size())));
}

}  // namespace lao
