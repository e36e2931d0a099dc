#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace modspace {

// Exact rational arithmetic on small numbers. All condition checks in the
// rule engine run through this type; no floating point on any verdict path.
struct Rational {
    long long num = 0;
    long long den = 1;

    constexpr Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw std::domain_error("rational: division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    // Comparisons cross-multiply in 128 bits: exact and gcd-free.
    friend bool operator==(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

inline Rational rational_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rational_max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational rational_abs(const Rational& a) { return a.num < 0 ? -a : a; }

// Parses "3", "-1/2", "4/3", "0.25", "1.5". Decimal strings convert exactly.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const long long n = std::stoll(text.substr(0, slash));
        const long long d = std::stoll(text.substr(slash + 1));
        return Rational(n, d);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string head = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 18) throw std::invalid_argument("rational: too many decimals");
        long long scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        long long whole = head.empty() || head == "-" || head == "+" ? 0 : std::stoll(head);
        const bool neg = !head.empty() && head[0] == '-';
        long long part = frac.empty() ? 0 : std::stoll(frac);
        if (neg) part = -part;
        return Rational(whole * scale + part, scale);
    }
    return Rational(std::stoll(text));
}

// An exponent p with 1 <= p <= infinity. The reciprocal convention 1/inf = 0
// is what every rule in the engine actually computes with.
class ExtendedExponent {
  public:
    ExtendedExponent() : finite_(false), value_(1) {}
    static ExtendedExponent infinity() { return ExtendedExponent(); }
    ExtendedExponent(Rational v) : finite_(true), value_(v) {
        if (v < Rational(1)) throw std::domain_error("exponent must satisfy p >= 1");
    }
    ExtendedExponent(long long v) : ExtendedExponent(Rational(v)) {}

    bool is_infinite() const { return !finite_; }
    bool is_finite() const { return finite_; }
    const Rational& value() const {
        if (!finite_) throw std::domain_error("exponent is infinite");
        return value_;
    }
    Rational reciprocal() const { return finite_ ? Rational(value_.den, value_.num) : Rational(0); }
    double to_double() const {
        return finite_ ? value_.to_double() : std::numeric_limits<double>::infinity();
    }

    friend bool operator==(const ExtendedExponent& a, const ExtendedExponent& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtendedExponent& a, const ExtendedExponent& b) { return !(a == b); }
    // Ordering by value; infinity compares greater than every finite exponent.
    friend bool operator<(const ExtendedExponent& a, const ExtendedExponent& b) {
        if (a.finite_ && b.finite_) return a.value_ < b.value_;
        return a.finite_ && !b.finite_;
    }
    friend bool operator>(const ExtendedExponent& a, const ExtendedExponent& b) { return b < a; }
    friend bool operator<=(const ExtendedExponent& a, const ExtendedExponent& b) { return !(b < a); }
    friend bool operator>=(const ExtendedExponent& a, const ExtendedExponent& b) { return !(a < b); }

    std::string str() const { return finite_ ? value_.str() : "inf"; }

  private:
    bool finite_;
    Rational value_;
};

inline ExtendedExponent parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
        return ExtendedExponent::infinity();
    }
    return ExtendedExponent(parse_rational(text));
}

}  // namespace modspace
