#pragma once

// Exact rationals over 64-bit integers.
//
// Values are always stored in lowest terms with a positive denominator, so
// structural equality is value equality. Intermediate products are formed in
// 128 bits and narrowed with an overflow check.

#include <abelian/errors.hpp>

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

namespace abelian {

using integer = std::int64_t;

namespace detail {

using wide = __int128;

inline integer narrow(wide v)
{
    if (v > static_cast<wide>(INT64_MAX) || v < static_cast<wide>(INT64_MIN)) {
        throw overflow_error("integer overflow in exact arithmetic");
    }
    return static_cast<integer>(v);
}

inline wide wide_gcd(wide a, wide b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

/// Floor division (rounds toward negative infinity).
constexpr integer floor_div(integer a, integer b)
{
    integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Non-negative remainder for b > 0.
constexpr integer mod_floor(integer a, integer b)
{
    integer r = a % b;
    return r < 0 ? r + b : r;
}

class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(integer value) : num_(value), den_(1) {} // NOLINT: implicit from integers is intended

    Rational(integer num, integer den) { assign(num, den); }

    static Rational from_wide(detail::wide num, detail::wide den)
    {
        if (den == 0) throw domain_error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        detail::wide g = detail::wide_gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        Rational r;
        r.num_ = detail::narrow(num);
        r.den_ = detail::narrow(den);
        return r;
    }

    constexpr integer numerator() const { return num_; }
    constexpr integer denominator() const { return den_; }

    constexpr bool is_integer() const { return den_ == 1; }
    constexpr bool is_zero() const { return num_ == 0; }

    integer floor() const { return floor_div(num_, den_); }

    /// Representative of this value modulo 1, in [0, 1).
    Rational frac() const { return Rational(mod_floor(num_, den_), den_); }

    explicit operator double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    double to_double() const { return static_cast<double>(*this); }

    Rational operator-() const { return from_wide(-static_cast<detail::wide>(num_), den_); }

    friend Rational operator+(const Rational& a, const Rational& b)
    {
        using detail::wide;
        return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b)
    {
        using detail::wide;
        return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        using detail::wide;
        if (b.num_ == 0) throw domain_error("division of rational by zero");
        return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend constexpr bool operator==(const Rational&, const Rational&) = default;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        using detail::wide;
        wide lhs = wide(a.num_) * b.den_;
        wide rhs = wide(b.num_) * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "a/b", or "a" when the denominator is 1. The sign sits on the numerator.
    std::string str() const
    {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a", "a/b" or "-a/b". Throws precondition_error on malformed text.
    static Rational parse(std::string_view text)
    {
        auto read = [&](std::string_view part) {
            integer v = 0;
            const char* first = part.data();
            const char* last = part.data() + part.size();
            if (first != last && *first == '+') ++first;
            auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || first == last) {
                throw precondition_error("malformed rational: '" + std::string(text) + "'");
            }
            return v;
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return Rational(read(text));
        integer den = read(text.substr(slash + 1));
        if (den == 0) throw precondition_error("rational with zero denominator: '" + std::string(text) + "'");
        return Rational(read(text.substr(0, slash)), den);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    void assign(integer num, integer den)
    {
        *this = from_wide(num, den);
    }

    integer num_ = 0;
    integer den_ = 1;
};

/// Result of the extended Euclidean algorithm: x*a + y*b == g, g >= 0.
struct BezoutResult {
    integer x;
    integer y;
    integer g;
};

inline BezoutResult extended_gcd(integer a, integer b)
{
    integer old_r = a, r = b;
    integer old_x = 1, x = 0;
    integer old_y = 0, y = 1;
    while (r != 0) {
        integer q = old_r / r;
        integer t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_x - q * x;
        old_x = x;
        x = t;
        t = old_y - q * y;
        old_y = y;
        y = t;
    }
    if (old_r < 0) return {-old_x, -old_y, -old_r};
    return {old_x, old_y, old_r};
}

inline integer gcd(integer a, integer b) { return std::gcd(a, b); }

} // namespace abelian
