#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pcdn {

/// Exact rational number with a 64-bit numerator and positive denominator.
///
/// Always kept in lowest terms so equality is structural. Intermediate
/// products go through __int128; a result that no longer fits in 64 bits
/// throws std::overflow_error instead of wrapping.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
    Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return from_wide(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    friend bool operator==(const Rational& a, const Rational& b) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
        __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
        return lhs <=> rhs;
    }

    /// "7", "-3/4" or a plain decimal such as "2.25" (converted exactly).
    static Rational parse(std::string_view text) {
        auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
        if (text.empty()) fail();
        auto parse_int = [&](std::string_view s) -> std::int64_t {
            if (s.empty()) fail();
            std::size_t pos = 0;
            bool neg = false;
            if (s[0] == '-' || s[0] == '+') {
                neg = s[0] == '-';
                pos = 1;
            }
            if (pos == s.size()) fail();
            __int128 v = 0;
            for (; pos < s.size(); ++pos) {
                if (s[pos] < '0' || s[pos] > '9') fail();
                v = v * 10 + (s[pos] - '0');
                if (v > INT64_MAX) throw std::overflow_error("rational literal out of range");
            }
            return static_cast<std::int64_t>(neg ? -v : v);
        };
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            std::int64_t d = parse_int(text.substr(slash + 1));
            if (d == 0) fail();
            return Rational(parse_int(text.substr(0, slash)), d);
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string_view whole = text.substr(0, dot);
            std::string_view frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 17) fail();
            bool neg = !whole.empty() && whole[0] == '-';
            std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
            std::int64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
            std::int64_t f = parse_int(frac);
            if (f < 0) fail();
            Rational r = Rational(w < 0 ? -w : w) + Rational(f, scale);
            return neg ? -r : r;
        }
        return Rational(parse_int(text));
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static Rational from_wide(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            n /= a;
            d /= a;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational arithmetic overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace pcdn
