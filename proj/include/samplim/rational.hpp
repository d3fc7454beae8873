#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "samplim/bigint.hpp"

namespace samplim {

// Exact rational number. Always normalized: gcd(|num|, den) == 1, den > 0,
// sign carried by the numerator. Serializes as "p/q" ("p" when q == 1).
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t num, std::int64_t den);
    Rational(BigInt num, BigInt den);

    static Rational from_string(std::string_view text);
    std::string to_string() const;

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    Rational pow(std::uint64_t e) const;

    std::strong_ordering operator<=>(const Rational& o) const;
    bool operator==(const Rational& o) const = default;

    double to_double() const;

  private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

}  // namespace samplim
