#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace samplim {

// Arbitrary-precision signed integer: sign flag plus little-endian 32-bit
// limbs. Schoolbook multiplication and shift-subtract division; operands in
// this project stay within a few hundred bits, so asymptotics do not matter,
// exactness does.
class BigInt {
  public:
    BigInt() = default;  // zero
    BigInt(std::int64_t v);
    static BigInt from_uint64(std::uint64_t v);
    static BigInt from_string(std::string_view text);  // optional '-', decimal digits

    std::string to_string() const;

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
    int sign() const { return limbs_.empty() ? 0 : (negative_ ? -1 : 1); }
    std::size_t bit_length() const;

    BigInt operator-() const;
    BigInt abs() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);

    // Truncated toward zero: a == q*b + r with |r| < |b| and sign(r) == sign(a).
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b);
    BigInt operator/(const BigInt& o) const { return divmod(*this, o).first; }
    BigInt operator%(const BigInt& o) const { return divmod(*this, o).second; }

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative, gcd(0,0) == 0

    BigInt shifted_left(std::size_t bits) const;

    std::strong_ordering operator<=>(const BigInt& o) const;
    bool operator==(const BigInt& o) const = default;

    // Value ~= mantissa * 2^exponent with |mantissa| in [0.5, 1); {0,0} for zero.
    std::pair<double, long> to_double_exp() const;
    double to_double() const;
    std::uint64_t to_uint64() const;  // throws DomainError unless 0 <= v < 2^64

  private:
    void trim();
    bool get_bit(std::size_t i) const;
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);

    bool negative_ = false;                // false for zero
    std::vector<std::uint32_t> limbs_;     // little-endian, no trailing zero limbs
};

}  // namespace samplim
