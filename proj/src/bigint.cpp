#include "samplim/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "samplim/errors.hpp"

namespace samplim {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    std::uint64_t mag;
    if (v < 0) {
        negative_ = true;
        mag = static_cast<std::uint64_t>(-(v + 1)) + 1;  // avoids INT64_MIN overflow
    } else {
        mag = static_cast<std::uint64_t>(v);
    }
    if (mag != 0) limbs_.push_back(static_cast<std::uint32_t>(mag));
    if (mag >> 32) limbs_.push_back(static_cast<std::uint32_t>(mag >> 32));
    trim();
}

BigInt BigInt::from_uint64(std::uint64_t v) {
    BigInt r;
    if (v != 0) r.limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) r.limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
    return r;
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
}

std::size_t BigInt::bit_length() const {
    if (limbs_.empty()) return 0;
    return (limbs_.size() - 1) * 32 + (32 - std::countl_zero(limbs_.back()));
}

bool BigInt::get_bit(std::size_t i) const {
    const std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1u;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::max(a.size(), b.size()) + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
        std::uint64_t s = carry;
        if (i < a.size()) s += a[i];
        if (i < b.size()) s += b[i];
        out.push_back(static_cast<std::uint32_t>(s));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<std::uint32_t>(carry));
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow;
        if (i < b.size()) d -= b[i];
        if (d < 0) {
            d += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.push_back(static_cast<std::uint32_t>(d));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.negative_ = !r.negative_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.negative_ == b.negative_) {
        r.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
        r.negative_ = a.negative_;
    } else {
        const int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt{};
        if (c > 0) {
            r.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_;
        } else {
            r.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
            r.negative_ = b.negative_;
        }
    }
    r.trim();
    return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt{};
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            std::uint64_t cur = r.limbs_[i + j] +
                                static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
            r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            std::uint64_t cur = r.limbs_[k] + carry;
            r.limbs_[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.negative_ = a.negative_ != b.negative_;
    r.trim();
    return r;
}

BigInt BigInt::shifted_left(std::size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    BigInt r;
    const std::size_t limb_shift = bits / 32;
    const unsigned bit_shift = bits % 32;
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        const std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
        r.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v);
        r.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    r.negative_ = negative_;
    r.trim();
    return r;
}

std::pair<BigInt, BigInt> BigInt::divmod(const BigInt& a, const BigInt& b) {
    if (b.is_zero()) throw DomainError("bigint: division by zero");
    const int c = cmp_mag(a.limbs_, b.limbs_);
    if (c < 0) return {BigInt{}, a};

    BigInt q, r;
    if (b.limbs_.size() == 1) {
        // Single-limb fast path.
        const std::uint64_t d = b.limbs_[0];
        q.limbs_.assign(a.limbs_.size(), 0);
        std::uint64_t rem = 0;
        for (std::size_t i = a.limbs_.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | a.limbs_[i];
            q.limbs_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        if (rem) r.limbs_.push_back(static_cast<std::uint32_t>(rem));
    } else {
        // Shift-subtract long division on magnitudes.
        const std::size_t n = a.bit_length();
        q.limbs_.assign(a.limbs_.size(), 0);
        std::vector<std::uint32_t> rem;
        for (std::size_t i = n; i-- > 0;) {
            // rem = rem*2 + bit(i)
            std::uint32_t carry = a.get_bit(i) ? 1u : 0u;
            for (std::size_t j = 0; j < rem.size(); ++j) {
                const std::uint32_t next = rem[j] >> 31;
                rem[j] = (rem[j] << 1) | carry;
                carry = next;
            }
            if (carry) rem.push_back(carry);
            if (cmp_mag(rem, b.limbs_) >= 0) {
                rem = sub_mag(rem, b.limbs_);
                q.limbs_[i / 32] |= 1u << (i % 32);
            }
        }
        r.limbs_ = std::move(rem);
    }
    q.negative_ = (a.negative_ != b.negative_);
    r.negative_ = a.negative_;
    q.trim();
    r.trim();
    return {q, r};
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    // Stein's algorithm on magnitudes.
    a.negative_ = false;
    b.negative_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;

    auto trailing_zeros = [](const BigInt& v) {
        std::size_t tz = 0;
        for (std::size_t i = 0; i < v.limbs_.size(); ++i) {
            if (v.limbs_[i] == 0) {
                tz += 32;
            } else {
                tz += std::countr_zero(v.limbs_[i]);
                break;
            }
        }
        return tz;
    };
    auto shr = [](BigInt& v, std::size_t bits) {
        const std::size_t limb_shift = bits / 32;
        const unsigned bit_shift = bits % 32;
        if (limb_shift >= v.limbs_.size()) {
            v.limbs_.clear();
            v.trim();
            return;
        }
        v.limbs_.erase(v.limbs_.begin(), v.limbs_.begin() + static_cast<std::ptrdiff_t>(limb_shift));
        if (bit_shift) {
            for (std::size_t i = 0; i < v.limbs_.size(); ++i) {
                v.limbs_[i] >>= bit_shift;
                if (i + 1 < v.limbs_.size()) {
                    v.limbs_[i] |= v.limbs_[i + 1] << (32 - bit_shift);
                }
            }
        }
        v.trim();
    };

    const std::size_t shift = std::min(trailing_zeros(a), trailing_zeros(b));
    shr(a, trailing_zeros(a));
    for (;;) {
        shr(b, trailing_zeros(b));
        if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
        b = b - a;
        if (b.is_zero()) break;
    }
    return a.shifted_left(shift);
}

std::strong_ordering BigInt::operator<=>(const BigInt& o) const {
    if (negative_ != o.negative_) {
        return negative_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const int c = cmp_mag(limbs_, o.limbs_);
    const int s = negative_ ? -c : c;
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

BigInt BigInt::from_string(std::string_view text) {
    if (text.empty()) throw DomainError("bigint: empty numeral");
    bool neg = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) throw DomainError("bigint: sign without digits");
    BigInt r;
    for (; pos < text.size(); ++pos) {
        const char ch = text[pos];
        if (ch < '0' || ch > '9') {
            throw DomainError("bigint: invalid digit '" + std::string(1, ch) + "'");
        }
        // r = r*10 + digit
        std::uint64_t carry = static_cast<std::uint64_t>(ch - '0');
        for (std::size_t i = 0; i < r.limbs_.size(); ++i) {
            const std::uint64_t cur = static_cast<std::uint64_t>(r.limbs_[i]) * 10 + carry;
            r.limbs_[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) r.limbs_.push_back(static_cast<std::uint32_t>(carry));
    }
    r.negative_ = neg;
    r.trim();
    return r;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = mag.size(); i-- > 0;) {
            const std::uint64_t cur = (rem << 32) | mag[i];
            mag[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
            rem = cur % 1000000000ull;
        }
        while (!mag.empty() && mag.back() == 0) mag.pop_back();
        for (int i = 0; i < 9; ++i) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::pair<double, long> BigInt::to_double_exp() const {
    if (is_zero()) return {0.0, 0};
    const std::size_t n = bit_length();
    // Collect the top (up to) 64 bits.
    std::uint64_t top = 0;
    const std::size_t take = std::min<std::size_t>(n, 64);
    for (std::size_t i = 0; i < take; ++i) {
        top = (top << 1) | (get_bit(n - 1 - i) ? 1u : 0u);
    }
    double mant = std::ldexp(static_cast<double>(top), -static_cast<int>(take));
    if (negative_) mant = -mant;
    return {mant, static_cast<long>(n)};
}

double BigInt::to_double() const {
    const auto [mant, exp] = to_double_exp();
    return std::ldexp(mant, static_cast<int>(exp));
}

std::uint64_t BigInt::to_uint64() const {
    if (negative_) throw DomainError("bigint: negative value where unsigned expected");
    if (bit_length() > 64) throw DomainError("bigint: value exceeds 64 bits");
    std::uint64_t v = 0;
    if (!limbs_.empty()) v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return v;
}

}  // namespace samplim
