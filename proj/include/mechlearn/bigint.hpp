#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace mechlearn {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Sized for this project's needs (a few thousand bits), not a general bignum:
// schoolbook multiplication and shift-subtract division are plenty here.
class BigInt {
  public:
    BigInt() = default;
    BigInt(std::int64_t v) {  // NOLINT: implicit by design
        if (v < 0) {
            neg_ = true;
            // avoid overflow on INT64_MIN
            std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
            set_u64(m);
        } else {
            set_u64(static_cast<std::uint64_t>(v));
        }
    }

    static BigInt from_u64(std::uint64_t v) {
        BigInt r;
        r.set_u64(v);
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }
    bool is_negative() const { return neg_; }

    // number of significant bits of |x|
    int bit_length() const {
        if (limbs_.empty()) return 0;
        int b = 32 * static_cast<int>(limbs_.size() - 1);
        std::uint32_t top = limbs_.back();
        while (top) {
            ++b;
            top >>= 1;
        }
        return b;
    }

    bool fits_i64() const {
        if (limbs_.size() > 2) return false;
        std::uint64_t m = mag_u64();
        if (neg_) return m <= (1ull << 63);
        return m < (1ull << 63);
    }

    std::int64_t to_i64() const {
        std::uint64_t m = mag_u64();
        return neg_ ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
    }

    friend int cmp(const BigInt& a, const BigInt& b) {
        if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
        int c = cmp_mag(a.limbs_, b.limbs_);
        return a.neg_ ? -c : c;
    }
    friend bool operator==(const BigInt& a, const BigInt& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return cmp(a, b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.neg_ = !r.neg_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.neg_ == b.neg_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.neg_ = a.neg_;
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.neg_ = a.neg_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.neg_ = b.neg_;
            }
        }
        r.trim();
        return r;
    }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        BigInt r;
        r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
        for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
            std::uint64_t carry = 0;
            std::uint64_t ai = a.limbs_[i];
            for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
                std::uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
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
        r.neg_ = a.neg_ != b.neg_;
        r.trim();
        return r;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    BigInt shifted_left(int bits) const {
        if (is_zero() || bits == 0) return *this;
        BigInt r;
        int words = bits / 32, rem = bits % 32;
        r.limbs_.assign(limbs_.size() + words + 1, 0);
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << rem;
            r.limbs_[i + words] |= static_cast<std::uint32_t>(v);
            r.limbs_[i + words + 1] |= static_cast<std::uint32_t>(v >> 32);
        }
        r.neg_ = neg_;
        r.trim();
        return r;
    }

    // truncated division: q = trunc(a/b), r = a - q*b (r has a's sign)
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
        if (b.is_zero()) throw std::domain_error("BigInt division by zero");
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (c < 0) {
            q = BigInt();
            r = a;
            return;
        }
        // shift-subtract long division on magnitudes
        BigInt rem, quot;
        int abits = a.bit_length();
        quot.limbs_.assign((abits + 31) / 32, 0);
        for (int i = abits - 1; i >= 0; --i) {
            rem = rem.shifted_left(1);
            if (a.bit(i)) rem.set_bit0();
            if (cmp_mag(rem.limbs_, b.limbs_) >= 0) {
                rem.limbs_ = sub_mag(rem.limbs_, b.limbs_);
                rem.trim();
                quot.limbs_[i / 32] |= (1u << (i % 32));
            }
        }
        quot.trim();
        quot.neg_ = !quot.is_zero() && (a.neg_ != b.neg_);
        rem.neg_ = !rem.is_zero() && a.neg_;
        q = quot;
        r = rem;
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        BigInt q, r;
        divmod(a, b, q, r);
        return r;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.neg_ = false;
        b.neg_ = false;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // binary gcd
        int shift = 0;
        while (a.even() && b.even()) {
            a.half_inplace();
            b.half_inplace();
            ++shift;
        }
        while (a.even()) a.half_inplace();
        while (!b.is_zero()) {
            while (b.even()) b.half_inplace();
            if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a.limbs_, b.limbs_);
            b.limbs_ = sub_mag(b.limbs_, a.limbs_);
            b.trim();
        }
        return a.shifted_left(shift);
    }

    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1u) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    double to_double() const {
        if (is_zero()) return 0.0;
        // top 64 bits of the magnitude, then scale
        int bits = bit_length();
        double m = 0.0;
        int start = static_cast<int>(limbs_.size()) - 1;
        int used = 0;
        for (int i = start; i >= 0 && used < 3; --i, ++used) m = m * 4294967296.0 + limbs_[i];
        int dropped = (start - 2 > 0) ? 32 * (start - 2) : 0;
        double v = m * std::pow(2.0, dropped);
        return neg_ ? -v : v;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> mag = limbs_;
        std::string out;
        while (!mag.empty()) {
            std::uint64_t rem = 0;
            for (int i = static_cast<int>(mag.size()) - 1; i >= 0; --i) {
                std::uint64_t cur = (rem << 32) | mag[i];
                mag[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!mag.empty() && mag.back() == 0) mag.pop_back();
            std::string part = std::to_string(rem);
            if (!mag.empty())
                part = std::string(9 - part.size(), '0') + part;
            out = part + out;
        }
        return neg_ ? "-" + out : out;
    }

    static BigInt from_string(const std::string& s) {
        BigInt r;
        std::size_t i = 0;
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        if (i >= s.size()) throw std::invalid_argument("BigInt: empty literal");
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
            r = r * BigInt(10) + BigInt(s[i] - '0');
        }
        r.neg_ = neg && !r.is_zero();
        return r;
    }

    std::size_t hash() const {
        std::size_t h = neg_ ? 0x9e3779b97f4a7c15ull : 0;
        for (auto l : limbs_) h = h * 1099511628211ull + l;
        return h;
    }

  private:
    std::vector<std::uint32_t> limbs_;  // little-endian magnitude
    bool neg_ = false;

    void set_u64(std::uint64_t v) {
        limbs_.clear();
        while (v) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            v >>= 32;
        }
    }
    std::uint64_t mag_u64() const {
        std::uint64_t m = 0;
        if (limbs_.size() > 1) m = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) m |= limbs_[0];
        return m;
    }
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
        if (limbs_.empty()) neg_ = false;
    }
    bool bit(int i) const {
        std::size_t w = static_cast<std::size_t>(i) / 32;
        return w < limbs_.size() && ((limbs_[w] >> (i % 32)) & 1u);
    }
    void set_bit0() {
        if (limbs_.empty()) limbs_.push_back(1);
        else
            limbs_[0] |= 1u;
    }
    bool even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
    void half_inplace() {
        std::uint32_t carry = 0;
        for (int i = static_cast<int>(limbs_.size()) - 1; i >= 0; --i) {
            std::uint32_t next = limbs_[i] & 1u;
            limbs_[i] = (limbs_[i] >> 1) | (carry << 31);
            carry = next;
        }
        trim();
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto &lo = a.size() < b.size() ? a : b, &hi = a.size() < b.size() ? b : a;
        std::vector<std::uint32_t> r(hi.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t cur = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
            r[i] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        r[hi.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
            if (cur < 0) {
                cur += (1ll << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(cur);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }
};

}  // namespace mechlearn
