#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mechlearn/bigint.hpp"

namespace mechlearn {

// Exact rational, always normalized (gcd 1, positive denominator).
// The geometric core works in these; doubles only appear in sampling
// and exponential-weight bookkeeping.
class Rat {
  public:
    Rat() : num_(0), den_(1) {}
    Rat(std::int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }
    bool is_integer() const { return den_ == BigInt(1); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.num_ * b.num_, a.den_ * b.den_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }
    Rat& operator+=(const Rat& o) { return *this = *this + o; }
    Rat& operator-=(const Rat& o) { return *this = *this - o; }
    Rat& operator*=(const Rat& o) { return *this = *this * o; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend int cmp(const Rat& a, const Rat& b) { return cmp(a.num_ * b.den_, b.num_ * a.den_); }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a, b) >= 0; }

    // floor(num/den)
    BigInt floor() const {
        BigInt q, r;
        BigInt::divmod(num_, den_, q, r);
        if (r.sign() < 0) q -= BigInt(1);
        return q;
    }
    BigInt ceil() const {
        BigInt q, r;
        BigInt::divmod(num_, den_, q, r);
        if (r.sign() > 0) q += BigInt(1);
        return q;
    }

    double to_double() const { return num_.to_double() / den_.to_double(); }

    // exact: every finite double is a dyadic rational
    static Rat from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Rat: non-finite double");
        if (v == 0.0) return Rat(0);
        int e = 0;
        double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
        std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
        e -= 53;
        Rat r(mant);
        if (e > 0) return Rat(BigInt(mant) * BigInt::pow(BigInt(2), e), BigInt(1));
        return Rat(BigInt(mant), BigInt::pow(BigInt(2), -e));
    }

    // accepts "p/q", integers, and plain decimals like "0.25" or "-1.5e-3"
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            BigInt n = BigInt::from_string(s.substr(0, slash));
            BigInt d = BigInt::from_string(s.substr(slash + 1));
            return Rat(n, d);
        }
        std::string t = s;
        int exp10 = 0;
        auto epos = t.find_first_of("eE");
        if (epos != std::string::npos) {
            exp10 = std::stoi(t.substr(epos + 1));
            t = t.substr(0, epos);
        }
        auto dot = t.find('.');
        std::string digits = t;
        int frac = 0;
        if (dot != std::string::npos) {
            digits = t.substr(0, dot) + t.substr(dot + 1);
            frac = static_cast<int>(t.size() - dot - 1);
        }
        if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("Rat: bad literal");
        BigInt n = BigInt::from_string(digits);
        int e = exp10 - frac;
        if (e >= 0) return Rat(n * BigInt::pow(BigInt(10), e), BigInt(1));
        return Rat(n, BigInt::pow(BigInt(10), -e));
    }

    std::string to_string() const {
        if (is_integer()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

  private:
    BigInt num_, den_;

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (g != BigInt(1)) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace mechlearn
