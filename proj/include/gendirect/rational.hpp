#ifndef GENDIRECT_RATIONAL_HPP
#define GENDIRECT_RATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <string>

namespace gendirect {

/// Exact scalar of the form num / (2^p * 3^q).
///
/// Repeated bisection and trisection of the unit box only ever produce
/// coordinates of this shape, so cell geometry can be replayed without float
/// drift. Once an operation would leave the exact range (very deep
/// subdivisions), the value degrades to a double carried in `approx_` and
/// `exact()` turns false; all comparisons then fall back to doubles.
class Rational {
public:
    Rational() : num_(0), p_(0), q_(0), exact_(true), approx_(0.0) {}

    static Rational from_int(long long v) {
        Rational r;
        r.num_ = v;
        r.approx_ = static_cast<double>(v);
        return r;
    }

    /// v / (2^p * 3^q), normalized.
    static Rational make(long long num, int p, int q) {
        Rational r;
        r.num_ = num;
        r.p_ = static_cast<std::int16_t>(p);
        r.q_ = static_cast<std::int16_t>(q);
        r.normalize();
        r.refresh_approx();
        return r;
    }

    static Rational from_double(double v) {
        Rational r;
        r.exact_ = false;
        r.approx_ = v;
        return r;
    }

    bool exact() const { return exact_; }
    double value() const { return approx_; }

    bool is_zero() const { return exact_ ? num_ == 0 : approx_ == 0.0; }

    Rational operator-() const {
        Rational r(*this);
        r.num_ = -r.num_;
        r.approx_ = -r.approx_;
        return r;
    }

    Rational operator+(const Rational& o) const { return add_sub(o, +1); }
    Rational operator-(const Rational& o) const { return add_sub(o, -1); }

    /// Exact division by 2 (adds one to the binary exponent).
    Rational half() const {
        Rational r(*this);
        if (r.exact_) {
            if (r.num_ % 2 == 0) r.num_ /= 2;
            else if (r.p_ < kMaxP) r.p_ = static_cast<std::int16_t>(r.p_ + 1);
            else r.exact_ = false;
        }
        if (r.exact_) r.refresh_approx();
        else r.approx_ = approx_ / 2.0;
        return r;
    }

    /// Exact division by 3.
    Rational third() const {
        Rational r(*this);
        if (r.exact_) {
            if (r.num_ % 3 == 0) r.num_ /= 3;
            else if (r.q_ < kMaxQ) r.q_ = static_cast<std::int16_t>(r.q_ + 1);
            else r.exact_ = false;
        }
        if (r.exact_) r.refresh_approx();
        else r.approx_ = approx_ / 3.0;
        return r;
    }

    Rational times_int(long long k) const {
        Rational r(*this);
        if (r.exact_) {
            __int128 prod;
            if (!mul_overflows(r.num_, static_cast<__int128>(k), &prod)) {
                r.num_ = prod;
                r.normalize();
            } else {
                r.exact_ = false;
            }
        }
        if (r.exact_) r.refresh_approx();
        else r.approx_ = approx_ * static_cast<double>(k);
        return r;
    }

    /// Division by an arbitrary positive integer; exact when the result still
    /// has a 2^p*3^q denominator, approximate otherwise.
    Rational div_int(long long k) const {
        if (k <= 0) throw std::invalid_argument("Rational::div_int: k must be positive");
        Rational r(*this);
        r.approx_ = approx_ / static_cast<double>(k);
        if (!r.exact_) return r;
        // exact paths below re-derive approx_ from the normalized form
        long long rest = k;
        int add_p = 0, add_q = 0;
        while (rest % 2 == 0) { rest /= 2; ++add_p; }
        while (rest % 3 == 0) { rest /= 3; ++add_q; }
        if (rest != 1) {
            if (r.num_ % rest == 0) r.num_ /= rest;
            else { r.exact_ = false; return r; }
        }
        if (r.p_ + add_p <= kMaxP && r.q_ + add_q <= kMaxQ) {
            r.p_ = static_cast<std::int16_t>(r.p_ + add_p);
            r.q_ = static_cast<std::int16_t>(r.q_ + add_q);
            r.normalize();
            r.refresh_approx();
        } else {
            r.exact_ = false;
        }
        return r;
    }

    Rational operator*(const Rational& o) const {
        Rational r;
        if (exact_ && o.exact_) {
            __int128 prod;
            if (!mul_overflows(num_, o.num_, &prod) && p_ + o.p_ <= kMaxP && q_ + o.q_ <= kMaxQ) {
                r.num_ = prod;
                r.p_ = static_cast<std::int16_t>(p_ + o.p_);
                r.q_ = static_cast<std::int16_t>(q_ + o.q_);
                r.normalize();
                r.refresh_approx();
                return r;
            }
        }
        r.exact_ = false;
        r.approx_ = approx_ * o.approx_;
        return r;
    }

    bool operator==(const Rational& o) const {
        if (exact_ && o.exact_) {
            __int128 a, b;
            if (align(o, &a, &b)) return a == b;
        }
        return approx_ == o.approx_;
    }
    bool operator!=(const Rational& o) const { return !(*this == o); }

    bool operator<(const Rational& o) const {
        if (exact_ && o.exact_) {
            __int128 a, b;
            if (align(o, &a, &b)) return a < b;
        }
        return approx_ < o.approx_;
    }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    /// Stable key for hashing/dedup of exact values.
    struct Key {
        std::int64_t hi, lo;
        std::int32_t pq;
        bool operator==(const Key& o) const { return hi == o.hi && lo == o.lo && pq == o.pq; }
    };

    Key key() const {
        Key k;
        if (exact_) {
            k.hi = static_cast<std::int64_t>(num_ >> 64);
            k.lo = static_cast<std::int64_t>(static_cast<std::uint64_t>(num_));
            k.pq = (static_cast<std::int32_t>(p_) << 16) | static_cast<std::int32_t>(static_cast<std::uint16_t>(q_));
        } else {
            // Approximate values key by their bit pattern; p/q slot marks inexact.
            std::uint64_t bits;
            static_assert(sizeof(bits) == sizeof(double));
            std::memcpy(&bits, &approx_, sizeof(bits));
            k.hi = static_cast<std::int64_t>(bits);
            k.lo = 0;
            k.pq = -1;
        }
        return k;
    }

    std::string str() const {
        if (!exact_) return std::to_string(approx_) + "~";
        std::string s = std::to_string(static_cast<long long>(num_));
        if (p_ > 0 || q_ > 0) {
            s += "/(";
            if (p_ > 0) s += "2^" + std::to_string(p_);
            if (p_ > 0 && q_ > 0) s += "*";
            if (q_ > 0) s += "3^" + std::to_string(q_);
            s += ")";
        }
        return s;
    }

private:
    // Exponent ceilings keep alignment products inside __int128.
    static constexpr int kMaxP = 110;
    static constexpr int kMaxQ = 70;

    __int128 num_;
    std::int16_t p_ = 0, q_ = 0;
    bool exact_;
    double approx_;

    static bool mul_overflows(__int128 a, __int128 b, __int128* out) {
        return __builtin_mul_overflow(a, b, out);
    }

    void normalize() {
        while (p_ > 0 && num_ != 0 && num_ % 2 == 0) { num_ /= 2; --p_; }
        while (q_ > 0 && num_ != 0 && num_ % 3 == 0) { num_ /= 3; --q_; }
        if (num_ == 0) { p_ = 0; q_ = 0; }
    }

    // One division by the exact denominator, so shallow values convert to the
    // correctly rounded double.
    void refresh_approx() {
        long double den = 1.0L;
        __int128 di = 1;
        bool exact_den = true;
        for (int i = 0; i < p_ && exact_den; ++i) exact_den = !mul_overflows(di, 2, &di);
        for (int i = 0; i < q_ && exact_den; ++i) exact_den = !mul_overflows(di, 3, &di);
        if (exact_den) {
            den = static_cast<long double>(di);
        } else {
            for (int i = 0; i < p_; ++i) den *= 2.0L;
            for (int i = 0; i < q_; ++i) den *= 3.0L;
        }
        approx_ = static_cast<double>(static_cast<long double>(num_) / den);
    }

    /// Brings both numerators over the common denominator 2^max(p)*3^max(q).
    /// Returns false if that blows past __int128.
    bool align(const Rational& o, __int128* a, __int128* b) const {
        int P = std::max(p_, o.p_), Q = std::max(q_, o.q_);
        __int128 x = num_, y = o.num_;
        for (int i = p_; i < P; ++i) if (mul_overflows(x, 2, &x)) return false;
        for (int i = q_; i < Q; ++i) if (mul_overflows(x, 3, &x)) return false;
        for (int i = o.p_; i < P; ++i) if (mul_overflows(y, 2, &y)) return false;
        for (int i = o.q_; i < Q; ++i) if (mul_overflows(y, 3, &y)) return false;
        *a = x;
        *b = y;
        return true;
    }

    Rational add_sub(const Rational& o, int sign) const {
        Rational r;
        if (exact_ && o.exact_) {
            __int128 a, b;
            if (align(o, &a, &b)) {
                __int128 sum;
                if (!__builtin_add_overflow(a, sign > 0 ? b : -b, &sum)) {
                    r.num_ = sum;
                    r.p_ = std::max(p_, o.p_);
                    r.q_ = std::max(q_, o.q_);
                    r.normalize();
                    r.refresh_approx();
                    return r;
                }
            }
        }
        r.exact_ = false;
        r.approx_ = sign > 0 ? approx_ + o.approx_ : approx_ - o.approx_;
        return r;
    }
};

struct RationalKeyHash {
    std::size_t operator()(const Rational::Key& k) const {
        std::size_t h = std::hash<std::int64_t>()(k.hi);
        h ^= std::hash<std::int64_t>()(k.lo) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h ^= std::hash<std::int32_t>()(k.pq) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace gendirect

#endif  // GENDIRECT_RATIONAL_HPP
