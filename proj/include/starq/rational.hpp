#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "starq/errors.hpp"

namespace starq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
    Int r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (long j = 0; j < k; ++j) {
        r *= (n - j);
        r /= (j + 1);
    }
    return r;
}

// Canonical "p/q" form, denominator always present and positive.
inline std::string rational_to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(std::string_view s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) return Rational(Int(std::string(s)));
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        if (den == 0) throw InputError("rational with zero denominator: " + std::string(s));
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("malformed rational: " + std::string(s));
    }
}

/// Exact element of Q(i): re + im*i with arbitrary-precision rational parts.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {} // NOLINT: implicit by design
    explicit GaussianRational(Rational re) : re_(std::move(re)) {}
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    // i^k for any integer k (i^4 = 1).
    static GaussianRational i_pow(long k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return GaussianRational(1);
            case 1: return i();
            case 2: return GaussianRational(-1);
            default: return GaussianRational(Rational(0), Rational(-1));
        }
    }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational operator+(const GaussianRational& o) const { return {re_ + o.re_, im_ + o.im_}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re_ - o.re_, im_ - o.im_}; }

    GaussianRational operator*(const GaussianRational& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }

    GaussianRational conj() const { return {re_, -im_}; }

    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational inverse() const {
        if (is_zero()) throw InputError("division by zero in Q(i)");
        Rational n = norm();
        return {re_ / n, -im_ / n};
    }

    GaussianRational operator/(const GaussianRational& o) const { return *this * o.inverse(); }

    GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    GaussianRational pow(unsigned long e) const {
        GaussianRational acc = one(), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    // Total order for use as a map key / deterministic tie-breaking.
    bool operator<(const GaussianRational& o) const {
        if (re_ != o.re_) return re_ < o.re_;
        return im_ < o.im_;
    }

    std::string to_string() const {
        auto rat = [](const Rational& r) {
            std::string s = numerator(r).str();
            if (denominator(r) != 1) s += "/" + denominator(r).str();
            return s;
        };
        if (im_ == 0) return rat(re_);
        std::string ims;
        if (im_ == 1) ims = "i";
        else if (im_ == -1) ims = "-i";
        else ims = rat(im_) + "*i";
        if (re_ == 0) return ims;
        return rat(re_) + (im_ > 0 ? "+" : "") + ims;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

} // namespace starq
