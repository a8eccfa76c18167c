#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "lvc/error.hpp"

namespace lvc {

// Arbitrary-precision rational in canonical form: gcd(num, den) = 1, den > 0.
// Canonicalization is maintained by GMP's mpq layer.
class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long v) : q_(v) {} // NOLINT: implicit by design, mirrors integer literals
    Rational(long num, long den);
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "p", "-p", "p/q", decimal ("0.25") and scientific ("1e-20", "2.5e3") forms.
    static Rational from_string(std::string_view s);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational inv() const;
    Rational pow(long e) const;

    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

  private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// min/max by value.
inline const Rational& rat_min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace lvc
