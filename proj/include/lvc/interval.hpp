#pragma once

#include <string>
#include <utility>

#include "lvc/rational.hpp"

namespace lvc {

// Sign of an exact quantity, or of a set of values.
enum class Sign { negative = -1, zero = 0, positive = 1, indeterminate = 2 };

inline Sign sign_of(const Rational& r) {
    int s = r.sign();
    return s < 0 ? Sign::negative : s > 0 ? Sign::positive : Sign::zero;
}

inline char sign_char(Sign s) {
    switch (s) {
        case Sign::negative: return '-';
        case Sign::positive: return '+';
        case Sign::zero: return '0';
        default: return '?';
    }
}

// Closed interval with exact rational endpoints.  All arithmetic is exact, so the
// results are the tightest closed enclosures of the pointwise operations.
class Interval {
  public:
    Interval() : lo_(0), hi_(0) {}
    Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw invalid_input("interval with lo > hi");
    }
    static Interval point(const Rational& r) { return Interval(r, r); }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }

    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / Rational(2); }

    bool is_point() const { return lo_ == hi_; }
    bool contains(const Rational& r) const { return lo_ <= r && r <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_interior(const Rational& r) const { return lo_ < r && r < hi_; }
    bool contains_interior(const Interval& o) const { return lo_ < o.lo_ && o.hi_ < hi_; }
    bool intersects(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }

    Sign sign() const {
        if (lo_.sign() > 0) return Sign::positive;
        if (hi_.sign() < 0) return Sign::negative;
        if (lo_.is_zero() && hi_.is_zero()) return Sign::zero;
        return Sign::indeterminate;
    }

    Interval operator-() const { return Interval(-hi_, -lo_); }
    Interval operator+(const Interval& o) const { return Interval(lo_ + o.lo_, hi_ + o.hi_); }
    Interval operator-(const Interval& o) const { return Interval(lo_ - o.hi_, hi_ - o.lo_); }
    Interval operator*(const Interval& o) const;
    // Throws division_by_zero if o contains zero.
    Interval operator/(const Interval& o) const;

    Interval pow(unsigned e) const;

    std::pair<Interval, Interval> halves() const {
        Rational m = mid();
        return {Interval(lo_, m), Interval(m, hi_)};
    }

    static Interval hull(const Interval& a, const Interval& b) {
        return Interval(rat_min(a.lo_, b.lo_), rat_max(a.hi_, b.hi_));
    }

    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

  private:
    Rational lo_, hi_;
};

} // namespace lvc
