#include "lvc/interval.hpp"

namespace lvc {

Interval Interval::operator*(const Interval& o) const {
    Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
    Rational lo = rat_min(rat_min(a, b), rat_min(c, d));
    Rational hi = rat_max(rat_max(a, b), rat_max(c, d));
    return Interval(lo, hi);
}

Interval Interval::operator/(const Interval& o) const {
    if (o.contains(Rational(0)))
        throw division_by_zero("interval division by an interval containing zero");
    Rational a = lo_ / o.lo_, b = lo_ / o.hi_, c = hi_ / o.lo_, d = hi_ / o.hi_;
    Rational lo = rat_min(rat_min(a, b), rat_min(c, d));
    Rational hi = rat_max(rat_max(a, b), rat_max(c, d));
    return Interval(lo, hi);
}

Interval Interval::pow(unsigned e) const {
    if (e == 0) return Interval::point(Rational(1));
    Rational pl = lo_.pow(static_cast<long>(e)), ph = hi_.pow(static_cast<long>(e));
    if (e % 2 == 1 || lo_.sign() >= 0) return Interval(pl, ph);
    if (hi_.sign() <= 0) return Interval(ph, pl);
    // Even power of an interval straddling zero.
    return Interval(Rational(0), rat_max(pl, ph));
}

} // namespace lvc
