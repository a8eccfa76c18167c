#include "lvc/ratfunc.hpp"

#include <sstream>

#include "lvc/error.hpp"
#include "lvc/polyops.hpp"

namespace lvc {

void RatFunc::normalize_unit() {
    if (num_.is_zero()) {
        den_ = MPoly(Rational(1));
        return;
    }
    // Joint scaling: both polynomials become integer with overall content 1 and
    // positive leading denominator coefficient, making the representation unique.
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const MPoly* p : {&num_, &den_})
        for (const auto& [e, c] : p->terms()) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
        }
    Rational scale(den_lcm, num_gcd);
    if (den_.leading_coeff().sign() < 0) scale = -scale;
    num_ = num_.scaled(scale);
    den_ = den_.scaled(scale);
}

RatFunc::RatFunc(const Rational& c) : num_(c), den_(Rational(1)) { normalize_unit(); }

RatFunc::RatFunc(const MPoly& p) : num_(p), den_(Rational(1)) { normalize_unit(); }

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = MPoly(Rational(1));
        return;
    }
    if (!den_.is_constant()) {
        MPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divide_exact(num_, g);
            den_ = divide_exact(den_, g);
        }
    }
    normalize_unit();
}

RatFunc::RatFunc(MPoly num, MPoly den, reduced_tag)
    : num_(std::move(num)), den_(std::move(den)) {
    normalize_unit();
}

Rational RatFunc::constant_value() const {
    if (!is_constant()) throw invalid_input("rational function is not constant");
    return num_.is_zero() ? Rational(0)
                          : num_.constant_value() / den_.constant_value();
}

std::vector<Var> RatFunc::used_vars() const {
    std::vector<Var> out;
    for (const MPoly* p : {&num_, &den_})
        for (const auto& v : p->vars())
            if (p->uses(v) && std::find(out.begin(), out.end(), v) == out.end())
                out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    // a/b + c/d with g = gcd(b, d): t = a(d/g) + c(b/g), e = gcd(t, g),
    // result (t/e) / ((b/g)(d/e)) is reduced when the inputs are.
    MPoly g = poly_gcd(den_, o.den_);
    if (g.is_constant()) {
        MPoly t = num_ * o.den_ + o.num_ * den_;
        if (t.is_zero()) return RatFunc();
        return RatFunc(std::move(t), den_ * o.den_, reduced_tag{});
    }
    MPoly bg = divide_exact(den_, g), dg = divide_exact(o.den_, g);
    MPoly t = num_ * dg + o.num_ * bg;
    if (t.is_zero()) return RatFunc();
    MPoly e = poly_gcd(t, g);
    if (e.is_constant()) return RatFunc(std::move(t), bg * o.den_, reduced_tag{});
    return RatFunc(divide_exact(t, e), bg * divide_exact(o.den_, e), reduced_tag{});
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    // (a/b)(c/d): cancel gcd(a, d) and gcd(c, b) first; result is reduced.
    MPoly a = num_, b = den_, c = o.num_, d = o.den_;
    MPoly g1 = poly_gcd(a, d);
    if (!g1.is_constant()) {
        a = divide_exact(a, g1);
        d = divide_exact(d, g1);
    }
    MPoly g2 = poly_gcd(c, b);
    if (!g2.is_constant()) {
        c = divide_exact(c, g2);
        b = divide_exact(b, g2);
    }
    return RatFunc(a * c, b * d, reduced_tag{});
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw division_by_zero("inverse of zero rational function");
    return RatFunc(den_, num_, reduced_tag{});
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::derivative(const Var& v) const {
    if (!uses(v)) return RatFunc();
    MPoly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    if (n.is_zero()) return RatFunc();
    return RatFunc(std::move(n), den_ * den_);
}

RatFunc substitute(const MPoly& p, const std::map<Var, RatFunc>& vals) {
    if (p.is_zero()) return RatFunc();
    // Horner in the first substituted variable, recursing on coefficients.
    for (const auto& [v, f] : vals) {
        if (!p.uses(v)) continue;
        auto cs = p.coeffs_in(v);
        RatFunc acc;
        for (size_t i = cs.size(); i-- > 0;) acc = acc * f + substitute(cs[i], vals);
        return acc;
    }
    return RatFunc(p);
}

RatFunc RatFunc::substitute(const std::map<Var, RatFunc>& vals) const {
    RatFunc n = lvc::substitute(num_, vals);
    RatFunc d = lvc::substitute(den_, vals);
    return n / d;
}

Rational RatFunc::eval(const std::map<Var, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d.is_zero()) throw division_by_zero("denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

Interval RatFunc::eval_interval(const std::map<Var, Interval>& box) const {
    Interval n = num_.eval_interval(box);
    if (num_.is_zero()) return n;
    Interval d = den_.eval_interval(box);
    return n / d; // throws division_by_zero when d straddles zero
}

std::string RatFunc::str() const {
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ") / (" << den_.str() << ")";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.str(); }

} // namespace lvc
