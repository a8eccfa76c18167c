#pragma once

#include <map>

#include "lvc/interval.hpp"
#include "lvc/mpoly.hpp"

namespace lvc {

// Quotient of sparse polynomials kept reduced at all times:
//   - denominator nonzero, polynomial gcd(num, den) constant,
//   - denominator has integer coprime coefficients and positive leading
//     coefficient under the graded-lex order (so the representation is unique).
// Arithmetic reduces via the small cross-gcds of the classical fraction
// algorithms instead of one large gcd on the full products.
class RatFunc {
  public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c); // NOLINT: implicit lift of a constant
    RatFunc(const MPoly& p);    // NOLINT: implicit lift of a polynomial
    RatFunc(MPoly num, MPoly den);

    static RatFunc variable(const Var& v) { return RatFunc(MPoly::variable(v)); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const; // requires is_constant()
    bool uses(const Var& v) const { return num_.uses(v) || den_.uses(v); }
    std::vector<Var> used_vars() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const; // throws division_by_zero
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

    RatFunc inv() const; // throws division_by_zero on zero
    RatFunc derivative(const Var& v) const;

    // Substitute rational functions for variables (missing variables unchanged).
    RatFunc substitute(const std::map<Var, RatFunc>& vals) const;

    Rational eval(const std::map<Var, Rational>& point) const; // throws on den = 0
    Interval eval_interval(const std::map<Var, Interval>& box) const;

    std::string str() const;

  private:
    struct reduced_tag {};
    RatFunc(MPoly num, MPoly den, reduced_tag);
    void normalize_unit(); // content/leading-sign normalization only
    MPoly num_, den_;
};

// Substitute rational functions into a polynomial.
RatFunc substitute(const MPoly& p, const std::map<Var, RatFunc>& vals);

std::ostream& operator<<(std::ostream& os, const RatFunc& f);

} // namespace lvc
