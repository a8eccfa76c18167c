#pragma once

#include <vector>

#include "lvc/interval.hpp"
#include "lvc/mpoly.hpp"

namespace lvc {

// Dense univariate polynomial over the rationals, coefficient of x^i at index i.
// Used for Sturm chains and certified real-root isolation; conversions to/from
// MPoly keep the variable name attached.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    // Requires p to use no variable other than v (constants allowed).
    UniPoly(const MPoly& p, const Var& v);

    static UniPoly constant(const Rational& c);

    const std::vector<Rational>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(size_t i) const;
    const Rational& lead() const; // requires !is_zero()

    Rational eval(const Rational& x) const;
    Interval eval(const Interval& x) const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const Rational& c) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    UniPoly derivative() const;
    // Euclidean division over Q; q.degree() >= 0 required.
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& q) const;

    // Scaled to coprime integer coefficients with positive leading coefficient
    // (signs at every point are preserved: the scale factor is positive).
    UniPoly normalized() const;

    MPoly to_mpoly(const Var& v) const;

  private:
    void trim();
    std::vector<Rational> c_; // no trailing zeros
};

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b);

// Sturm chain of p: p, p', then negated remainders, each element normalized by a
// positive factor.  Ends with a nonzero constant iff p is square-free.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

// Number of sign variations of the chain evaluated at x (zeros skipped).
int sign_variations_at(const std::vector<UniPoly>& chain, const Rational& x);
// Variations at -inf / +inf via leading-term signs.
int sign_variations_at_neg_inf(const std::vector<UniPoly>& chain);
int sign_variations_at_pos_inf(const std::vector<UniPoly>& chain);

// Count of distinct real roots in (a, b]; a < b required.
int count_roots(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b);
// Count of all distinct real roots.
int count_all_roots(const std::vector<UniPoly>& chain);

// Bound B with every real root in (-B, B).
Rational root_bound(const UniPoly& p);

struct IsolatedRoot {
    Interval box;      // contains exactly one real root of the square-free part
    int multiplicity;  // multiplicity in the original polynomial
};

// Disjoint isolating intervals of width <= width for all real roots of p,
// sorted increasingly.  Point intervals are emitted for roots hit exactly.
// Multiplicities refer to p itself (square-free reduction is internal).
std::vector<IsolatedRoot> isolate_roots(const UniPoly& p, const Rational& width);

// Shrink an isolating interval of a square-free p (exactly one simple root
// inside, p nonzero at both ends with opposite signs) to width <= width.
Interval refine_root(const UniPoly& p, Interval box, const Rational& width);

} // namespace lvc
