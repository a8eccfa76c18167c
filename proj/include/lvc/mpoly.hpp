#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lvc/interval.hpp"
#include "lvc/rational.hpp"

namespace lvc {

// Interned symbol.  The model parameters and phase variables have fixed ranks in the
// monomial order (lambda < n < mu < y1 < y2 < y3); any other name ranks after them,
// alphabetically, so the order never depends on interning sequence.
class Var {
  public:
    explicit Var(const std::string& name);
    uint32_t id() const { return id_; }
    const std::string& name() const;
    // Total order used as the variable order of the graded-lex monomial order.
    bool operator<(const Var& o) const;
    bool operator==(const Var& o) const { return id_ == o.id_; }

  private:
    uint32_t id_;
};

// Sparse multivariate polynomial over Q.  Invariants: no zero coefficients are stored;
// vars() is sorted in the fixed variable order and every stored exponent vector has
// the same arity as vars(); terms iterate in decreasing graded-lex order.
class MPoly {
  public:
    using Exps = std::vector<int>;

    // Decreasing graded lexicographic order on exponent vectors of equal arity.
    struct GrlexDesc {
        bool operator()(const Exps& a, const Exps& b) const;
    };
    using TermMap = std::map<Exps, Rational, GrlexDesc>;

    MPoly() = default;
    MPoly(const Rational& c); // NOLINT: constant polynomial, implicit by design
    MPoly(long c) : MPoly(Rational(c)) {}
    static MPoly variable(const Var& v);
    static MPoly variable(const std::string& name) { return variable(Var(name)); }
    static MPoly monomial(const Rational& c, const std::vector<std::pair<Var, int>>& powers);

    const std::vector<Var>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const; // requires is_constant()
    bool uses(const Var& v) const;

    int total_degree() const;       // -1 for the zero polynomial
    int degree_in(const Var& v) const;

    const Rational& leading_coeff() const; // grlex-leading; requires !is_zero()
    Rational coeff_of(const std::vector<std::pair<Var, int>>& powers) const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
    MPoly scaled(const Rational& c) const;
    MPoly pow(unsigned e) const;

    bool operator==(const MPoly& o) const;

    MPoly derivative(const Var& v) const;

    // Dense coefficient list in v, index = power of v; coefficients are polynomials in
    // the remaining variables.  Returns {zero} for the zero polynomial.
    std::vector<MPoly> coeffs_in(const Var& v) const;
    static MPoly from_coeffs(const Var& v, const std::vector<MPoly>& coeffs);

    // Substitution of an exact rational value for one variable.
    MPoly eval_at(const Var& v, const Rational& value) const;
    // Full evaluation; every variable of the polynomial must be covered.
    Rational eval(const std::map<Var, Rational>& point) const;
    // Interval enclosure of the range over a box (nested Horner; every used variable
    // must be covered).
    Interval eval_interval(const std::map<Var, Interval>& box) const;

    // Positive rational c such that (*this)/c has coprime integer coefficients.
    // Requires !is_zero().
    Rational content() const;
    // this == content * primitive, primitive has integer coprime coefficients and the
    // sign of the grlex-leading coefficient is preserved... see poly_gcd for the
    // positive-leading convention.
    MPoly primitive_part() const { return scaled(content().inv()); }

    std::string str() const;

    // Internal: raw term insertion used by the arithmetic kernels.  Drops zeros.
    void add_term(const Exps& e, const Rational& c);
    static MPoly build(std::vector<Var> vars, TermMap terms);

  private:
    std::vector<Var> vars_;
    TermMap terms_;

    void prune();
    MPoly with_vars(const std::vector<Var>& target) const; // re-index onto a supervset
    friend std::vector<Var> merged_vars(const MPoly& a, const MPoly& b);
};

std::vector<Var> merged_vars(const MPoly& a, const MPoly& b);
std::ostream& operator<<(std::ostream& os, const MPoly& p);

} // namespace lvc
