#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lvc/polyops.hpp"
#include "lvc/unipoly.hpp"

namespace lvc {

// Isolates every real root of a polynomial in one variable into disjoint
// intervals of width <= width.  Multiplicities refer to the input itself; the
// square-free reduction is internal.  Throws invalid_input on the zero
// polynomial or a polynomial using more than one variable; a nonzero constant
// has no roots.
std::vector<IsolatedRoot> isolate_univariate(const MPoly& p, const Rational& width);

// Triangular form of a bivariate system: r depends only on vars[0] and is
// square-free primitive; s depends on vars[1] (and possibly vars[0]) and is one
// of the inputs.  Every common root (x*, y*) of the system satisfies r(x*) = 0
// and s(x*, y*) = 0; the converse may fail (spurious x-roots survive until
// back-substitution).
struct TriangularChain {
    MPoly r;
    MPoly s;
};

struct Triangularization {
    std::vector<TriangularChain> chains;
    // Set instead of chains when the inputs share a nonconstant factor.
    std::optional<MPoly> common_factor;
};

// Resultant elimination of vars[1].  An empty result (no chains, no factor)
// certifies that the system has no common roots at all.
Triangularization triangularize(const std::array<MPoly, 2>& sys, const std::array<Var, 2>& vars);

// One certified root box of a bivariate system.  box is aligned with the vars
// of the owning certificate; multiple marks a repeated root of one of the
// eliminating resultants (the box itself still holds exactly one system root).
struct CertifiedBox {
    std::array<Interval, 2> box;
    bool multiple = false;
    std::vector<Sign> side_signs;
};

struct IsolationCertificate {
    std::array<Var, 2> vars{Var("lambda"), Var("n")};
    Rational width;
    std::vector<CertifiedBox> boxes;
};

// Text form: a header with the variables and width bound, then one line per
// box with exact rational endpoints and the side-sign vector.
std::string certificate_to_text(const IsolationCertificate& cert);

struct MRealRootOptions {
    // Half-open (lo, hi] bounds per variable; unset means unrestricted.
    std::optional<std::array<Interval, 2>> region;
    // Refinement rounds allowed per certification step before honest failure.
    int budget = 512;
};

// Isolates all common real roots of {sys[0], sys[1]} into boxes of side
// <= width and certifies the sign of every side polynomial on every box.
// Existence and uniqueness per box come from an interval Newton step on the
// system; candidates that fail both certification and refutation within the
// budget raise certification_failure, as do side signs that stay undecidable
// (in particular a side polynomial vanishing at a root).  Inputs sharing a
// nonconstant factor raise invalid_input.
IsolationCertificate mrealroot(const std::array<MPoly, 2>& sys, const std::array<Var, 2>& vars,
                               const Rational& width, const std::vector<MPoly>& side,
                               const MRealRootOptions& opt = {});

} // namespace lvc
