#pragma once

#include <optional>
#include <vector>

#include "lvc/lvmodel.hpp"

namespace lvc {

// Exact block diagonalization data for the linearization at (1,1,1):
// C = T*A*T^-1 with shape [[c11,c12,0],[c21,c22,0],[0,0,lambda_real]],
// c11 + c22 = 0, omega_sq = c11*c22 - c12*c21 (the squared imaginary part of
// the complex eigenvalue pair).
struct BlockForm {
    Mat3 T;
    Mat3 C;
    RatFunc omega_sq;
    RatFunc lambda_real;
};

// det(A) - M(A)*trace(A) where M is the sum of the principal 2x2 minors.
// Vanishing is equivalent to the characteristic polynomial factoring as
// (t - trace)(t^2 + M): a purely imaginary pair plus the real trace.
RatFunc eigencondition_residual(const LVSystem& sys);

// Solves eigencondition_residual == 0 for one parameter.  The numerator must
// be degree 1 in solve_for; throws degenerate_input when the condition is
// identically satisfied, not linear, or cannot be satisfied.
RatFunc eigencondition_solve(const LVSystem& sys, const Var& solve_for);

// Block-diagonalizes A (the eigencondition must hold identically).  With no T
// the rows are built canonically from the eigenstructure, giving
// C = [[0,-omega_sq,0],[1,0,0],[0,0,lambda_real]].  A supplied T is verified:
// T*A*T^-1 must have the block shape with zero trace in the 2x2 corner, and is
// returned as-is so printed golden matrices reproduce exactly.
BlockForm block_diagonalize(const LVSystem& sys, const std::optional<Mat3>& T = std::nullopt);

// The system in y = T(x - 1) coordinates: dy/dt = C*y + T*(u o (A*u)) with
// u = T^-1*y ("o" componentwise).  Exactly quadratic in (y1, y2, y3).
struct TransformedField {
    std::array<RatFunc, 3> f;
    std::array<Var, 3> y{Var("y1"), Var("y2"), Var("y3")};
    BlockForm block;
};

TransformedField transform_field(const LVSystem& sys, const BlockForm& bf);

// Graph y3 = h(y1,y2) = sum_{i=2..order} h_i, h_i = sum_j coeffs[i-2][j] *
// y1^j * y2^(i-j), solving the invariance equation through the given order.
struct CenterManifold {
    int order = 0;
    std::vector<std::vector<RatFunc>> coeffs;
    RatFunc h;
    std::array<Var, 2> y{Var("y1"), Var("y2")};
};

// dh/dy1 * f1|_{y3=h} + dh/dy2 * f2|_{y3=h} - f3|_{y3=h}; identically zero on
// an exactly invariant graph, and of total degree > order after
// center_manifold succeeds.
RatFunc invariance_residual(const TransformedField& tf, const RatFunc& h);

// Solves the invariance equation order by order (2..order).  The field's
// linear part must have the block shape; its corner entry (the real
// eigenvalue) must be nonzero.  A singular order-k solve is reported as
// degenerate_input naming k.
CenterManifold center_manifold(const TransformedField& tf, int order = 6);

// The reduced planar system: y3 = h substituted into (f1, f2) and truncated at
// total degree 7 (enough for three focal values).  linear is extracted from
// the result; omega_sq_of_linear is its determinant, which equals the block's
// omega_sq when the trace is zero.
struct PlanarField {
    std::array<RatFunc, 2> f;
    std::array<Var, 2> y{Var("y1"), Var("y2")};
    std::array<std::array<RatFunc, 2>, 2> linear;
    RatFunc omega_sq_of_linear;
};

PlanarField reduce_to_plane(const TransformedField& tf, const CenterManifold& cm);

// Degree bookkeeping helpers over a chosen variable subset (typically the
// phase variables, leaving parameters in the coefficients).
// Terms of f with total degree exactly d in vars.
RatFunc degree_part(const RatFunc& f, const std::vector<Var>& vars, int d);
// Terms of f with total degree at most d in vars.
RatFunc truncate_degree(const RatFunc& f, const std::vector<Var>& vars, int d);
// Smallest total degree in vars over the terms of f; INT_MAX for zero f.
int min_degree_in(const RatFunc& f, const std::vector<Var>& vars);
// Coefficient of the exact monomial prod vars[i]^exps[i] (all other listed
// vars to the zeroth power), as a function of the remaining variables.
RatFunc monomial_coeff(const RatFunc& f, const std::vector<Var>& vars,
                       const std::vector<int>& exps);

} // namespace lvc
