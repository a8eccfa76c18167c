#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lvc/mat3.hpp"

namespace lvc {

// Axis-aligned parameter box: one interval per parameter symbol.
using Box = std::map<Var, Interval>;

// Three-species interaction model dx_i/dt = x_i * sum_j a_ij (x_j - 1) with all
// a_ij < 0 in the competitive regime; (1,1,1) is an equilibrium identically in
// the parameters.
struct LVSystem {
    Mat3 A;
    std::vector<Var> parameters;
};

// JSON round trip.  Schema: {"parameters": ["lambda", ...],
// "A": [[entry, entry, entry], ...]} with entries written in the expression
// syntax accepted by parse_ratfunc.
LVSystem lvsystem_from_json(const std::string& text);
std::string lvsystem_to_json(const LVSystem& sys);

// Row sums b_i = sum_j a_ij (the intrinsic terms of the growth form).
Vec3 row_sums(const LVSystem& sys);

// Field components as rational functions of parameters and the given phase
// variables.
std::array<RatFunc, 3> vector_field(const LVSystem& sys, const std::array<Var, 3>& x);

// Equilibrium on the x_i axis: b_i/a_ii in slot i, zero elsewhere.
// Throws degenerate_input when a_ii is identically zero.
Vec3 axial_equilibrium(const LVSystem& sys, int axis);

// Equilibrium on the face {x_face = 0}: solves the 2x2 linear system of the
// remaining two species.  Throws degenerate_input when the face subsystem is
// singular.  Positivity is parameter-dependent and certified separately.
Vec3 planar_equilibrium(const LVSystem& sys, int face);

// Certified sign of f on the box: subdivides until the interval enclosure is
// sign-definite on every piece, up to `budget` bisections.  Returns
// indeterminate when the budget runs out or the sign is not constant on the
// box.  Never guesses.
Sign certify_sign(const RatFunc& f, const Box& box, int budget = 256);

enum class CompetitiveStatus { competitive, not_competitive, indeterminate };

// Certified-competitive iff every a_ij is certified negative on the box.
CompetitiveStatus competitive_check(const LVSystem& sys, const Box& box, int budget = 256);

// Boundary invariants in Zeeman's notation.  alpha_ij = b_i*a_ji/a_ii - b_j for
// i != j with R_ij = sgn(alpha_ij); beta_kk = (A*Q_k)_k - b_k with
// Q_kk = sgn(beta_kk), where Q_k is the planar equilibrium on {x_k = 0}
// (beta only meaningful when that equilibrium is positive).
struct ZeemanInvariants {
    Vec3 b;
    std::array<std::array<RatFunc, 3>, 3> alpha; // diagonal slots unused
    std::array<RatFunc, 3> beta;
    std::array<std::array<Sign, 3>, 3> R;
    std::array<Sign, 3> Q;
    // Existence of a positive planar equilibrium on each face: positive means
    // certified to exist, negative means certified not to (a coordinate is
    // non-positive, or the face is singular), indeterminate means undecided.
    // Q[k] carries the sign of beta_kk only when q_exists[k] is positive.
    std::array<Sign, 3> q_exists;
};

ZeemanInvariants zeeman_invariants(const LVSystem& sys, const Box& box, int budget = 256);

// One row of the class lookup table: required signs (+1/-1) with 0 meaning
// unconstrained.
struct ClassPattern {
    int class_number = 0;
    std::array<std::array<int, 3>, 3> R{}; // off-diagonal slots
    std::array<int, 3> Q{};
};

struct ClassTable {
    std::vector<ClassPattern> entries;
};

// Text format, one entry per line:
//   class=<int> pattern R12=<s> R13=<s> R21=<s> R23=<s> R31=<s> R32=<s>
//                        Q11=<s> Q22=<s> Q33=<s>
// with <s> in {+1, -1, *}.  Lines starting with '#' and blank lines are
// skipped.
ClassTable class_table_from_text(const std::string& text);
ClassTable class_table_from_file(const std::string& path);

struct ClassifyResult {
    std::optional<int> class_number;      // empty: pattern not in table
    std::array<int, 3> relabeling{0, 1, 2}; // species permutation that matched
    std::string pattern;                  // raw sign pattern, for reporting
};

// Looks the sign pattern up in the table, trying all six simultaneous species
// relabelings.  Scan order is deterministic: table entries in file order,
// relabelings in lexicographic order; first match wins.  When nothing matches
// and at least one entry was blocked only by indeterminate signs (neither
// matched nor ruled out), throws invalid_input.  A clean miss returns an empty
// class_number with the raw pattern attached.
ClassifyResult classify(const ZeemanInvariants& inv, const ClassTable& table);

} // namespace lvc
