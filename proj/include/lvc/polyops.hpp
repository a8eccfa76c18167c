#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lvc/mpoly.hpp"

namespace lvc {

// Exact division: returns p/q when q divides p over Q[vars], nullopt otherwise.
std::optional<MPoly> try_divide_exact(const MPoly& p, const MPoly& q);
MPoly divide_exact(const MPoly& p, const MPoly& q); // throws invalid_input on failure

// Primitive gcd with positive grlex-leading coefficient.  gcd(0, 0) = 0.
// Strategy: monomial/content fast paths, a modular triviality pre-test, then a
// heuristic evaluate-at-big-integer gcd certified by trial division, falling back to
// a primitive PRS when the heuristic keeps missing.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

// p with positive grlex-leading coefficient and coprime integer coefficients.
MPoly normalize_primitive(const MPoly& p);

// Square-free decomposition with respect to v (Yun): p = c * prod f_i^i with the f_i
// pairwise coprime and square-free.  Returns the non-constant f_i with multiplicities,
// ordered by decreasing multiplicity.
std::vector<std::pair<MPoly, int>> squarefree_decompose(const MPoly& p, const Var& v);
MPoly squarefree_part(const MPoly& p, const Var& v);

// Resultant of p and q with respect to v (subresultant PRS).  Requires positive
// degree in v for both unless one is v-free, in which case lc^deg conventions apply.
MPoly resultant(const MPoly& p, const MPoly& q, const Var& v);

// Pseudo-remainder prem(p, q, v) = lc_v(q)^(deg_v p - deg_v q + 1) * p mod q.
MPoly prem(const MPoly& p, const MPoly& q, const Var& v);

} // namespace lvc
