#pragma once

#include "lvc/reduction.hpp"

namespace lvc {

// Positive-definiteness record for the Lyapunov function behind a FocalSet.
// The function is built from (y1^2 + y2^2)/2 upward, so positivity near the
// origin is structural; max_order is the highest homogeneous order solved.
struct PdCertificate {
    bool valid = false;
    int max_order = 0;
};

// Focus quantity and focal values of the reduced planar system as rational
// functions of the model parameters.  lv0 is filled by the lv0() operation,
// lv1..lv3 by focal_values(); all stored fully reduced.  Focal values are
// canonical only up to positive factors and multiples of lower ones, so
// downstream comparisons are sign-level.
struct FocalSet {
    RatFunc lv0;
    RatFunc lv1;
    RatFunc lv2;
    RatFunc lv3;
    PdCertificate pd;
};

// Canonical text form: "LVk num <poly>" / "LVk den <poly>" lines followed by
// one "pd" line.  Deterministic, used by the CLI.
std::string focalset_to_text(const FocalSet& fs);

// Pinning convention for the one-dimensional solution freedom of the even
// homogeneous orders of V: zero the y2^m coefficient (pin_low) or the y1^m
// coefficient (pin_high).  Focal value signs do not depend on the choice
// where the lower values vanish; exposing both lets tests verify that.
enum class FocalNormalization { pin_low, pin_high };

// Rewrites the field in coordinates where the linear part is exactly
// [[0,-omega],[omega,0]].  "omega" is a reserved symbol subject to the single
// relation omega^2 = omega_sq_of_linear (a function of the parameters only);
// a non-rotational input must not mention it.  The trace must vanish
// identically and omega^2 must certify positive on the box
// (certification_failure otherwise).  An antisymmetric linear part is
// returned unchanged.
PlanarField normalize_center(const PlanarField& pf, const Box& box, int budget = 256);

// Classical Lyapunov-function construction: V = (y1^2+y2^2)/2 + V3 + ... with
// dV/dt = eta4 r^4 + eta6 r^6 + ... + O(r^(2*count+3)); lv_k = eta_{2k+2}.
// Requires rotation-form input (from normalize_center or already that shape);
// the field is used through total degree 2*count + 1.  Only even omega powers
// survive in the results, so they descend to functions of the parameters.
FocalSet focal_values(const PlanarField& pf, int count = 3,
                      FocalNormalization norm = FocalNormalization::pin_low);

// Sign-exact representative of the real part of the complex eigenvalue pair
// of A at mu = mu* + mu_offset, where mu* solves the eigencondition:
//     (M*trace - det) / (2*(trace^2 + M)),
// which equals the exact real part to first order at the eigencondition
// manifold and is identically zero at offset zero.  bf must agree with the
// system at offset zero.  When the offset matrix is fully numeric the complex
// pair is checked via the cubic discriminant; a real pair is degenerate_input.
RatFunc lv0(const LVSystem& sys, const BlockForm& bf, const Var& mu, const Rational& mu_offset);

} // namespace lvc
