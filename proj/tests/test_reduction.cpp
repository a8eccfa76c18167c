#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvc/reduction.hpp"
#include "lvc/parser.hpp"
#include "test_util.hpp"

using namespace lvc;
using testutil::Rng;

namespace {

LVSystem paper_system() {
    LVSystem sys;
    sys.parameters = {Var("lambda"), Var("n"), Var("mu")};
    const char* rows[3][3] = {{"-17/24", "-2", "-lambda"},
                              {"-33/23", "-10", "-mu"},
                              {"-n", "-21*n", "-99/37"}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sys.A.at(i, j) = parse_ratfunc(rows[i][j]);
    return sys;
}

LVSystem paper_system_on_manifold() {
    LVSystem sys = paper_system();
    RatFunc mu = eigencondition_solve(sys, Var("mu"));
    std::map<Var, RatFunc> sub{{Var("mu"), mu}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sys.A.at(i, j) = sys.A.at(i, j).substitute(sub);
    sys.parameters = {Var("lambda"), Var("n")};
    return sys;
}

Mat3 paper_T() {
    const char* rows[3][3] = {
        {"-33/23", "3005/888", "(607835112*lambda*n - 7773334823)/(4864016448*n)"},
        {"-n", "-21*n", "257/24"},
        {"175916243/65729952 + 4791493*lambda*n/1825832", "21*lambda*n + 257/12",
         "(7622102628*lambda*n + 7773334823)/(2432008224*n)"}};
    Mat3 T;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T.at(i, j) = parse_ratfunc(rows[i][j]);
    return T;
}

// rational matrix satisfying the eigencondition by construction: conjugate of
// a block form with 2x2 part [[0,-w],[1,0]] and corner s
LVSystem conjugated_block(Rng& rng, const Rational& w, const Rational& s) {
    Mat3 C0;
    C0.at(0, 1) = RatFunc(-w);
    C0.at(1, 0) = RatFunc(Rational(1));
    C0.at(2, 2) = RatFunc(s);
    while (true) {
        Mat3 M;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M.at(i, j) = RatFunc(rng.rational(5, 3));
        if (M.det().is_zero()) continue;
        LVSystem sys;
        sys.A = (M.inverse() * C0) * M;
        return sys;
    }
}

RatFunc rf(const char* s) { return parse_ratfunc(s); }

RatFunc yvar(const char* s) { return RatFunc(MPoly::variable(s)); }

// block form record for hand-built fields
BlockForm manual_block(const Mat3& C) {
    BlockForm bf;
    bf.T = Mat3::identity();
    bf.C = C;
    bf.omega_sq = C.at(0, 0) * C.at(1, 1) - C.at(0, 1) * C.at(1, 0);
    bf.lambda_real = C.at(2, 2);
    return bf;
}

TransformedField manual_field(const RatFunc& f1, const RatFunc& f2, const RatFunc& f3,
                              const Mat3& C) {
    TransformedField tf;
    tf.f = {f1, f2, f3};
    tf.y = {Var("y1"), Var("y2"), Var("y3")};
    tf.block = manual_block(C);
    return tf;
}

Mat3 rotation_block(const Rational& omega_sq, const Rational& rho) {
    Mat3 C;
    C.at(0, 1) = RatFunc(-omega_sq);
    C.at(1, 0) = RatFunc(Rational(1));
    C.at(2, 2) = RatFunc(rho);
    return C;
}

} // namespace

TEST_CASE("eigencondition solve") {
    LVSystem sys = paper_system();
    RatFunc mu = eigencondition_solve(sys, Var("mu"));
    CHECK(mu == rf("-(607835112*lambda*n - 7773334823)/(4864016448*n)"));

    // substituted system satisfies the condition identically
    LVSystem on = paper_system_on_manifold();
    CHECK(eigencondition_residual(on).is_zero());
    CHECK_THROWS_AS(eigencondition_solve(on, Var("lambda")), degenerate_input);

    // independent route: the residual is linear in mu, so two point values of
    // an independently cofactor-expanded determinant pin the solution
    Rng rng(91);
    for (int iter = 0; iter < 6; ++iter) {
        Rational a[3][3];
        for (auto& row : a)
            for (auto& e : row) e = rng.rational(9, 5);
        LVSystem s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.A.at(i, j) = RatFunc(a[i][j]);
        s.A.at(1, 2) = -yvar("mu");
        auto residual_at = [&](const Rational& mu_val) {
            Rational m[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
            m[1][2] = -mu_val;
            Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            Rational minors = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) +
                              (m[0][0] * m[2][2] - m[0][2] * m[2][0]) +
                              (m[0][0] * m[1][1] - m[0][1] * m[1][0]);
            Rational tr = m[0][0] + m[1][1] + m[2][2];
            return det - minors * tr;
        };
        Rational e0 = residual_at(Rational(0));
        Rational slope = residual_at(Rational(1)) - e0;
        if (slope.is_zero()) continue;
        RatFunc got = eigencondition_solve(s, Var("mu"));
        CHECK(got == RatFunc(-e0 / slope));
    }

    // degenerate shapes
    LVSystem nonlinear;
    nonlinear.A.at(0, 0) = -yvar("mu");
    nonlinear.A.at(1, 1) = -yvar("mu");
    nonlinear.A.at(2, 2) = RatFunc(Rational(-2));
    nonlinear.A.at(0, 1) = RatFunc(Rational(-1));
    nonlinear.A.at(1, 0) = RatFunc(Rational(-3));
    CHECK_THROWS_AS(eigencondition_solve(nonlinear, Var("mu")), degenerate_input);

    LVSystem absent;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) absent.A.at(i, j) = RatFunc(Rational(-1 - i - j));
    CHECK_THROWS_AS(eigencondition_solve(absent, Var("mu")), degenerate_input);
}

TEST_CASE("canonical block diagonalization") {
    LVSystem sys = paper_system_on_manifold();
    BlockForm bf = block_diagonalize(sys);

    CHECK(bf.lambda_real == rf("-11885/888"));
    CHECK(bf.omega_sq == sys.A.minor_sum());
    CHECK(bf.C.at(0, 0).is_zero());
    CHECK(bf.C.at(0, 1) == -bf.omega_sq);
    CHECK(bf.C.at(1, 0) == RatFunc(Rational(1)));
    CHECK(bf.C.at(2, 2) == bf.lambda_real);
    CHECK(bf.T * sys.A == bf.C * bf.T);
    CHECK(!bf.T.det().is_zero());
    CHECK(bf.C.det() == sys.A.det());
    CHECK(bf.C.trace() == sys.A.trace());

    // conjugated block forms recover the invariants of the seed
    Rng rng(92);
    for (int iter = 0; iter < 5; ++iter) {
        Rational w(rng.int_in(1, 30), rng.int_in(1, 7));
        Rational s = rng.nonzero_rational(9, 5);
        LVSystem conj = conjugated_block(rng, w, s);
        BlockForm cb = block_diagonalize(conj);
        CHECK(cb.omega_sq == RatFunc(w));
        CHECK(cb.lambda_real == RatFunc(s));
        CHECK((cb.C.at(0, 0) + cb.C.at(1, 1)).is_zero());
        CHECK(cb.T * conj.A == cb.C * cb.T);
        CHECK(cb.C.det() == conj.A.det());
        CHECK(cb.C.trace() == conj.A.trace());
    }

    // a matrix that breaks the eigencondition is rejected
    LVSystem bad;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) bad.A.at(i, j) = RatFunc(Rational(-(i + 2 * j + 1)));
    CHECK_THROWS_AS(block_diagonalize(bad), degenerate_input);
}

TEST_CASE("user-supplied transformation matrices") {
    // already block shaped: identity verifies
    LVSystem blk;
    blk.A.at(0, 0) = rf("2/3");
    blk.A.at(0, 1) = rf("-7");
    blk.A.at(1, 0) = rf("1/2");
    blk.A.at(1, 1) = rf("-2/3");
    blk.A.at(2, 2) = rf("-3");
    BlockForm bf = block_diagonalize(blk, Mat3::identity());
    CHECK(bf.C == blk.A);
    CHECK(bf.lambda_real == rf("-3"));
    CHECK(bf.omega_sq == rf("-4/9 + 7/2"));

    // the printed golden transformation reproduces the printed block matrix
    LVSystem sys = paper_system_on_manifold();
    BlockForm pb = block_diagonalize(sys, paper_T());
    CHECK(pb.C.at(0, 0) == rf("1014026/684499"));
    CHECK(pb.C.at(0, 1) ==
          rf("(416062526328888*lambda*n + 384134040047899)/(3329414394639552*n)"));
    CHECK(pb.C.at(1, 0) == rf("-8896983*n/684499"));
    CHECK(pb.C.at(1, 1) == rf("-1014026/684499"));
    CHECK(pb.C.at(2, 2) == rf("-11885/888"));
    for (auto [i, j] : {std::pair{0, 2}, {1, 2}, {2, 0}, {2, 1}}) CHECK(pb.C.at(i, j).is_zero());
    // same invariants as the canonical route
    BlockForm cb = block_diagonalize(sys);
    CHECK(pb.omega_sq == cb.omega_sq);
    CHECK(pb.lambda_real == cb.lambda_real);

    // matrices that do not block-diagonalize are rejected
    Mat3 shuffle; // permutation moving the real axis into the plane
    shuffle.at(0, 2) = RatFunc(Rational(1));
    shuffle.at(1, 1) = RatFunc(Rational(1));
    shuffle.at(2, 0) = RatFunc(Rational(1));
    CHECK_THROWS_AS(block_diagonalize(sys, shuffle), degenerate_input);
    Mat3 singular;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) singular.at(i, j) = RatFunc(Rational(i + j));
    CHECK_THROWS_AS(block_diagonalize(sys, singular), degenerate_input);
}

TEST_CASE("transformed field structure and pushforward") {
    Rng rng(93);
    LVSystem sys = conjugated_block(rng, Rational(5, 2), Rational(-3));
    BlockForm bf = block_diagonalize(sys);
    TransformedField tf = transform_field(sys, bf);
    std::vector<Var> yv{tf.y[0], tf.y[1], tf.y[2]};

    // linear part equals C exactly; field vanishes at 0; nothing above deg 2
    for (int i = 0; i < 3; ++i) {
        RatFunc lin = degree_part(tf.f[static_cast<size_t>(i)], yv, 1);
        CHECK(monomial_coeff(lin, yv, {1, 0, 0}) == bf.C.at(i, 0));
        CHECK(monomial_coeff(lin, yv, {0, 1, 0}) == bf.C.at(i, 1));
        CHECK(monomial_coeff(lin, yv, {0, 0, 1}) == bf.C.at(i, 2));
    }
    for (const RatFunc& f : tf.f) {
        CHECK(degree_part(f, yv, 0).is_zero());
        CHECK((f - truncate_degree(f, yv, 2)).is_zero());
    }

    // pushforward at rational points: T*(x-field at x) == y-field at T(x-1)
    auto x = std::array<Var, 3>{Var("x1"), Var("x2"), Var("x3")};
    auto fx = vector_field(sys, x);
    for (int iter = 0; iter < 8; ++iter) {
        std::map<Var, Rational> xp{{x[0], Rational(1) + rng.rational(3, 17)},
                                   {x[1], Rational(1) + rng.rational(3, 17)},
                                   {x[2], Rational(1) + rng.rational(3, 17)}};
        std::array<Rational, 3> u{xp.at(x[0]) - 1, xp.at(x[1]) - 1, xp.at(x[2]) - 1};
        std::map<Var, Rational> yp;
        for (int i = 0; i < 3; ++i) {
            Rational acc;
            for (int j = 0; j < 3; ++j)
                acc += bf.T.at(i, j).eval({}) * u[static_cast<size_t>(j)];
            yp[tf.y[static_cast<size_t>(i)]] = acc;
        }
        for (int i = 0; i < 3; ++i) {
            Rational push;
            for (int j = 0; j < 3; ++j)
                push += bf.T.at(i, j).eval({}) * fx[static_cast<size_t>(j)].eval(xp);
            CHECK(tf.f[static_cast<size_t>(i)].eval(yp) == push);
        }
    }

    // same check once on the parametric golden system at a rational point
    LVSystem paper = paper_system_on_manifold();
    BlockForm pbf = block_diagonalize(paper);
    TransformedField ptf = transform_field(paper, pbf);
    std::map<Var, Rational> param{{Var("lambda"), Rational(5)}, {Var("n"), Rational(1, 3)}};
    auto fpx = vector_field(paper, x);
    std::map<Var, Rational> xp = param;
    xp[x[0]] = Rational(21, 20);
    xp[x[1]] = Rational(99, 100);
    xp[x[2]] = Rational(51, 50);
    std::array<Rational, 3> u{Rational(1, 20), Rational(-1, 100), Rational(1, 50)};
    std::map<Var, Rational> yp = param;
    for (int i = 0; i < 3; ++i) {
        Rational acc;
        for (int j = 0; j < 3; ++j)
            acc += pbf.T.at(i, j).eval(param) * u[static_cast<size_t>(j)];
        yp[ptf.y[static_cast<size_t>(i)]] = acc;
    }
    for (int i = 0; i < 3; ++i) {
        Rational push;
        for (int j = 0; j < 3; ++j)
            push += pbf.T.at(i, j).eval(param) * fpx[static_cast<size_t>(j)].eval(xp);
        CHECK(ptf.f[static_cast<size_t>(i)].eval(yp) == push);
    }
}

TEST_CASE("center manifold solves") {
    RatFunc y1 = yvar("y1"), y2 = yvar("y2"), y3 = yvar("y3");

    // every f3 term carries y3: the graph is identically zero
    TransformedField flat = manual_field(-y2 + y1 * y1, y1, -y3 + y1 * y3,
                                         rotation_block(Rational(1), Rational(-1)));
    CenterManifold trivial = center_manifold(flat, 6);
    CHECK(trivial.h.is_zero());
    CHECK(invariance_residual(flat, trivial.h).is_zero());

    // quadratic forcing: solved by undetermined coefficients
    TransformedField forced =
        manual_field(-y2, y1, -y3 + y1 * y1, rotation_block(Rational(1), Rational(-1)));
    CenterManifold cm = center_manifold(forced, 2);
    CHECK(cm.h == rf("3/5") * y1 * y1 + rf("2/5") * y1 * y2 + rf("2/5") * y2 * y2);
    REQUIRE(cm.coeffs.size() == 1);
    CHECK(cm.coeffs[0][0] == rf("2/5")); // y2^2
    CHECK(cm.coeffs[0][1] == rf("2/5")); // y1*y2
    CHECK(cm.coeffs[0][2] == rf("3/5")); // y1^2

    // with quadratic y3-couplings the higher orders activate; the residual
    // still clears every degree through the requested order
    TransformedField deep_field = manual_field(-y2 + y3 * y3, y1 + y1 * y3, -y3 + y1 * y1,
                                               rotation_block(Rational(1), Rational(-1)));
    CenterManifold deep = center_manifold(deep_field, 6);
    std::vector<Var> yplane{Var("y1"), Var("y2")};
    CHECK(min_degree_in(invariance_residual(deep_field, deep.h), yplane) >= 7);
    CHECK(degree_part(deep.h, yplane, 2) ==
          rf("3/5") * y1 * y1 + rf("2/5") * y1 * y2 + rf("2/5") * y2 * y2);
    CHECK(!degree_part(deep.h, yplane, 4).is_zero());

    // resonance: diagonal hyperbolic block with rho matching an eigenvalue of
    // the order-2 action
    Mat3 res;
    res.at(0, 0) = RatFunc(Rational(1));
    res.at(1, 1) = RatFunc(Rational(-1));
    res.at(2, 2) = RatFunc(Rational(2));
    TransformedField resonant = manual_field(y1, -y2, rf("2") * y3 + y1 * y1, res);
    CHECK_THROWS_WITH_AS(center_manifold(resonant, 2),
                         "center_manifold: singular linear system at order 2", degenerate_input);

    CHECK_THROWS_AS(center_manifold(forced, 1), invalid_input);

    // zero real eigenvalue is rejected
    TransformedField flatrho =
        manual_field(-y2, y1, y1 * y1, rotation_block(Rational(1), Rational(0)));
    CHECK_THROWS_AS(center_manifold(flatrho, 2), degenerate_input);

    // shape violation is rejected
    TransformedField leaky =
        manual_field(-y2 + y3, y1, -y3, rotation_block(Rational(1), Rational(-1)));
    CHECK_THROWS_AS(center_manifold(leaky, 2), invalid_input);
}

TEST_CASE("center manifold on an exactly invariant graph") {
    // f1 = -y2, f2 = y1 rotate the plane, so the paraboloid y3 = y1^2 + y2^2
    // is exactly invariant for f3 = -(y3 - y1^2 - y2^2); the order-by-order
    // solve must recover it with zero residual
    RatFunc y1 = yvar("y1"), y2 = yvar("y2"), y3 = yvar("y3");
    RatFunc graph = y1 * y1 + y2 * y2;
    TransformedField tf = manual_field(-y2, y1, -y3 + graph,
                                       rotation_block(Rational(1), Rational(-1)));
    REQUIRE(invariance_residual(tf, graph).is_zero());
    CenterManifold cm = center_manifold(tf, 6);
    CHECK(cm.h == graph);
    CHECK(invariance_residual(tf, cm.h).is_zero());
}

TEST_CASE("reduction to the plane") {
    RatFunc y1 = yvar("y1"), y2 = yvar("y2"), y3 = yvar("y3");

    // h == 0: the planar field is f1, f2 with y3 dropped
    TransformedField flat = manual_field(-y2 + y1 * y1 + y1 * y3, y1 + y2 * y3, -y3 + y1 * y3,
                                         rotation_block(Rational(1), Rational(-1)));
    CenterManifold trivial = center_manifold(flat, 4);
    REQUIRE(trivial.h.is_zero());
    PlanarField pf = reduce_to_plane(flat, trivial);
    CHECK(pf.f[0] == -y2 + y1 * y1);
    CHECK(pf.f[1] == y1);
    CHECK((pf.linear[0][0] + pf.linear[1][1]).is_zero());
    CHECK(pf.omega_sq_of_linear == RatFunc(Rational(1)));

    // nontrivial h: degree-2 slice of the planar field equals the degree-2
    // slice of the input with y3 = 0 (independent route: h starts at degree 2
    // and f1, f2 have no linear y3 term)
    TransformedField forced = manual_field(-y2 + y1 * y3 + y2 * y2, y1 + y3 * y3 - y1 * y2,
                                           -y3 + y1 * y1, rotation_block(Rational(1), Rational(-1)));
    CenterManifold cm = center_manifold(forced, 6);
    PlanarField pf2 = reduce_to_plane(forced, cm);
    std::vector<Var> yplane{Var("y1"), Var("y2")};
    std::map<Var, RatFunc> drop{{Var("y3"), RatFunc()}};
    for (size_t i = 0; i < 2; ++i) {
        CHECK(degree_part(pf2.f[i], yplane, 2) ==
              degree_part(forced.f[i].substitute(drop), yplane, 2));
        // truncation cap holds
        CHECK((pf2.f[i] - truncate_degree(pf2.f[i], yplane, 7)).is_zero());
    }
    // linear part survives reduction
    CHECK(pf2.linear[0][1] == RatFunc(Rational(-1)));
    CHECK(pf2.linear[1][0] == RatFunc(Rational(1)));
    CHECK(pf2.linear[0][0].is_zero());
    CHECK(pf2.linear[1][1].is_zero());
}
