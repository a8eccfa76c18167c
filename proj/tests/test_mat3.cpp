#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lvc/error.hpp"
#include "lvc/mat3.hpp"
#include "test_util.hpp"

using lvc::Mat3;
using lvc::MPoly;
using lvc::RatFunc;
using lvc::Rational;
using lvc::Var;
using lvc::Vec3;
using lvc::testutil::Rng;

namespace {

Mat3 random_rational_matrix(Rng& rng) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = RatFunc(rng.rational(20, 6));
    return m;
}

// Matrix with a couple of symbolic entries mixed in.
Mat3 random_symbolic_matrix(Rng& rng) {
    Var lam("lambda"), n("n");
    Mat3 m = random_rational_matrix(rng);
    m.at(0, 2) = m.at(0, 2) + RatFunc::variable(lam);
    m.at(2, 0) = m.at(2, 0) * RatFunc::variable(n);
    return m;
}

bool is_identity(const Mat3& m) {
    return m == Mat3::identity();
}

} // namespace

TEST_CASE("identity and basic arithmetic") {
    Mat3 id = Mat3::identity();
    CHECK(id.trace() == RatFunc(Rational(3)));
    CHECK(id.det() == RatFunc(Rational(1)));
    CHECK(id.minor_sum() == RatFunc(Rational(3)));
    CHECK(id * id == id);

    Rng rng(71);
    Mat3 a = random_rational_matrix(rng);
    CHECK(a * id == a);
    CHECK(id * a == a);
    CHECK(a - a == Mat3());
    CHECK((a + a) == a.scaled(RatFunc(Rational(2))));
}

TEST_CASE("determinant is multiplicative") {
    Rng rng(72);
    for (int i = 0; i < 10; ++i) {
        Mat3 a = random_rational_matrix(rng);
        Mat3 b = random_rational_matrix(rng);
        CHECK((a * b).det() == a.det() * b.det());
    }
}

TEST_CASE("adjugate identity A*adj(A) = det(A)*I") {
    Rng rng(73);
    for (int i = 0; i < 6; ++i) {
        Mat3 a = i < 3 ? random_rational_matrix(rng) : random_symbolic_matrix(rng);
        Mat3 prod = a * a.adjugate();
        Mat3 expect = Mat3::identity().scaled(a.det());
        CHECK(prod == expect);
        CHECK(a.adjugate() * a == expect);
    }
}

TEST_CASE("inverse round trip") {
    Rng rng(74);
    int done = 0;
    while (done < 5) {
        Mat3 a = random_rational_matrix(rng);
        if (a.det().is_zero()) continue;
        CHECK(is_identity(a * a.inverse()));
        CHECK(is_identity(a.inverse() * a));
        ++done;
    }
}

TEST_CASE("characteristic polynomial coefficients") {
    // det(tI - A) = t^3 - trace t^2 + minor_sum t - det, checked at sample t.
    Rng rng(75);
    for (int i = 0; i < 8; ++i) {
        Mat3 a = random_rational_matrix(rng);
        for (long tv : {0L, 1L, -2L, 5L}) {
            RatFunc t{Rational(tv)};
            Mat3 shifted = Mat3::identity().scaled(t) - a;
            RatFunc expect = t * t * t - a.trace() * t * t + a.minor_sum() * t - a.det();
            CHECK(shifted.det() == expect);
        }
    }
}

TEST_CASE("solve3 solves and rejects singular systems") {
    Rng rng(76);
    int done = 0;
    while (done < 6) {
        Mat3 a = random_rational_matrix(rng);
        if (a.det().is_zero()) continue;
        Vec3 rhs{RatFunc(rng.rational(9, 3)), RatFunc(rng.rational(9, 3)),
                 RatFunc(rng.rational(9, 3))};
        Vec3 x = lvc::solve3(a, rhs);
        Vec3 back = a * x;
        for (int k = 0; k < 3; ++k) CHECK(back[static_cast<size_t>(k)] == rhs[static_cast<size_t>(k)]);
        ++done;
    }

    Mat3 sing; // rank 1
    for (int j = 0; j < 3; ++j) {
        sing.at(0, j) = RatFunc(Rational(j + 1));
        sing.at(1, j) = RatFunc(Rational(2 * (j + 1)));
        sing.at(2, j) = RatFunc(Rational(3 * (j + 1)));
    }
    CHECK_THROWS_AS(lvc::solve3(sing, Vec3{}), lvc::division_by_zero);
    CHECK_THROWS_AS(sing.inverse(), lvc::division_by_zero);
}

TEST_CASE("transpose compatibilities") {
    Rng rng(77);
    Mat3 a = random_symbolic_matrix(rng);
    Mat3 b = random_rational_matrix(rng);
    CHECK(a.transpose().transpose() == a);
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK(a.transpose().det() == a.det());
}
