#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "lvc/error.hpp"
#include "lvc/polyops.hpp"
#include "lvc/ratfunc.hpp"
#include "test_util.hpp"

using lvc::Interval;
using lvc::MPoly;
using lvc::RatFunc;
using lvc::Rational;
using lvc::Var;
using lvc::testutil::Rng;

namespace {

const Var X("x");
const Var Y("y");

MPoly xp() { return MPoly::variable(X); }
MPoly yp() { return MPoly::variable(Y); }

RatFunc random_ratfunc(Rng& rng) {
    MPoly n = rng.poly({X, Y}, 2, 3);
    MPoly d = rng.nonzero_poly({X, Y}, 2, 3);
    return RatFunc(n, d);
}

} // namespace

TEST_CASE("construction cancels the polynomial gcd") {
    // (3x^2 - 3) / (6x - 6) = (x + 1) / 2
    RatFunc f(xp() * xp() * MPoly(Rational(3)) - MPoly(3), xp() * MPoly(Rational(6)) - MPoly(6));
    CHECK(f.num() == xp() + MPoly(1));
    CHECK(f.den() == MPoly(Rational(2)));
}

TEST_CASE("denominator leading coefficient is positive and content is joint") {
    RatFunc f(xp(), MPoly(1) - yp()); // den = -y + 1 flips to y - 1
    CHECK(f.den() == yp() - MPoly(1));
    CHECK(f.num() == -xp());

    // joint integer content 1; numerator carries no separate scaling
    RatFunc g(xp().scaled(Rational(2, 3)), yp().scaled(Rational(4, 3)));
    CHECK(g.num() == xp());
    CHECK(g.den() == yp().scaled(Rational(2)));
}

TEST_CASE("zero and constants") {
    CHECK(RatFunc().is_zero());
    CHECK(RatFunc().den() == MPoly(1));
    RatFunc c(Rational(-7, 3));
    CHECK(c.is_constant());
    CHECK(c.constant_value() == Rational(-7, 3));
    CHECK_THROWS_AS(RatFunc(xp(), MPoly()), lvc::division_by_zero);
}

TEST_CASE("normalization is idempotent") {
    Rng rng(51);
    for (int i = 0; i < 30; ++i) {
        RatFunc f = random_ratfunc(rng);
        RatFunc g(f.num(), f.den());
        CHECK(f == g);
    }
}

TEST_CASE("field laws hold exactly") {
    Rng rng(52);
    for (int i = 0; i < 25; ++i) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng), c = random_ratfunc(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(b * b.inv() == RatFunc(Rational(1)));
        }
    }
}

TEST_CASE("results remain reduced after arithmetic") {
    Rng rng(53);
    for (int i = 0; i < 20; ++i) {
        RatFunc a = random_ratfunc(rng), b = random_ratfunc(rng);
        for (const RatFunc& r : {a + b, a * b, a - b}) {
            if (r.is_zero()) continue;
            MPoly g = lvc::poly_gcd(r.num(), r.den());
            CHECK(g.is_constant());
            CHECK(r.den().leading_coeff().sign() > 0);
            // Canonical form scales num and den jointly into integer
            // polynomials whose contents are coprime (not each primitive
            // alone, which would forbid e.g. (2*x)/(3*y)).
            Rational cn = r.num().content(), cd = r.den().content();
            CHECK(cn.den() == 1);
            CHECK(cd.den() == 1);
            mpz_class joint;
            mpz_gcd(joint.get_mpz_t(), cn.num().get_mpz_t(), cd.num().get_mpz_t());
            CHECK(joint == 1);
        }
    }
}

TEST_CASE("evaluation matches num/den evaluation") {
    Rng rng(54);
    for (int i = 0; i < 30; ++i) {
        RatFunc f = random_ratfunc(rng);
        std::map<Var, Rational> pt{{X, rng.rational(9, 4)}, {Y, rng.rational(9, 4)}};
        Rational d = f.den().eval(pt);
        if (d.is_zero()) continue;
        CHECK(f.eval(pt) == f.num().eval(pt) / d);
    }
}

TEST_CASE("evaluation at a denominator zero is a typed error") {
    RatFunc f(MPoly(1), xp());
    std::map<Var, Rational> pt{{X, Rational(0)}};
    CHECK_THROWS_AS(f.eval(pt), lvc::division_by_zero);
}

TEST_CASE("interval evaluation is sound") {
    Rng rng(55);
    int done = 0;
    while (done < 30) {
        RatFunc f = random_ratfunc(rng);
        Rational ax = rng.rational(9, 4), wx = rng.rational(1, 4).abs();
        Rational ay = rng.rational(9, 4), wy = rng.rational(1, 4).abs();
        std::map<Var, Interval> box{{X, Interval{ax, ax + wx}}, {Y, Interval{ay, ay + wy}}};
        Interval denv = f.den().eval_interval(box);
        if (denv.sign() != lvc::Sign::positive && denv.sign() != lvc::Sign::negative) continue;
        Interval v = f.eval_interval(box);
        for (const auto& t : {Rational(0), Rational(1, 2), Rational(1)}) {
            std::map<Var, Rational> pt{{X, ax + wx * t}, {Y, ay + wy * t}};
            CHECK(v.contains(f.eval(pt)));
        }
        ++done;
    }
}

TEST_CASE("derivative follows the quotient rule") {
    Rng rng(56);
    for (int i = 0; i < 15; ++i) {
        RatFunc f = random_ratfunc(rng), g = random_ratfunc(rng);
        CHECK((f * g).derivative(X) == f.derivative(X) * g + f * g.derivative(X));
        CHECK((f + g).derivative(Y) == f.derivative(Y) + g.derivative(Y));
    }
    RatFunc inv_x(MPoly(1), xp());
    RatFunc d = inv_x.derivative(X);
    CHECK(d == RatFunc(MPoly(Rational(-1)), xp() * xp()));
}

TEST_CASE("substitution composes with evaluation") {
    Rng rng(57);
    Var z("z");
    int done = 0;
    while (done < 20) {
        RatFunc f = random_ratfunc(rng);
        RatFunc gx(rng.poly({z}, 2, 3), rng.nonzero_poly({z}, 1, 2));
        std::map<Var, RatFunc> sub{{X, gx}};
        Rational z0 = rng.rational(7, 3);
        std::map<Var, Rational> zpt{{z, z0}, {Y, rng.rational(7, 3)}};
        Rational gval;
        try {
            gval = gx.eval(zpt);
            RatFunc composed = f.substitute(sub);
            std::map<Var, Rational> fpt{{X, gval}, {Y, zpt[Y]}};
            Rational direct = f.eval(fpt);
            CHECK(composed.eval(zpt) == direct);
        } catch (const lvc::division_by_zero&) {
            continue; // poles at the sample point: pick another instance
        }
        ++done;
    }
}

TEST_CASE("the printed model formula normalizes to the published coefficients") {
    // -(607835112*lambda*n - 7773334823) / (4864016448*n) keeps exactly these
    // integers under joint-content normalization
    Var L("lambda"), N("n");
    MPoly num = MPoly::monomial(Rational::from_string("-607835112"), {{L, 1}, {N, 1}}) +
                MPoly(Rational::from_string("7773334823"));
    MPoly den = MPoly::monomial(Rational::from_string("4864016448"), {{N, 1}});
    RatFunc mu(num, den);
    CHECK(mu.num() == num);
    CHECK(mu.den() == den);
    // and scaled presentations of the same quotient normalize back to it
    RatFunc mu2(num.scaled(Rational(-3, 7)), den.scaled(Rational(-3, 7)));
    CHECK(mu2 == mu);
}

TEST_CASE("canonical text form") {
    RatFunc f(xp() + MPoly(1), yp().scaled(Rational(2)));
    CHECK(f.str() == "(x + 1) / (2*y)");
    RatFunc p(xp() - yp());
    CHECK(p.str() == "x - y");
}
