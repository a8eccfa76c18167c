#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "lvc/error.hpp"
#include "lvc/polyops.hpp"
#include "test_util.hpp"

using lvc::MPoly;
using lvc::Rational;
using lvc::Var;
using lvc::testutil::Rng;

namespace {

const Var X("x");
const Var Y("y");

MPoly xp() { return MPoly::variable(X); }
MPoly yp() { return MPoly::variable(Y); }

// Independent resultant oracle: Sylvester matrix determinant by exact Gaussian
// elimination, for univariate polynomials with constant coefficients.
Rational sylvester_det(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
    int s = m + n;
    std::vector<std::vector<Rational>> a(static_cast<size_t>(s),
                                         std::vector<Rational>(static_cast<size_t>(s), Rational(0)));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c <= m; ++c) a[r][r + (m - c)] = p[static_cast<size_t>(c)];
    for (int r = 0; r < m; ++r)
        for (int c = 0; c <= n; ++c) a[n + r][r + (n - c)] = q[static_cast<size_t>(c)];
    Rational det(1);
    for (int col = 0; col < s; ++col) {
        int piv = -1;
        for (int r = col; r < s; ++r)
            if (!a[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
            det = -det;
        }
        det = det * a[col][col];
        Rational inv = a[col][col].inv();
        for (int r = col + 1; r < s; ++r) {
            if (a[r][col].is_zero()) continue;
            Rational f = a[r][col] * inv;
            for (int c = col; c < s; ++c)
                a[r][c] = a[r][c] - f * a[col][c];
        }
    }
    return det;
}

std::vector<Rational> dense_coeffs(const MPoly& p, const Var& v) {
    std::vector<Rational> out;
    for (const auto& c : p.coeffs_in(v)) {
        REQUIRE(c.is_constant());
        out.push_back(c.is_zero() ? Rational(0) : c.constant_value());
    }
    return out;
}

} // namespace

TEST_CASE("exact division") {
    MPoly p = xp() * xp() - MPoly(1);
    CHECK(lvc::divide_exact(p, xp() - MPoly(1)) == xp() + MPoly(1));
    CHECK(!lvc::try_divide_exact(xp() * xp() + MPoly(1), xp() - MPoly(1)).has_value());
    // mixed-variable and rational-coefficient division
    MPoly a = (xp() + yp().scaled(Rational(1, 2))) * (xp() * yp() - MPoly(3));
    CHECK(lvc::divide_exact(a, xp() * yp() - MPoly(3)) == xp() + yp().scaled(Rational(1, 2)));
    CHECK_THROWS_AS(lvc::divide_exact(xp(), MPoly()), lvc::invalid_input);
}

TEST_CASE("division identity on random instances") {
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        MPoly q = rng.nonzero_poly({X, Y}, 3, 4);
        MPoly quot = rng.nonzero_poly({X, Y}, 3, 4);
        MPoly p = q * quot;
        auto back = lvc::try_divide_exact(p, q);
        REQUIRE(back.has_value());
        CHECK(*back == quot);
    }
}

TEST_CASE("gcd recovers the expected factors") {
    MPoly g = lvc::poly_gcd(xp() * xp() - MPoly(1),
                            xp() * xp() - xp().scaled(Rational(2)) + MPoly(1));
    CHECK(g == xp() - MPoly(1));

    MPoly p = (xp() + yp()).scaled(Rational(6));
    CHECK(lvc::poly_gcd(p, MPoly()) == xp() + yp());
    CHECK(lvc::poly_gcd(MPoly(), p) == xp() + yp());
}

TEST_CASE("gcd of constructed products recovers the shared factor") {
    Rng rng(32);
    for (int i = 0; i < 25; ++i) {
        MPoly f = lvc::normalize_primitive(rng.nonzero_poly({X, Y}, 2, 3));
        MPoly a = rng.nonzero_poly({X, Y}, 2, 3);
        MPoly b = rng.nonzero_poly({X, Y}, 2, 3);
        MPoly g = lvc::poly_gcd(f * a, f * b);
        // g is a multiple of f; and g divides both products
        CHECK(lvc::try_divide_exact(g, f).has_value());
        CHECK(lvc::try_divide_exact(f * a, g).has_value());
        CHECK(lvc::try_divide_exact(f * b, g).has_value());
    }
}

TEST_CASE("gcd output is primitive with positive leading coefficient") {
    Rng rng(33);
    for (int i = 0; i < 25; ++i) {
        MPoly a = rng.nonzero_poly({X, Y}, 3, 4);
        MPoly b = rng.nonzero_poly({X, Y}, 3, 4);
        MPoly g = lvc::poly_gcd(a, b);
        CHECK(g.leading_coeff().sign() > 0);
        CHECK(g.content() == Rational(1));
        CHECK(lvc::try_divide_exact(a, g).has_value());
        CHECK(lvc::try_divide_exact(b, g).has_value());
    }
}

TEST_CASE("gcd handles disjoint and coprime inputs") {
    CHECK(lvc::poly_gcd(xp() + MPoly(1), yp() + MPoly(2)) == MPoly(Rational(1)));
    CHECK(lvc::poly_gcd(xp(), yp()) == MPoly(Rational(1)));
    // common monomial factor only
    MPoly a = MPoly::monomial(Rational(2), {{X, 3}, {Y, 1}});
    MPoly b = MPoly::monomial(Rational(4), {{X, 1}, {Y, 2}});
    CHECK(lvc::poly_gcd(a, b) == MPoly::monomial(Rational(1), {{X, 1}, {Y, 1}}));
}

TEST_CASE("gcd with large coefficients stays exact") {
    Rational c1 = Rational::from_string("71175864");
    Rational c2 = Rational::from_string("-30452821");
    MPoly f = MPoly::monomial(c1, {{X, 1}, {Y, 1}}) + MPoly(c2);
    MPoly a = f * (xp().pow(3) + yp().scaled(Rational::from_string("1036086857152915319628573370644784")));
    MPoly b = f * (yp().pow(2) - MPoly(Rational::from_string("604462354449619944145534311192809")));
    CHECK(lvc::poly_gcd(a, b) == f);
}

TEST_CASE("pseudo remainder identity") {
    Rng rng(34);
    for (int i = 0; i < 30; ++i) {
        MPoly p = rng.nonzero_poly({X, Y}, 4, 5);
        MPoly q = rng.nonzero_poly({X, Y}, 2, 3);
        int dp = p.degree_in(X), dq = q.degree_in(X);
        if (dq == 0 || dp < dq) continue;
        MPoly r = lvc::prem(p, q, X);
        CHECK(r.degree_in(X) < dq);
        // lc(q)^(dp-dq+1) * p - r is exactly divisible by q
        MPoly lq = q.coeffs_in(X).back();
        MPoly lhs = lq.pow(static_cast<unsigned>(dp - dq + 1)) * p - r;
        CHECK(lvc::try_divide_exact(lhs, q).has_value());
    }
}

TEST_CASE("resultant examples") {
    // substitute x = y into x^2 + y^2 - 1 gives 2y^2 - 1
    MPoly p = xp() * xp() + yp() * yp() - MPoly(1);
    MPoly r = lvc::resultant(p, xp() - yp(), X);
    MPoly expected = yp() * yp() * MPoly(Rational(2)) - MPoly(1);
    CHECK((r == expected || r == -expected));

    Var a("a"), b("b");
    MPoly rr = lvc::resultant(xp() - MPoly::variable(a), xp() - MPoly::variable(b), X);
    MPoly diff = MPoly::variable(a) - MPoly::variable(b);
    CHECK((rr == diff || rr == -diff));

    MPoly sq = xp() * xp() - MPoly(2);
    CHECK(lvc::resultant(sq, sq, X).is_zero());
}

TEST_CASE("resultant with a v-free input follows the power convention") {
    CHECK(lvc::resultant(xp(), yp() + MPoly(1), X) == yp() + MPoly(1));
    CHECK(lvc::resultant(xp() * xp(), yp() + MPoly(1), X) == (yp() + MPoly(1)).pow(2));
    CHECK(lvc::resultant(MPoly(Rational(3)), xp(), X) == MPoly(Rational(3)));
    CHECK_THROWS_AS(lvc::resultant(MPoly(Rational(3)), yp(), X), lvc::invalid_input);
    CHECK_THROWS_AS(lvc::resultant(MPoly(), xp(), X), lvc::invalid_input);
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
    Rng rng(35);
    int done = 0;
    while (done < 25) {
        MPoly p = rng.nonzero_poly({X}, 5, 4);
        MPoly q = rng.nonzero_poly({X}, 4, 3);
        if (p.degree_in(X) == 0 || q.degree_in(X) == 0) continue;
        MPoly r = lvc::resultant(p, q, X);
        Rational expected = sylvester_det(dense_coeffs(p, X), dense_coeffs(q, X));
        REQUIRE(r.is_constant());
        CHECK((r.is_zero() ? Rational(0) : r.constant_value()) == expected);
        ++done;
    }
}

TEST_CASE("bivariate resultant commutes with specialization") {
    Rng rng(36);
    int done = 0;
    while (done < 15) {
        MPoly p = rng.nonzero_poly({X, Y}, 3, 5);
        MPoly q = rng.nonzero_poly({X, Y}, 2, 4);
        if (p.degree_in(X) == 0 || q.degree_in(X) == 0) continue;
        MPoly r = lvc::resultant(p, q, X);
        Rational y0 = rng.rational(7, 3);
        MPoly ps = p.eval_at(Y, y0), qs = q.eval_at(Y, y0);
        // leading x-coefficients must survive the specialization
        if (ps.degree_in(X) != p.degree_in(X) || qs.degree_in(X) != q.degree_in(X)) continue;
        Rational lhs = r.is_zero() ? Rational(0) : r.eval_at(Y, y0).constant_value();
        Rational rhs = sylvester_det(dense_coeffs(ps, X), dense_coeffs(qs, X));
        CHECK(lhs == rhs);
        ++done;
    }
}

TEST_CASE("resultant vanishes exactly on common roots") {
    // p, q share the root x = u for every parameter value
    Var u("u");
    MPoly f = xp() - MPoly::variable(u);
    MPoly p = f * (xp() + MPoly(2));
    MPoly q = f * (xp() * xp() + MPoly::variable(u));
    CHECK(lvc::resultant(p, q, X).is_zero());
}

TEST_CASE("square-free decomposition") {
    MPoly p = (xp() - MPoly(1)).pow(2) * (xp() + MPoly(2));
    auto dec = lvc::squarefree_decompose(p, X);
    REQUIRE(dec.size() == 2);
    // sorted by decreasing multiplicity
    CHECK(dec[0].second == 2);
    CHECK(dec[0].first == xp() - MPoly(1));
    CHECK(dec[1].second == 1);
    CHECK(dec[1].first == xp() + MPoly(2));
}

TEST_CASE("square-free input returns itself with multiplicity 1") {
    MPoly p = xp() * xp() - MPoly(2);
    auto dec = lvc::squarefree_decompose(p, X);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0].second == 1);
    CHECK(dec[0].first == p);
    CHECK(lvc::squarefree_part(p, X) == p);
}

TEST_CASE("random multiplicity patterns are recovered") {
    Rng rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        // distinct linear factors x - k with random multiplicities
        std::vector<long> roots{-3, -1, 0, 2, 5};
        std::map<long, int> mult;
        MPoly p(Rational(1));
        for (long r : roots) {
            int m = static_cast<int>(rng.below(3)); // 0..2
            if (m == 0) continue;
            mult[r] = m;
            p = p * (xp() - MPoly(Rational(r))).pow(static_cast<unsigned>(m));
        }
        if (mult.empty()) continue;
        auto dec = lvc::squarefree_decompose(p, X);
        // product of factor^mult matches p up to content, multiplicities match
        std::map<long, int> got;
        MPoly rebuilt(Rational(1));
        for (const auto& [f, m] : dec) {
            rebuilt = rebuilt * f.pow(static_cast<unsigned>(m));
            for (long r : roots)
                if (f.eval_at(X, Rational(r)).is_zero()) got[r] = m;
        }
        CHECK(got == mult);
        CHECK(lvc::normalize_primitive(rebuilt) == lvc::normalize_primitive(p));
    }
}

TEST_CASE("squarefree part drops repeated factors in one variable of two") {
    MPoly p = (xp() - yp()).pow(3) * (xp() + yp());
    MPoly sf = lvc::squarefree_part(p, X);
    CHECK(lvc::normalize_primitive(sf) ==
          lvc::normalize_primitive((xp() - yp()) * (xp() + yp())));
}

TEST_CASE("normalize_primitive fixes sign and content") {
    MPoly p = (xp().scaled(Rational(-4, 6)) + yp().scaled(Rational(2, 3)));
    MPoly np = lvc::normalize_primitive(p);
    CHECK(np == xp() - yp());
}
