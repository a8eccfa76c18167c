#include "lvc/rational.hpp"

#include <cctype>
#include <ostream>

namespace lvc {

Rational::Rational(long num, long den) {
    if (den == 0) throw division_by_zero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw division_by_zero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw division_by_zero("rational division");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw division_by_zero("inverse of zero");
    return Rational(mpq_class(1) / q_);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), k);
    Rational r(n, d);
    return invert ? r.inv() : r;
}

Rational Rational::from_string(std::string_view s) {
    // Trim whitespace.
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw invalid_input("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        std::string ns(s.substr(0, slash)), ds(s.substr(slash + 1));
        try {
            mpz_class n(ns, 10), d(ds, 10); // explicit base: no octal auto-detection
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw invalid_input("bad rational literal: " + std::string(s));
        }
    }

    // Integer, decimal or scientific form.
    std::string body(s);
    long exp10 = 0;
    auto epos = body.find_first_of("eE");
    if (epos != std::string::npos) {
        try {
            exp10 = std::stol(body.substr(epos + 1));
        } catch (...) {
            throw invalid_input("bad exponent in rational literal: " + std::string(s));
        }
        body = body.substr(0, epos);
    }
    auto dot = body.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(body.size() - dot - 1);
        body.erase(dot, 1);
    }
    if (body.empty() || body == "-" || body == "+")
        throw invalid_input("bad rational literal: " + std::string(s));
    mpz_class mant;
    try {
        mant = mpz_class(body, 10);
    } catch (const std::invalid_argument&) {
        throw invalid_input("bad rational literal: " + std::string(s));
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? Rational(mant, scale) : Rational(mant * scale, mpz_class(1));
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

} // namespace lvc
