#pragma once

#include <cstdint>
#include <vector>

#include "lvc/mpoly.hpp"
#include "lvc/rational.hpp"

namespace lvc::testutil {

// Deterministic splitmix64 stream so every test run sees identical cases.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }

    long int_in(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    Rational rational(long max_abs_num = 50, long max_den = 20) {
        long n = int_in(-max_abs_num, max_abs_num);
        long d = int_in(1, max_den);
        return Rational(n, d);
    }

    Rational nonzero_rational(long max_abs_num = 50, long max_den = 20) {
        while (true) {
            Rational r = rational(max_abs_num, max_den);
            if (!r.is_zero()) return r;
        }
    }

    // Sparse random polynomial in the given variables.
    MPoly poly(const std::vector<Var>& vars, int max_deg, int terms, long coeff_range = 9) {
        MPoly p;
        for (int t = 0; t < terms; ++t) {
            Rational c(int_in(-coeff_range, coeff_range));
            if (c.is_zero()) continue;
            std::vector<std::pair<Var, int>> powers;
            for (const auto& v : vars) {
                int e = static_cast<int>(below(static_cast<uint64_t>(max_deg + 1)));
                if (e > 0) powers.emplace_back(v, e);
            }
            p += MPoly::monomial(c, powers);
        }
        return p;
    }

    MPoly nonzero_poly(const std::vector<Var>& vars, int max_deg, int terms,
                       long coeff_range = 9) {
        while (true) {
            MPoly p = poly(vars, max_deg, terms, coeff_range);
            if (!p.is_zero()) return p;
        }
    }

  private:
    uint64_t state_;
};

} // namespace lvc::testutil
