#include "lvc/polyops.hpp"

#include <algorithm>
#include <cstdint>

namespace lvc {

namespace {

using Exps = MPoly::Exps;

bool exps_divides(const Exps& a, const Exps& b) {
    // a | b componentwise
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Modular pre-test: certify deg_v(gcd) == 0 for every variable cheaply.
// ---------------------------------------------------------------------------

constexpr uint64_t kP = (uint64_t(1) << 61) - 1; // Mersenne prime

uint64_t mulmod(uint64_t a, uint64_t b) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % kP);
}

uint64_t powmod(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    a %= kP;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t invmod(uint64_t a) { return powmod(a, kP - 2); }

const mpz_class& prime_mpz() {
    static const mpz_class p = [] {
        mpz_class v = 1;
        v <<= 61;
        v -= 1;
        return v;
    }();
    return p;
}

// Image of a rational mod kP; returns false if the denominator vanishes.
bool rat_mod(const Rational& r, uint64_t& out) {
    mpz_class nm, dm;
    mpz_mod(nm.get_mpz_t(), r.num().get_mpz_t(), prime_mpz().get_mpz_t());
    mpz_mod(dm.get_mpz_t(), r.den().get_mpz_t(), prime_mpz().get_mpz_t());
    uint64_t du = mpz_get_ui(dm.get_mpz_t());
    if (du == 0) return false;
    out = mulmod(mpz_get_ui(nm.get_mpz_t()), invmod(du));
    return true;
}

// Dense univariate image of p mod kP with all variables but v specialized at the
// given points.  Returns empty on denominator collision or missing point.
std::vector<uint64_t> univariate_image(const MPoly& p, const Var& v,
                                       const std::vector<std::pair<Var, uint64_t>>& point) {
    int dv = p.degree_in(v);
    std::vector<uint64_t> out(static_cast<size_t>(dv) + 1, 0);
    const auto& vars = p.vars();
    size_t vi = vars.size();
    std::vector<uint64_t> vals(vars.size(), 0);
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == v) {
            vi = i;
            continue;
        }
        bool found = false;
        for (const auto& [w, x] : point)
            if (w == vars[i]) {
                vals[i] = x % kP;
                found = true;
            }
        if (!found && p.uses(vars[i])) return {};
    }
    for (const auto& [e, c] : p.terms()) {
        uint64_t cm = 0;
        if (!rat_mod(c, cm)) return {};
        uint64_t m = cm;
        for (size_t i = 0; i < e.size(); ++i) {
            if (i == vi || e[i] == 0) continue;
            m = mulmod(m, powmod(vals[i], static_cast<uint64_t>(e[i])));
        }
        size_t k = (vi < vars.size()) ? static_cast<size_t>(e[vi]) : 0;
        out[k] = (out[k] + m) % kP;
    }
    return out;
}

int mod_degree(const std::vector<uint64_t>& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (f[i] != 0) return static_cast<int>(i);
    return -1;
}

std::vector<uint64_t> gcd_mod(std::vector<uint64_t> a, std::vector<uint64_t> b) {
    auto trim = [](std::vector<uint64_t>& f) {
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        uint64_t inv_lb = invmod(b.back());
        while (a.size() >= b.size()) {
            uint64_t f = mulmod(a.back(), inv_lb);
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = mulmod(f, b[i]);
                a[off + i] = (a[off + i] + kP - sub) % kP;
            }
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
        trim(b);
    }
    return a;
}

// True if deg_v(gcd(a, b)) is certified zero via a modular specialization.
bool modular_gcd_trivial_in(const MPoly& a, const MPoly& b, const Var& v) {
    static const uint64_t probes[][6] = {
        {3, 5, 7, 11, 13, 17}, {19, 23, 29, 31, 37, 41}, {43, 47, 53, 59, 61, 67}};
    std::vector<Var> others;
    for (const MPoly* p : {&a, &b})
        for (const auto& w : p->vars())
            if (!(w == v) && std::find(others.begin(), others.end(), w) == others.end())
                others.push_back(w);
    int da = a.degree_in(v), db = b.degree_in(v);
    for (const auto& probe : probes) {
        std::vector<std::pair<Var, uint64_t>> point;
        for (size_t i = 0; i < others.size(); ++i) point.emplace_back(others[i], probe[i % 6]);
        auto ia = univariate_image(a, v, point);
        auto ib = univariate_image(b, v, point);
        if (ia.empty() || ib.empty()) continue;
        // The degree argument needs one surviving leading coefficient.
        if (mod_degree(ia) != da && mod_degree(ib) != db) continue;
        auto g = gcd_mod(ia, ib);
        if (mod_degree(g) == 0) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Heuristic evaluation gcd (certified by trial division).
// ---------------------------------------------------------------------------

mpz_class int_height(const MPoly& p) {
    mpz_class h = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_class a = abs(c.num());
        if (a > h) h = a;
    }
    return h;
}

// Balanced base-xi digit of e (integer-coefficient polynomial); replaces e by
// (e - digit)/xi.
MPoly take_digit(MPoly& e, const mpz_class& xi) {
    mpz_class half = xi / 2;
    MPoly::TermMap dterms;
    for (const auto& [ex, c] : e.terms()) {
        mpz_class m;
        mpz_fdiv_r(m.get_mpz_t(), c.num().get_mpz_t(), xi.get_mpz_t());
        if (m > half) m -= xi;
        if (m != 0) dterms.emplace(ex, Rational(m, mpz_class(1)));
    }
    MPoly digit = MPoly::build(e.vars(), std::move(dterms));
    e = (e - digit).scaled(Rational(mpz_class(1), xi));
    return digit;
}

struct HeuristicFailed {};

MPoly gcdheu(const MPoly& a, const MPoly& b, int depth) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) {
        mpz_class ga = a.is_constant() ? mpz_class(abs(a.constant_value().num()))
                                       : a.content().num();
        mpz_class gb = b.is_constant() ? mpz_class(abs(b.constant_value().num()))
                                       : b.content().num();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
        return MPoly(Rational(g, mpz_class(1)));
    }
    if (depth > 8) throw HeuristicFailed{};
    Var v = a.vars().front();
    if (!a.uses(v)) v = b.vars().front();
    if (!b.uses(v) || !a.uses(v)) {
        // gcd cannot involve v; fold it into the v-content of the polynomial using it.
        const MPoly& user = a.uses(v) ? a : b;
        const MPoly& other = a.uses(v) ? b : a;
        MPoly g = other;
        for (const auto& c : user.coeffs_in(v)) {
            if (c.is_zero()) continue;
            g = gcdheu(g, c, depth + 1);
            if (g.is_constant()) break;
        }
        return g;
    }

    mpz_class ha = int_height(a), hb = int_height(b);
    mpz_class xi = 2 * (ha < hb ? ha : hb) + 2;
    if (xi < 4) xi = 4;
    int deg_cap = std::min(a.degree_in(v), b.degree_in(v));
    for (int attempt = 0; attempt < 6; ++attempt) {
        MPoly ea = a.eval_at(v, Rational(xi, mpz_class(1)));
        MPoly eb = b.eval_at(v, Rational(xi, mpz_class(1)));
        if (!ea.is_zero() && !eb.is_zero()) {
            try {
                MPoly gimage = gcdheu(ea, eb, depth + 1);
                MPoly e = gimage, cand;
                MPoly xv = MPoly::variable(v);
                int i = 0;
                bool ok = true;
                while (!e.is_zero()) {
                    if (i > deg_cap) {
                        ok = false;
                        break;
                    }
                    MPoly d = take_digit(e, xi);
                    cand += d * xv.pow(static_cast<unsigned>(i));
                    ++i;
                }
                // Keep cand's integer content: when this is a recursive call the
                // caller reconstructs digits from it, and stripping the content
                // (e.g. collapsing a constant image gcd to 1) loses the encoded
                // evaluation of the true gcd.
                if (ok && !cand.is_zero() && try_divide_exact(a, cand) &&
                    try_divide_exact(b, cand))
                    return cand;
            } catch (const HeuristicFailed&) {
                if (depth > 0) throw;
            }
        }
        xi = xi * 73794 / 27011 + 1;
    }
    throw HeuristicFailed{};
}

// ---------------------------------------------------------------------------
// Primitive PRS fallback (correct for any input, used when the heuristic fails).
// ---------------------------------------------------------------------------

MPoly prs_gcd(MPoly a, MPoly b);

MPoly content_in(const MPoly& p, const Var& v) {
    MPoly g;
    for (const auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize_primitive(c) : prs_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g.is_zero() ? MPoly(Rational(1)) : g;
}

MPoly prs_gcd(MPoly a, MPoly b) {
    if (a.is_zero()) return normalize_primitive(b);
    if (b.is_zero()) return normalize_primitive(a);
    a = normalize_primitive(a);
    b = normalize_primitive(b);
    if (a.is_constant() || b.is_constant()) return MPoly(Rational(1));
    Var v = a.vars().front();
    if (!a.uses(v)) v = b.vars().front();
    if (!a.uses(v) || !b.uses(v)) {
        const MPoly& user = a.uses(v) ? a : b;
        const MPoly& other = a.uses(v) ? b : a;
        return prs_gcd(content_in(user, v), other);
    }
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly r0 = divide_exact(a, ca), r1 = divide_exact(b, cb);
    if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);
    while (!r1.is_zero() && r1.degree_in(v) > 0) {
        MPoly r = prem(r0, r1, v);
        r0 = std::move(r1);
        r1 = r.is_zero() ? MPoly() : divide_exact(r, content_in(r, v));
    }
    MPoly cg = prs_gcd(ca, cb);
    if (!r1.is_zero()) return cg; // last nonzero remainder constant in v
    return normalize_primitive(cg * r0);
}

} // namespace

std::optional<MPoly> try_divide_exact(const MPoly& p, const MPoly& q) {
    if (q.is_zero()) return std::nullopt;
    if (p.is_zero()) return MPoly();
    if (q.is_constant()) return p.scaled(q.constant_value().inv());
    auto mv = merged_vars(p, q);
    MPoly::TermMap unit_map;
    unit_map.emplace(Exps(mv.size(), 0), Rational(1));
    MPoly unit = MPoly::build(mv, std::move(unit_map));
    MPoly r = p * unit, qq = q * unit;
    if (qq.is_zero()) return std::nullopt;
    const auto qlead = *qq.terms().begin();
    MPoly::TermMap quot;
    while (!r.is_zero()) {
        const auto rlead = *r.terms().begin();
        if (!exps_divides(qlead.first, rlead.first)) return std::nullopt;
        Exps t(rlead.first.size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = rlead.first[i] - qlead.first[i];
        Rational c = rlead.second / qlead.second;
        MPoly::TermMap mono;
        mono.emplace(t, c);
        MPoly m = MPoly::build(mv, std::move(mono));
        quot.emplace(std::move(t), c);
        r = r - m * qq;
    }
    return MPoly::build(mv, std::move(quot));
}

MPoly divide_exact(const MPoly& p, const MPoly& q) {
    auto r = try_divide_exact(p, q);
    if (!r) throw invalid_input("exact polynomial division failed");
    return *r;
}

MPoly normalize_primitive(const MPoly& p) {
    if (p.is_zero()) return p;
    MPoly out = p.primitive_part();
    if (out.leading_coeff().sign() < 0) out = -out;
    return out;
}

MPoly poly_gcd(const MPoly& a0, const MPoly& b0) {
    if (a0.is_zero()) return normalize_primitive(b0);
    if (b0.is_zero()) return normalize_primitive(a0);
    MPoly a = normalize_primitive(a0), b = normalize_primitive(b0);
    if (a.is_constant() || b.is_constant()) return MPoly(Rational(1));
    if (a == b) return a;

    auto mv = merged_vars(a, b);
    // Pull out a common monomial factor first (powers of single variables).
    auto min_exps = [&](const MPoly& p) {
        Exps m(mv.size(), INT32_MAX);
        for (const auto& [e, c] : p.terms())
            for (size_t i = 0; i < mv.size(); ++i) {
                int ei = 0;
                for (size_t j = 0; j < p.vars().size(); ++j)
                    if (p.vars()[j] == mv[i]) ei = e[j];
                m[i] = std::min(m[i], ei);
            }
        return m;
    };
    Exps ma = min_exps(a), mb = min_exps(b);
    std::vector<std::pair<Var, int>> powers;
    for (size_t i = 0; i < mv.size(); ++i) {
        int c = std::min(ma[i], mb[i]);
        if (c > 0) powers.emplace_back(mv[i], c);
    }
    MPoly mono_factor(Rational(1));
    if (!powers.empty()) {
        mono_factor = MPoly::monomial(Rational(1), powers);
        a = divide_exact(a, mono_factor);
        b = divide_exact(b, mono_factor);
        if (a.is_constant() || b.is_constant()) return mono_factor;
    }

    bool trivial = true;
    for (const auto& v : mv) {
        if (!a.uses(v) || !b.uses(v)) continue;
        if (!modular_gcd_trivial_in(a, b, v)) {
            trivial = false;
            break;
        }
    }
    if (trivial) return mono_factor;

    try {
        MPoly g = gcdheu(a, b, 0);
        return normalize_primitive(mono_factor * normalize_primitive(g));
    } catch (const HeuristicFailed&) {
        return normalize_primitive(mono_factor * prs_gcd(a, b));
    }
}

MPoly prem(const MPoly& p, const MPoly& q, const Var& v) {
    int dp = p.degree_in(v), dq = q.degree_in(v);
    if (q.is_zero()) throw invalid_input("prem by zero");
    if (dp < dq) return p;
    auto pc = p.coeffs_in(v), qc = q.coeffs_in(v);
    const MPoly& lq = qc.back();
    int e = dp - dq + 1;
    std::vector<MPoly> r = pc;
    auto degree = [](const std::vector<MPoly>& f) {
        for (size_t i = f.size(); i-- > 0;)
            if (!f[i].is_zero()) return static_cast<int>(i);
        return -1;
    };
    int dr = degree(r);
    while (dr >= dq) {
        MPoly lr = r[static_cast<size_t>(dr)];
        int shift = dr - dq;
        std::vector<MPoly> nr(static_cast<size_t>(dr));
        for (int i = 0; i < dr; ++i) {
            nr[static_cast<size_t>(i)] = lq * r[static_cast<size_t>(i)];
            int j = i - shift;
            if (j >= 0 && j < dq)
                nr[static_cast<size_t>(i)] -= lr * qc[static_cast<size_t>(j)];
        }
        r = std::move(nr);
        --e;
        dr = degree(r);
    }
    MPoly rem = MPoly::from_coeffs(v, r);
    for (int i = 0; i < e; ++i) rem = rem * lq;
    return rem;
}

MPoly resultant(const MPoly& p, const MPoly& q, const Var& v) {
    int dp = p.degree_in(v), dq = q.degree_in(v);
    if (p.is_zero() || q.is_zero() || (dp == 0 && dq == 0))
        throw invalid_input("resultant requires positive degree in " + v.name() +
                            " for both inputs");
    // res(p, q) = q^deg(p) when q is v-free; the swap sign is +1 here.
    if (dq == 0) return q.pow(static_cast<unsigned>(dp));
    if (dp == 0) return p.pow(static_cast<unsigned>(dq));
    MPoly A = p, B = q;
    int s = 1;
    if (dp < dq) {
        std::swap(A, B);
        if ((dp & 1) && (dq & 1)) s = -s;
    }
    MPoly g(Rational(1)), h(Rational(1));
    while (true) {
        int da = A.degree_in(v), db = B.degree_in(v);
        int d = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        MPoly R = prem(A, B, v);
        A = B;
        MPoly divisor = g * h.pow(static_cast<unsigned>(d));
        B = R.is_zero() ? MPoly() : divide_exact(R, divisor);
        if (B.is_zero()) return MPoly(); // positive-degree common factor
        g = A.coeffs_in(v).back();
        if (d > 0)
            h = d == 1 ? g
                       : divide_exact(g.pow(static_cast<unsigned>(d)),
                                      h.pow(static_cast<unsigned>(d - 1)));
        if (B.degree_in(v) == 0) {
            int qd = A.degree_in(v);
            MPoly num = B.pow(static_cast<unsigned>(qd));
            MPoly res = qd > 1 ? divide_exact(num, h.pow(static_cast<unsigned>(qd - 1))) : num;
            return s < 0 ? -res : res;
        }
    }
}

std::vector<std::pair<MPoly, int>> squarefree_decompose(const MPoly& p, const Var& v) {
    std::vector<std::pair<MPoly, int>> out;
    if (p.is_zero() || p.degree_in(v) == 0) return out;
    MPoly dp = p.derivative(v);
    MPoly g = poly_gcd(p, dp);
    MPoly c = divide_exact(p, g);
    MPoly d = divide_exact(dp, g) - c.derivative(v);
    int i = 1;
    while (!c.is_constant()) {
        MPoly a = poly_gcd(c, d);
        if (!a.is_constant()) out.emplace_back(normalize_primitive(a), i);
        c = divide_exact(c, a);
        d = divide_exact(d, a) - c.derivative(v);
        ++i;
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.second > y.second; });
    return out;
}

MPoly squarefree_part(const MPoly& p, const Var& v) {
    if (p.is_zero() || p.degree_in(v) == 0) return normalize_primitive(p);
    MPoly g = poly_gcd(p, p.derivative(v));
    return normalize_primitive(divide_exact(p, g));
}

} // namespace lvc
