#include "lvc/focal.hpp"

#include "lvc/polyops.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

namespace lvc {

namespace {

const char* kOmegaName = "omega";

Rational binom(int n, int k) {
    Rational r(1);
    for (int t = 0; t < k; ++t) r *= Rational(n - t, t + 1);
    return r;
}

// Coefficient num / prod(atoms[i]^den[i]) over a shared atom basis; rational
// content lives in the numerator's coefficients.  Arithmetic never reduces by
// polynomial gcd; cancellation probes the denominator atoms with exact
// division, which is what makes the higher orders affordable.
struct FCoef {
    MPoly num;
    std::vector<int> den;
    bool is_zero() const { return num.is_zero(); }
};

class FEngine {
  public:
    // Refines the candidate denominators into a pairwise gcd-free atom set so
    // cancellations later happen at the granularity factors actually recur.
    void seed(const std::vector<MPoly>& cands) {
        std::vector<MPoly> work;
        for (const MPoly& p : cands)
            if (!p.is_zero() && !p.is_constant()) work.push_back(normalize_primitive(p));
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < work.size() && !changed; ++i)
                for (size_t j = i + 1; j < work.size() && !changed; ++j) {
                    MPoly g = poly_gcd(work[i], work[j]);
                    if (g.is_constant()) continue;
                    MPoly qi = normalize_primitive(divide_exact(work[i], g));
                    MPoly qj = normalize_primitive(divide_exact(work[j], g));
                    work[i] = std::move(g);
                    work[j] = std::move(qj);
                    if (!qi.is_constant()) work.push_back(std::move(qi));
                    std::erase_if(work, [](const MPoly& p) { return p.is_constant(); });
                    changed = true;
                }
        }
        for (MPoly& p : work) register_atom(std::move(p));
    }

    // p = c * prod(atoms^exps); a nonconstant leftover joins the basis.
    std::pair<std::vector<int>, Rational> factor_poly(MPoly p) {
        std::vector<int> exps(atoms_.size(), 0);
        for (size_t i = 0; i < atoms_.size(); ++i)
            while (true) {
                auto q = try_divide_exact(p, atoms_[i]);
                if (!q) break;
                p = std::move(*q);
                ++exps[i];
            }
        Rational c(1);
        if (p.is_constant()) {
            c = p.constant_value();
        } else {
            c = p.content();
            const size_t idx = register_atom(p.primitive_part());
            if (idx >= exps.size()) exps.resize(idx + 1, 0);
            exps[idx] += 1;
        }
        return {std::move(exps), std::move(c)};
    }

    FCoef from(const RatFunc& f) {
        if (f.is_zero()) return {};
        auto [exps, c] = factor_poly(f.den());
        FCoef r{f.num().scaled(c.inv()), std::move(exps)};
        cancel(r);
        return r;
    }

    RatFunc to_ratfunc(const FCoef& a) const {
        if (a.is_zero()) return {};
        MPoly d(Rational(1));
        for (size_t i = 0; i < a.den.size(); ++i)
            if (a.den[i] > 0) d *= atoms_[i].pow(static_cast<unsigned>(a.den[i]));
        return RatFunc(a.num, d);
    }

    FCoef mul(const FCoef& a, const FCoef& b) const {
        if (a.is_zero() || b.is_zero()) return {};
        FCoef r;
        r.num = a.num * b.num;
        r.den.assign(std::max(a.den.size(), b.den.size()), 0);
        for (size_t i = 0; i < r.den.size(); ++i) r.den[i] = exp_at(a, i) + exp_at(b, i);
        cancel(r);
        return r;
    }

    FCoef add(const FCoef& a, const FCoef& b) const {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        FCoef r;
        r.den.assign(std::max(a.den.size(), b.den.size()), 0);
        MPoly na = a.num, nb = b.num;
        for (size_t i = 0; i < r.den.size(); ++i) {
            const int ea = exp_at(a, i), eb = exp_at(b, i);
            r.den[i] = std::max(ea, eb);
            if (ea < r.den[i]) na *= atoms_[i].pow(static_cast<unsigned>(r.den[i] - ea));
            if (eb < r.den[i]) nb *= atoms_[i].pow(static_cast<unsigned>(r.den[i] - eb));
        }
        r.num = na + nb;
        cancel(r);
        return r;
    }

    FCoef scale(const FCoef& a, const Rational& c) const {
        if (a.is_zero() || c.is_zero()) return {};
        return {a.num.scaled(c), a.den};
    }

    FCoef div(const FCoef& a, const FCoef& b) {
        if (b.is_zero()) throw degenerate_input("focal_values: division by a zero coefficient");
        if (a.is_zero()) return {};
        auto [exps, c] = factor_poly(b.num);
        FCoef r;
        r.num = a.num.scaled(c.inv());
        for (size_t i = 0; i < b.den.size(); ++i)
            if (b.den[i] > 0) r.num *= atoms_[i].pow(static_cast<unsigned>(b.den[i]));
        r.den.assign(std::max(a.den.size(), exps.size()), 0);
        for (size_t i = 0; i < r.den.size(); ++i)
            r.den[i] = exp_at(a, i) + (i < exps.size() ? exps[i] : 0);
        cancel(r);
        return r;
    }

    void cancel(FCoef& a) const {
        if (a.num.is_zero()) {
            a.den.clear();
            return;
        }
        for (size_t i = 0; i < a.den.size(); ++i)
            while (a.den[i] > 0) {
                auto q = try_divide_exact(a.num, atoms_[i]);
                if (!q) break;
                a.num = std::move(*q);
                --a.den[i];
            }
    }

  private:
    static int exp_at(const FCoef& a, size_t i) {
        return i < a.den.size() ? a.den[i] : 0;
    }

    size_t register_atom(MPoly p) {
        for (size_t i = 0; i < atoms_.size(); ++i)
            if (atoms_[i] == p) return i;
        atoms_.push_back(std::move(p));
        return atoms_.size() - 1;
    }

    std::vector<MPoly> atoms_;
};

// Element of Q(params)[omega] with omega^2 reduced to W: re + om*omega.
struct FElem {
    FCoef re, om;
    bool is_zero() const { return re.is_zero() && om.is_zero(); }
};

struct FRing {
    FEngine& eng;
    FCoef W;
    FElem add(const FElem& a, const FElem& b) const {
        return {eng.add(a.re, b.re), eng.add(a.om, b.om)};
    }
    FElem scale(const FElem& a, const Rational& c) const {
        return {eng.scale(a.re, c), eng.scale(a.om, c)};
    }
    FElem mul(const FElem& a, const FElem& b) const {
        return {eng.add(eng.mul(a.re, b.re), eng.mul(eng.mul(a.om, b.om), W)),
                eng.add(eng.mul(a.re, b.om), eng.mul(a.om, b.re))};
    }
    FElem inv(const FElem& a) const {
        const FCoef norm =
            eng.add(eng.mul(a.re, a.re), eng.scale(eng.mul(eng.mul(a.om, a.om), W), Rational(-1)));
        if (norm.is_zero())
            throw degenerate_input("focal_values: rotation coefficient is not invertible");
        return {eng.div(a.re, norm), eng.scale(eng.div(a.om, norm), Rational(-1))};
    }
};

// Polynomial in the two phase variables with FElem coefficients, keyed by
// (y1 power, y2 power).
using Key = std::pair<int, int>;
using FPoly = std::map<Key, FElem>;

void add_to(FPoly& p, int i, int j, const FElem& v, const FRing& ring) {
    if (v.is_zero()) return;
    auto [it, fresh] = p.try_emplace(Key{i, j}, v);
    if (!fresh) {
        it->second = ring.add(it->second, v);
        if (it->second.is_zero()) p.erase(it);
    }
}

// Splits f into phase monomials, folding omega powers into re/om parts via
// omega^2 = W.  The denominator must involve neither the phase variables nor
// omega.
FPoly split_component(const RatFunc& f, const Var& u1, const Var& u2, const Var& w,
                      const FRing& ring) {
    if (f.den().uses(u1) || f.den().uses(u2))
        throw invalid_input("focal_values: denominator depends on the phase variables");
    if (f.den().uses(w)) throw invalid_input("focal_values: denominator depends on omega");
    FPoly out;
    const MPoly& num = f.num();
    const auto& vars = num.vars();
    int p1 = -1, p2 = -1, pw = -1;
    for (size_t k = 0; k < vars.size(); ++k) {
        if (vars[k] == u1) p1 = static_cast<int>(k);
        else if (vars[k] == u2) p2 = static_cast<int>(k);
        else if (vars[k] == w) pw = static_cast<int>(k);
    }
    auto [dexp, dc] = ring.eng.factor_poly(f.den());
    const Rational dinv = dc.inv();
    for (const auto& [exps, c] : num.terms()) {
        const int i = p1 >= 0 ? exps[p1] : 0;
        const int j = p2 >= 0 ? exps[p2] : 0;
        const int d = pw >= 0 ? exps[pw] : 0;
        std::vector<std::pair<Var, int>> rest;
        for (size_t k = 0; k < vars.size(); ++k) {
            const int kk = static_cast<int>(k);
            if (kk == p1 || kk == p2 || kk == pw || exps[k] == 0) continue;
            rest.emplace_back(vars[k], exps[k]);
        }
        FCoef val{MPoly::monomial(c * dinv, rest), dexp};
        ring.eng.cancel(val);
        for (int h = 0; h < d / 2; ++h) val = ring.eng.mul(val, ring.W);
        FElem e;
        (d % 2 == 0 ? e.re : e.om) = val;
        add_to(out, i, j, e, ring);
    }
    return out;
}

// grad(Vm) . (F1, F2) accumulated into res.
void add_grad_dot(FPoly& res, const FPoly& Vm, const FPoly& F1, const FPoly& F2,
                  const FRing& ring) {
    for (const auto& [k, v] : Vm) {
        const int i = k.first, j = k.second;
        if (i > 0) {
            const FElem di = ring.scale(v, Rational(i));
            for (const auto& [fk, fc] : F1)
                add_to(res, i - 1 + fk.first, j + fk.second, ring.mul(di, fc), ring);
        }
        if (j > 0) {
            const FElem dj = ring.scale(v, Rational(j));
            for (const auto& [fk, fc] : F2)
                add_to(res, i + fk.first, j - 1 + fk.second, ring.mul(dj, fc), ring);
        }
    }
}

// Exact dense solve of M x = b with a rational matrix and factored-coefficient
// right-hand side.
std::vector<FCoef> solve_rows(std::vector<std::vector<Rational>> M, std::vector<FCoef> b,
                              FEngine& eng) {
    const size_t n = M.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) throw degenerate_input("focal_values: singular order system");
        std::swap(M[piv], M[col]);
        std::swap(b[piv], b[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            const Rational f = M[r][col] / M[col][col];
            for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
            b[r] = eng.add(b[r], eng.scale(b[col], -f));
        }
    }
    std::vector<FCoef> x(n);
    for (size_t r = n; r-- > 0;) {
        FCoef acc = b[r];
        for (size_t c = r + 1; c < n; ++c)
            if (!M[r][c].is_zero()) acc = eng.add(acc, eng.scale(x[c], -M[r][c]));
        x[r] = eng.scale(acc, M[r][r].inv());
    }
    return x;
}

// Rewrites omega powers >= 2 using omega^2 = W, leaving degree <= 1.
RatFunc reduce_omega(const RatFunc& f, const Var& w, const RatFunc& W) {
    if (f.den().uses(w)) throw invalid_input("normalize_center: denominator mentions omega");
    if (!f.num().uses(w)) return f;
    const std::vector<MPoly> cs = f.num().coeffs_in(w);
    RatFunc even, odd, wf(Rational(1));
    for (int d = 0; d < static_cast<int>(cs.size()); ++d) {
        if (d >= 2 && d % 2 == 0) wf *= W;
        if (cs[d].is_zero()) continue;
        const RatFunc c = RatFunc(cs[d], f.den()) * wf;
        (d % 2 == 0 ? even : odd) += c;
    }
    return even + odd * RatFunc::variable(w);
}

} // namespace

std::string focalset_to_text(const FocalSet& fs) {
    std::ostringstream os;
    const RatFunc* lv[4] = {&fs.lv0, &fs.lv1, &fs.lv2, &fs.lv3};
    for (int k = 0; k < 4; ++k) {
        os << "LV" << k << " num " << lv[k]->num().str() << "\n";
        os << "LV" << k << " den " << lv[k]->den().str() << "\n";
    }
    os << "pd valid=" << (fs.pd.valid ? 1 : 0) << " max_order=" << fs.pd.max_order << "\n";
    return os.str();
}

PlanarField normalize_center(const PlanarField& pf, const Box& box, int budget) {
    const Var w(kOmegaName);
    const RatFunc& a = pf.linear[0][0];
    const RatFunc& b = pf.linear[0][1];
    const RatFunc& c = pf.linear[1][0];
    const RatFunc& d = pf.linear[1][1];
    if (!(a + d).is_zero())
        throw invalid_input("normalize_center: linear part has nonzero trace");

    const bool rotational = a.is_zero() && d.is_zero() && (b + c).is_zero() && !b.is_zero();
    RatFunc W;
    if (rotational) {
        W = b.uses(w) ? pf.omega_sq_of_linear : c * c;
    } else {
        const bool mentions = pf.f[0].uses(w) || pf.f[1].uses(w) || a.uses(w) || b.uses(w) ||
                              c.uses(w) || d.uses(w);
        if (mentions) throw invalid_input("normalize_center: omega is reserved for the output");
        W = -(a * a) - b * c;
    }
    if (W.uses(w))
        throw invalid_input("normalize_center: omega_sq_of_linear mentions omega");
    if (certify_sign(W, box, budget) != Sign::positive)
        throw certification_failure("normalize_center: omega^2 not certified positive on the box");
    if (rotational) return pf;
    if (b.is_zero()) throw degenerate_input("normalize_center: zero rotation coupling");

    const Var y1 = pf.y[0], y2 = pf.y[1];
    const RatFunc omega = RatFunc::variable(w);
    // u = S*(y1, y2) with S = [[1, 0], [-a/omega, -b/omega]] turns the linear
    // part into [[0,-omega],[omega,0]]; the inverse sends y2 to
    // -(a*y1 + omega*y2)/b.
    const std::map<Var, RatFunc> back = {
        {y2, -(a * RatFunc::variable(y1) + omega * RatFunc::variable(y2)) / b}};
    const RatFunc g1 = pf.f[0].substitute(back);
    const RatFunc g2 = pf.f[1].substitute(back);

    PlanarField out;
    out.y = pf.y;
    out.f = {reduce_omega(g1, w, W), reduce_omega(-(a * g1 + b * g2) * omega / W, w, W)};
    out.linear = {{{RatFunc(), -omega}, {omega, RatFunc()}}};
    out.omega_sq_of_linear = W;

    const std::vector<Var> ys = {y1, y2};
    for (int i = 0; i < 2; ++i) {
        if (!(monomial_coeff(out.f[i], ys, {1, 0}) == out.linear[i][0]) ||
            !(monomial_coeff(out.f[i], ys, {0, 1}) == out.linear[i][1]))
            throw degenerate_input("normalize_center: transformed linear part check failed");
    }
    return out;
}

FocalSet focal_values(const PlanarField& pf, int count, FocalNormalization norm) {
    if (count < 1 || count > 3)
        throw invalid_input("focal_values: count must be between 1 and 3");
    const Var u1 = pf.y[0], u2 = pf.y[1];
    const Var w(kOmegaName);

    const bool formal = pf.f[0].uses(w) || pf.f[1].uses(w);
    RatFunc W;
    if (formal) {
        W = pf.omega_sq_of_linear;
        if (W.uses(w))
            throw invalid_input("focal_values: omega_sq_of_linear mentions omega");
        if (W.is_zero())
            throw invalid_input("focal_values: zero omega_sq_of_linear with a formal omega");
    }
    FEngine eng;
    eng.seed({pf.f[0].den(), pf.f[1].den(), W.num(), W.den()});
    const FRing ring{eng, eng.from(W)};

    FPoly F1 = split_component(pf.f[0], u1, u2, w, ring);
    FPoly F2 = split_component(pf.f[1], u1, u2, w, ring);
    if (F1.count({0, 0}) || F2.count({0, 0}))
        throw invalid_input("focal_values: field does not vanish at the origin");

    auto take = [](FPoly& p, int i, int j) {
        FElem e;
        auto it = p.find(Key{i, j});
        if (it != p.end()) {
            e = it->second;
            p.erase(it);
        }
        return e;
    };
    const FElem l11 = take(F1, 1, 0), l12 = take(F1, 0, 1);
    const FElem wc = take(F2, 1, 0), l22 = take(F2, 0, 1);
    if (!l11.is_zero() || !l22.is_zero() || wc.is_zero() || !ring.add(l12, wc).is_zero())
        throw invalid_input("focal_values: linear part is not in rotation form");
    const FElem winv = ring.inv(wc);

    const int top = 2 * count + 2;
    auto trim = [top](FPoly& p) {
        for (auto it = p.begin(); it != p.end();) {
            const int deg = it->first.first + it->first.second;
            if (deg < 2 || deg > top - 1) it = p.erase(it);
            else ++it;
        }
    };
    trim(F1);
    trim(F2);

    // Accumulated grad(V) . F for all solved orders, seeded with V2 = r^2/2.
    FPoly res;
    for (const auto& [k, fc] : F1) add_to(res, k.first + 1, k.second, fc, ring);
    for (const auto& [k, fc] : F2) add_to(res, k.first, k.second + 1, fc, ring);

    std::array<FElem, 3> eta;
    for (int m = 3; m <= top; ++m) {
        std::vector<FElem> R(m + 1);
        for (const auto& [k, v] : res)
            if (k.first + k.second == m) R[k.first] = ring.mul(winv, v);

        // Order-m equation divided by the rotation coefficient:
        // Mint*v - eta~ * rhat = -winv*R with Mint the rotation-derivative
        // matrix on u1^j u2^(m-j); even orders add the eta~ column (rhat from
        // (u1^2+u2^2)^(m/2)) and a pin row fixing the kernel direction r^m.
        const bool is_even = m % 2 == 0;
        const size_t nu = static_cast<size_t>(is_even ? m + 2 : m + 1);
        std::vector<std::vector<Rational>> M(nu, std::vector<Rational>(nu, Rational(0)));
        for (int j = 0; j <= m; ++j) {
            if (j + 1 <= m) M[static_cast<size_t>(j + 1)][static_cast<size_t>(j)] += Rational(m - j);
            if (j - 1 >= 0) M[static_cast<size_t>(j - 1)][static_cast<size_t>(j)] -= Rational(j);
        }
        if (is_even) {
            for (int r = 0; r <= m; r += 2)
                M[static_cast<size_t>(r)][static_cast<size_t>(m + 1)] = -binom(m / 2, r / 2);
            const int pin = norm == FocalNormalization::pin_low ? 0 : m;
            M[static_cast<size_t>(m + 1)][static_cast<size_t>(pin)] = Rational(1);
        }

        auto solve_part = [&](auto pick) -> std::vector<FCoef> {
            std::vector<FCoef> rhs(nu);
            bool any = false;
            for (int r = 0; r <= m; ++r) {
                rhs[static_cast<size_t>(r)] = eng.scale(pick(R[static_cast<size_t>(r)]), Rational(-1));
                any = any || !rhs[static_cast<size_t>(r)].is_zero();
            }
            if (!any) return std::vector<FCoef>(nu);
            return solve_rows(M, std::move(rhs), eng);
        };
        const std::vector<FCoef> xre = solve_part([](const FElem& e) { return e.re; });
        const std::vector<FCoef> xom = solve_part([](const FElem& e) { return e.om; });

        if (is_even) {
            const FElem eta_tilde{xre[static_cast<size_t>(m + 1)],
                                  xom[static_cast<size_t>(m + 1)]};
            eta[static_cast<size_t>((m - 2) / 2 - 1)] = ring.mul(wc, eta_tilde);
        }

        if (m == top) break;
        FPoly Vm;
        for (int j = 0; j <= m; ++j)
            add_to(Vm, j, m - j, FElem{xre[static_cast<size_t>(j)], xom[static_cast<size_t>(j)]},
                   ring);
        add_grad_dot(res, Vm, F1, F2, ring);
    }

    FocalSet fs;
    RatFunc* out[3] = {&fs.lv1, &fs.lv2, &fs.lv3};
    for (int k = 0; k < count; ++k) {
        if (!eta[static_cast<size_t>(k)].om.is_zero())
            throw invalid_input("focal_values: focal value has odd omega dependence");
        *out[k] = eng.to_ratfunc(eta[static_cast<size_t>(k)].re);
    }
    fs.pd.valid = true;
    fs.pd.max_order = top;
    return fs;
}

RatFunc lv0(const LVSystem& sys, const BlockForm& bf, const Var& mu, const Rational& mu_offset) {
    const RatFunc mu_star = eigencondition_solve(sys, mu);
    auto at_mu = [&](const RatFunc& mval) {
        Mat3 out;
        const std::map<Var, RatFunc> mp = {{mu, mval}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out.at(i, j) = sys.A.at(i, j).substitute(mp);
        return out;
    };

    const Mat3 A0 = at_mu(mu_star);
    if (!(A0.trace() == bf.lambda_real) || !(A0.minor_sum() == bf.omega_sq))
        throw invalid_input("lv0: block form does not match the system on the critical surface");

    const Mat3 A = at_mu(mu_star + RatFunc(mu_offset));
    const RatFunc tr = A.trace();
    const RatFunc M = A.minor_sum();
    const RatFunc det = A.det();

    bool numeric = true;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) numeric = numeric && A.at(i, j).is_constant();
    if (numeric) {
        // Complex pair exists iff the characteristic cubic has negative
        // discriminant.
        const Rational b = -tr.constant_value();
        const Rational c = M.constant_value();
        const Rational d = -det.constant_value();
        const Rational disc = Rational(18) * b * c * d - Rational(4) * b.pow(3) * d +
                              b * b * c * c - Rational(4) * c.pow(3) - Rational(27) * d * d;
        if (disc >= Rational(0))
            throw degenerate_input("lv0: eigenvalue pair is real at this offset");
    }

    const RatFunc denom = (tr * tr + M) * RatFunc(Rational(2));
    if (denom.is_zero()) throw degenerate_input("lv0: degenerate characteristic data");
    return (M * tr - det) / denom;
}

} // namespace lvc
