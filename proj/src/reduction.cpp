#include "lvc/reduction.hpp"

#include "lvc/polyops.hpp"

#include <climits>
#include <string>

namespace lvc {

namespace {

// Positions of the grading variables inside p.vars(); -1 when absent.
std::vector<int> var_positions(const MPoly& p, const std::vector<Var>& vars) {
    std::vector<int> pos(vars.size(), -1);
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t k = 0; k < p.vars().size(); ++k)
            if (p.vars()[k] == vars[i]) pos[i] = static_cast<int>(k);
    return pos;
}

int term_degree(const MPoly::Exps& e, const std::vector<int>& pos) {
    int d = 0;
    for (int k : pos)
        if (k >= 0) d += e[static_cast<size_t>(k)];
    return d;
}

MPoly filter_terms(const MPoly& p, const std::vector<Var>& vars, int lo, int hi) {
    if (p.is_zero()) return p;
    std::vector<int> pos = var_positions(p, vars);
    MPoly::TermMap kept;
    for (const auto& [e, c] : p.terms()) {
        int d = term_degree(e, pos);
        if (lo <= d && d <= hi) kept.emplace(e, c);
    }
    return MPoly::build(p.vars(), std::move(kept));
}

} // namespace

RatFunc degree_part(const RatFunc& f, const std::vector<Var>& vars, int d) {
    for (const Var& v : vars)
        if (f.den().uses(v))
            throw invalid_input("degree_part: denominator depends on grading variable " +
                                v.name());
    MPoly n = filter_terms(f.num(), vars, d, d);
    if (n.is_zero()) return RatFunc();
    return RatFunc(n) / RatFunc(f.den());
}

RatFunc truncate_degree(const RatFunc& f, const std::vector<Var>& vars, int d) {
    for (const Var& v : vars)
        if (f.den().uses(v))
            throw invalid_input("truncate_degree: denominator depends on grading variable " +
                                v.name());
    MPoly n = filter_terms(f.num(), vars, 0, d);
    if (n.is_zero()) return RatFunc();
    return RatFunc(n) / RatFunc(f.den());
}

int min_degree_in(const RatFunc& f, const std::vector<Var>& vars) {
    if (f.is_zero()) return INT_MAX;
    std::vector<int> pos = var_positions(f.num(), vars);
    int best = INT_MAX;
    for (const auto& [e, c] : f.num().terms()) {
        (void)c;
        int d = term_degree(e, pos);
        if (d < best) best = d;
    }
    return best;
}

RatFunc monomial_coeff(const RatFunc& f, const std::vector<Var>& vars,
                       const std::vector<int>& exps) {
    if (vars.size() != exps.size()) throw invalid_input("monomial_coeff: vars/exps mismatch");
    for (const Var& v : vars)
        if (f.den().uses(v))
            throw invalid_input("monomial_coeff: denominator depends on grading variable " +
                                v.name());
    const MPoly& p = f.num();
    if (p.is_zero()) return RatFunc();
    std::vector<int> pos = var_positions(p, vars);
    for (size_t i = 0; i < vars.size(); ++i)
        if (pos[i] < 0 && exps[i] != 0) return RatFunc();
    // strip the grading variables and keep matching terms
    std::vector<Var> rest;
    std::vector<size_t> rest_idx;
    for (size_t k = 0; k < p.vars().size(); ++k) {
        bool graded = false;
        for (int q : pos)
            if (q == static_cast<int>(k)) graded = true;
        if (!graded) {
            rest.push_back(p.vars()[k]);
            rest_idx.push_back(k);
        }
    }
    MPoly::TermMap kept;
    for (const auto& [e, c] : p.terms()) {
        bool match = true;
        for (size_t i = 0; i < vars.size() && match; ++i) {
            int got = pos[i] >= 0 ? e[static_cast<size_t>(pos[i])] : 0;
            if (got != exps[i]) match = false;
        }
        if (!match) continue;
        MPoly::Exps re(rest_idx.size());
        for (size_t i = 0; i < rest_idx.size(); ++i) re[i] = e[rest_idx[i]];
        auto [it, fresh] = kept.emplace(std::move(re), c);
        if (!fresh) it->second += c;
    }
    MPoly n = MPoly::build(std::move(rest), std::move(kept));
    if (n.is_zero()) return RatFunc();
    return RatFunc(n) / RatFunc(f.den());
}

RatFunc eigencondition_residual(const LVSystem& sys) {
    return sys.A.det() - sys.A.minor_sum() * sys.A.trace();
}

RatFunc eigencondition_solve(const LVSystem& sys, const Var& solve_for) {
    RatFunc E = eigencondition_residual(sys);
    if (E.is_zero()) throw degenerate_input("eigencondition identically satisfied");
    const MPoly& N = E.num();
    if (!N.uses(solve_for))
        throw degenerate_input("eigencondition cannot be satisfied: " + solve_for.name() +
                               " does not occur in it");
    if (N.degree_in(solve_for) != 1)
        throw degenerate_input("eigencondition is not linear in " + solve_for.name());
    auto cs = N.coeffs_in(solve_for);
    RatFunc sol = RatFunc(-cs[0]) / RatFunc(cs[1]);
    if (!E.substitute({{solve_for, sol}}).is_zero())
        throw degenerate_input("eigencondition solution does not produce an identity");
    return sol;
}

namespace {

// First-nonzero-coordinate-to-one normalization; the input must be nonzero.
Vec3 normalize_first(const Vec3& v) {
    for (const RatFunc& c : v)
        if (!c.is_zero()) {
            Vec3 out;
            for (size_t i = 0; i < 3; ++i) out[i] = v[i] / c;
            return out;
        }
    throw degenerate_input("eigenvector is identically zero");
}

bool is_zero_vec(const Vec3& v) {
    return v[0].is_zero() && v[1].is_zero() && v[2].is_zero();
}

Vec3 row_of(const Mat3& m, int i) { return {m.at(i, 0), m.at(i, 1), m.at(i, 2)}; }
Vec3 col_of(const Mat3& m, int j) { return {m.at(0, j), m.at(1, j), m.at(2, j)}; }

Vec3 row_times(const Vec3& row, const Mat3& m) {
    Vec3 out;
    for (int j = 0; j < 3; ++j)
        out[static_cast<size_t>(j)] =
            row[0] * m.at(0, j) + row[1] * m.at(1, j) + row[2] * m.at(2, j);
    return out;
}

} // namespace

BlockForm block_diagonalize(const LVSystem& sys, const std::optional<Mat3>& T) {
    const Mat3& A = sys.A;
    RatFunc tr = A.trace();
    RatFunc M = A.minor_sum();
    if (!(A.det() - M * tr).is_zero())
        throw degenerate_input("block_diagonalize: eigencondition does not hold identically");
    if (M.is_zero())
        throw degenerate_input("block_diagonalize: complex eigenvalue pair degenerates (omega^2 "
                               "is identically zero)");

    BlockForm bf;
    if (T) {
        Mat3 C;
        try {
            C = (*T * A) * T->inverse();
        } catch (const division_by_zero&) {
            throw degenerate_input("block_diagonalize: supplied T is singular");
        }
        for (auto [i, j] : {std::pair{0, 2}, {1, 2}, {2, 0}, {2, 1}})
            if (!C.at(i, j).is_zero())
                throw degenerate_input(
                    "block_diagonalize: supplied T does not block-diagonalize (entry " +
                    std::to_string(i + 1) + "," + std::to_string(j + 1) + " nonzero)");
        if (!(C.at(0, 0) + C.at(1, 1)).is_zero())
            throw degenerate_input(
                "block_diagonalize: supplied T gives a 2x2 block with nonzero trace");
        bf.T = *T;
        bf.C = C;
        bf.omega_sq = C.at(0, 0) * C.at(1, 1) - C.at(0, 1) * C.at(1, 0);
        bf.lambda_real = C.at(2, 2);
    } else {
        Mat3 B = A - Mat3::identity().scaled(tr);
        Mat3 adjB = B.adjugate();
        // Columns of adj(A - tr*I) span the right eigenvector of the real
        // eigenvalue; rows span the left one.
        Vec3 r;
        bool found = false;
        for (int j = 0; j < 3 && !found; ++j) {
            r = col_of(adjB, j);
            if (!is_zero_vec(r)) found = true;
        }
        if (!found)
            throw degenerate_input("block_diagonalize: adj(A - tr*I) vanishes (repeated "
                                   "eigenstructure)");
        // t1: any row perpendicular to r lies in the left eigenplane of the
        // imaginary pair
        std::array<Vec3, 3> perp{Vec3{-r[1], r[0], RatFunc()}, Vec3{-r[2], RatFunc(), r[0]},
                                 Vec3{RatFunc(), -r[2], r[1]}};
        Vec3 t1;
        found = false;
        for (const Vec3& cand : perp)
            if (!is_zero_vec(cand)) {
                t1 = normalize_first(cand);
                found = true;
                break;
            }
        if (!found) throw degenerate_input("block_diagonalize: no eigenplane row found");
        Vec3 t2 = row_times(t1, A);
        for (RatFunc& c : t2) c = c / -M;
        Vec3 t3;
        found = false;
        for (int i = 0; i < 3 && !found; ++i) {
            t3 = row_of(adjB, i);
            if (!is_zero_vec(t3)) found = true;
        }
        if (!found) throw degenerate_input("block_diagonalize: no left eigenvector row found");
        t3 = normalize_first(t3);
        for (int j = 0; j < 3; ++j) {
            bf.T.at(0, j) = t1[static_cast<size_t>(j)];
            bf.T.at(1, j) = t2[static_cast<size_t>(j)];
            bf.T.at(2, j) = t3[static_cast<size_t>(j)];
        }
        bf.C = Mat3();
        bf.C.at(0, 1) = -M;
        bf.C.at(1, 0) = RatFunc(Rational(1));
        bf.C.at(2, 2) = tr;
        bf.omega_sq = M;
        bf.lambda_real = tr;
    }
    if (bf.T.det().is_zero())
        throw degenerate_input("block_diagonalize: eigenvector rows are dependent");
    if (!(bf.T * A == bf.C * bf.T))
        throw degenerate_input("block_diagonalize: T*A == C*T verification failed");
    return bf;
}

TransformedField transform_field(const LVSystem& sys, const BlockForm& bf) {
    TransformedField tf;
    tf.block = bf;
    tf.y = {Var("y1"), Var("y2"), Var("y3")};
    Vec3 yv{RatFunc(MPoly::variable(tf.y[0])), RatFunc(MPoly::variable(tf.y[1])),
            RatFunc(MPoly::variable(tf.y[2]))};
    Mat3 Tinv = bf.T.inverse();
    Vec3 u = Tinv * yv;
    Vec3 Au = sys.A * u;
    Vec3 uAu{u[0] * Au[0], u[1] * Au[1], u[2] * Au[2]};
    Vec3 lin = bf.C * yv;
    Vec3 quad = bf.T * uAu;
    for (size_t i = 0; i < 3; ++i) tf.f[i] = lin[i] + quad[i];
    return tf;
}

RatFunc invariance_residual(const TransformedField& tf, const RatFunc& h) {
    std::map<Var, RatFunc> sub{{tf.y[2], h}};
    RatFunc F1 = tf.f[0].substitute(sub);
    RatFunc F2 = tf.f[1].substitute(sub);
    RatFunc F3 = tf.f[2].substitute(sub);
    return h.derivative(tf.y[0]) * F1 + h.derivative(tf.y[1]) * F2 - F3;
}

namespace {

// Truncated series in the phase variables with parameter-rational
// coefficients, keyed by (y1, y2, y3) exponents.  Keeping the phase grading
// explicit means coefficient arithmetic never mixes phase and parameter
// variables.
using YExp = std::array<int, 3>;
using YSeries = std::map<YExp, RatFunc>;

int ydeg(const YExp& e) { return e[0] + e[1] + e[2]; }

void ys_add(YSeries& s, const YExp& e, const RatFunc& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = s.try_emplace(e, v);
    if (!fresh) {
        it->second = it->second + v;
        if (it->second.is_zero()) s.erase(it);
    }
}

YSeries to_series(const RatFunc& f, const std::array<Var, 3>& y, const char* who) {
    for (const Var& v : y)
        if (f.den().uses(v))
            throw invalid_input(std::string(who) + ": denominator depends on phase variable " +
                                v.name());
    YSeries out;
    const MPoly& num = f.num();
    const auto& vars = num.vars();
    std::array<int, 3> pos{-1, -1, -1};
    for (size_t k = 0; k < vars.size(); ++k)
        for (int i = 0; i < 3; ++i)
            if (vars[k] == y[i]) pos[i] = static_cast<int>(k);
    const RatFunc invden(MPoly(Rational(1)), f.den());
    for (const auto& [exps, c] : num.terms()) {
        YExp e{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            if (pos[i] >= 0) e[i] = exps[static_cast<size_t>(pos[i])];
        std::vector<std::pair<Var, int>> rest;
        for (size_t k = 0; k < vars.size(); ++k) {
            const int kk = static_cast<int>(k);
            if (kk == pos[0] || kk == pos[1] || kk == pos[2] || exps[k] == 0) continue;
            rest.emplace_back(vars[k], exps[k]);
        }
        ys_add(out, e, RatFunc(MPoly::monomial(c, rest)) * invden);
    }
    return out;
}

YSeries ys_mul(const YSeries& a, const YSeries& b, int maxdeg) {
    YSeries out;
    for (const auto& [ea, va] : a) {
        if (ydeg(ea) > maxdeg) continue;
        for (const auto& [eb, vb] : b) {
            const YExp e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            if (ydeg(e) > maxdeg) continue;
            ys_add(out, e, va * vb);
        }
    }
    return out;
}

// Substitutes the graph series H (free of y3) for y3, truncating at maxdeg.
YSeries subst_graph(const YSeries& F, const YSeries& H, int maxdeg) {
    int cmax = 0;
    for (const auto& [e, v] : F) cmax = std::max(cmax, e[2]);
    std::vector<YSeries> hpow(static_cast<size_t>(cmax) + 1);
    hpow[0] = {{YExp{0, 0, 0}, RatFunc(Rational(1))}};
    for (int c = 1; c <= cmax; ++c)
        hpow[static_cast<size_t>(c)] = ys_mul(hpow[static_cast<size_t>(c - 1)], H, maxdeg);
    YSeries out;
    for (const auto& [e, v] : F) {
        if (e[0] + e[1] > maxdeg) continue;
        for (const auto& [he, hv] : hpow[static_cast<size_t>(e[2])]) {
            const YExp ne{e[0] + he[0], e[1] + he[1], 0};
            if (ydeg(ne) > maxdeg) continue;
            ys_add(out, ne, e[2] == 0 ? v : v * hv);
        }
    }
    return out;
}

YSeries ys_derivative(const YSeries& s, int which) {
    YSeries out;
    for (const auto& [e, v] : s) {
        if (e[static_cast<size_t>(which)] == 0) continue;
        YExp ne = e;
        --ne[static_cast<size_t>(which)];
        ys_add(out, ne, v * RatFunc(Rational(e[static_cast<size_t>(which)])));
    }
    return out;
}

RatFunc series_coeff(const YSeries& s, const YExp& e) {
    auto it = s.find(e);
    return it == s.end() ? RatFunc() : it->second;
}

// Residual of the graph equation dH . (F1, F2) - F3, all with y3 -> H,
// truncated at maxdeg.
YSeries graph_residual(const std::array<YSeries, 3>& F, const YSeries& H, int maxdeg) {
    YSeries R = ys_mul(ys_derivative(H, 0), subst_graph(F[0], H, maxdeg), maxdeg);
    for (const auto& [e, v] : ys_mul(ys_derivative(H, 1), subst_graph(F[1], H, maxdeg), maxdeg))
        ys_add(R, e, v);
    for (const auto& [e, v] : subst_graph(F[2], H, maxdeg)) ys_add(R, e, -v);
    return R;
}

// Rebuilds a RatFunc over one shared denominator (the lcm of the coefficient
// denominators) so canonicalization runs once instead of per term.
RatFunc from_series(const YSeries& s, const std::array<Var, 3>& y) {
    if (s.empty()) return RatFunc();
    MPoly den(Rational(1));
    for (const auto& [e, v] : s) den = den * divide_exact(v.den(), poly_gcd(den, v.den()));
    MPoly num;
    for (const auto& [e, v] : s) {
        std::vector<std::pair<Var, int>> mono;
        for (int i = 0; i < 3; ++i)
            if (e[i] > 0) mono.emplace_back(y[static_cast<size_t>(i)], e[i]);
        num += v.num() * divide_exact(den, v.den()) * MPoly::monomial(Rational(1), mono);
    }
    return RatFunc(num, den);
}

// Exact dense solve; throws with the caller's context on a singular system.
std::vector<RatFunc> solve_dense(std::vector<std::vector<RatFunc>> m, std::vector<RatFunc> rhs,
                                 const std::string& what) {
    size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw degenerate_input(what);
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            RatFunc factor = m[row][col] / m[col][col];
            for (size_t k = col; k < n; ++k) m[row][k] = m[row][k] - factor * m[col][k];
            rhs[row] = rhs[row] - factor * rhs[col];
        }
    }
    std::vector<RatFunc> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

} // namespace

CenterManifold center_manifold(const TransformedField& tf, int order) {
    if (order < 2) throw invalid_input("center_manifold: order must be at least 2");

    std::array<YSeries, 3> F;
    for (size_t i = 0; i < 3; ++i) F[i] = to_series(tf.f[i], tf.y, "center_manifold");

    // linear part straight from the field, so hand-built inputs are checked too
    RatFunc L[3][3];
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) {
            YExp e{0, 0, 0};
            e[j] = 1;
            L[i][j] = series_coeff(F[i], e);
        }
    if (!L[0][2].is_zero() || !L[1][2].is_zero() || !L[2][0].is_zero() || !L[2][1].is_zero())
        throw invalid_input("center_manifold: field linear part is not block diagonal");
    const RatFunc rho = L[2][2];
    if (rho.is_zero())
        throw degenerate_input("center_manifold: real eigenvalue is identically zero");
    const RatFunc c11 = L[0][0], c12 = L[0][1], c21 = L[1][0], c22 = L[1][1];

    CenterManifold cm;
    cm.order = order;
    cm.y = {tf.y[0], tf.y[1]};
    YSeries H;
    for (int k = 2; k <= order; ++k) {
        // orders below k already cancel, so the truncated residual is the
        // order-k obstruction
        YSeries R = graph_residual(F, H, k);
        size_t dim = static_cast<size_t>(k + 1);
        std::vector<std::vector<RatFunc>> m(dim, std::vector<RatFunc>(dim));
        std::vector<RatFunc> rhs(dim);
        for (int j = 0; j <= k; ++j) {
            // action of the linear flow on y1^j*y2^(k-j), minus rho
            size_t sj = static_cast<size_t>(j);
            m[sj][sj] = RatFunc(Rational(j)) * c11 + RatFunc(Rational(k - j)) * c22 - rho;
            if (j >= 1) m[sj - 1][sj] = RatFunc(Rational(j)) * c12;
            if (j <= k - 1) m[sj + 1][sj] = RatFunc(Rational(k - j)) * c21;
            rhs[sj] = -series_coeff(R, {j, k - j, 0});
        }
        std::vector<RatFunc> q =
            solve_dense(std::move(m), std::move(rhs),
                        "center_manifold: singular linear system at order " + std::to_string(k));
        for (int j = 0; j <= k; ++j) ys_add(H, {j, k - j, 0}, q[static_cast<size_t>(j)]);
        cm.coeffs.push_back(std::move(q));
    }

    if (!graph_residual(F, H, order).empty())
        throw degenerate_input("center_manifold: residual keeps low-order terms");
    cm.h = from_series(H, tf.y);
    return cm;
}

PlanarField reduce_to_plane(const TransformedField& tf, const CenterManifold& cm) {
    PlanarField out;
    out.y = {tf.y[0], tf.y[1]};
    YSeries H = to_series(cm.h, tf.y, "reduce_to_plane");
    for (size_t i = 0; i < 2; ++i) {
        YSeries G = subst_graph(to_series(tf.f[i], tf.y, "reduce_to_plane"), H, 7);
        out.f[i] = from_series(G, tf.y);
        out.linear[i][0] = series_coeff(G, {1, 0, 0});
        out.linear[i][1] = series_coeff(G, {0, 1, 0});
    }
    out.omega_sq_of_linear =
        out.linear[0][0] * out.linear[1][1] - out.linear[0][1] * out.linear[1][0];
    return out;
}

} // namespace lvc
