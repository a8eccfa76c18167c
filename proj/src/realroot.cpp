#include "lvc/realroot.hpp"

#include <sstream>

#include "lvc/error.hpp"

namespace lvc {

namespace {

// The single variable p actually uses, if any.
std::optional<Var> used_variable(const MPoly& p) {
    std::optional<Var> found;
    for (const auto& v : p.vars()) {
        if (!p.uses(v)) continue;
        if (found) throw invalid_input("isolate_univariate: polynomial uses several variables");
        found = v;
    }
    return found;
}

UniPoly uni_squarefree(const UniPoly& u) {
    if (u.degree() < 1) return u;
    const UniPoly g = uni_gcd(u, u.derivative());
    if (g.degree() < 1) return u;
    return u.divrem(g).first;
}

void shrink_half(const UniPoly& sf, Interval& box) {
    if (box.is_point()) return;
    box = refine_root(sf, box, box.width() / Rational(2));
}

// Exact membership of the unique sf-root inside rt.box in the half-open
// interval (bound.lo, bound.hi], refining the box as needed.
bool root_in_halfopen(const UniPoly& sf, IsolatedRoot& rt, const Interval& bound) {
    const Rational& lo = bound.lo();
    const Rational& hi = bound.hi();
    for (;;) {
        const Interval& b = rt.box;
        if (b.is_point()) return lo < b.lo() && b.lo() <= hi;
        if (b.hi() <= lo || b.lo() > hi) return false;
        if (lo < b.lo() && b.hi() <= hi) return true;
        if (b.contains(lo) && sf.eval(lo).is_zero()) return false;
        if (b.contains(hi) && sf.eval(hi).is_zero()) return true;
        shrink_half(sf, rt.box);
    }
}

enum class BoxStatus { certified, refuted, unknown };

// One interval Newton step for the system {p, q} on Ix x Iy.  Strict
// containment of the Newton image certifies existence and uniqueness of a
// common root; an empty intersection refutes.
BoxStatus newton_step(const MPoly& p, const MPoly& q, const MPoly& px, const MPoly& py,
                      const MPoly& qx, const MPoly& qy, const Var& x, const Var& y,
                      const Interval& Ix, const Interval& Iy) {
    const std::map<Var, Interval> box = {{x, Ix}, {y, Iy}};
    const Interval a = px.eval_interval(box);
    const Interval b = py.eval_interval(box);
    const Interval c = qx.eval_interval(box);
    const Interval d = qy.eval_interval(box);
    const Interval det = a * d - b * c;
    if (det.contains(Rational(0))) return BoxStatus::unknown;

    const Rational m1 = Ix.mid(), m2 = Iy.mid();
    const std::map<Var, Rational> m = {{x, m1}, {y, m2}};
    const Interval f1 = Interval::point(p.eval(m));
    const Interval f2 = Interval::point(q.eval(m));
    const Interval n1 = Interval::point(m1) - (f1 * d - b * f2) / det;
    const Interval n2 = Interval::point(m2) - (a * f2 - c * f1) / det;
    if (Ix.contains_interior(n1) && Iy.contains_interior(n2)) return BoxStatus::certified;
    if (!Ix.intersects(n1) || !Iy.intersects(n2)) return BoxStatus::refuted;
    return BoxStatus::unknown;
}

// Exact decision when one coordinate is pinned to a rational: the common
// roots on the line x = x0 are the roots of gcd(p(x0,.), q(x0,.)); at most one
// can lie in Iy because each is a root of the y-eliminant.
BoxStatus decide_on_line(const MPoly& p, const MPoly& q, const Var& fixed_var,
                         const Rational& fixed_val, const Var& free_var, const Interval& range) {
    const MPoly pl = p.eval_at(fixed_var, fixed_val);
    const MPoly ql = q.eval_at(fixed_var, fixed_val);
    if (pl.is_zero() && ql.is_zero())
        throw degenerate_input("mrealroot: system degenerates on a coordinate line");
    // A component vanishing identically on the line leaves the other one to
    // cut out the roots.
    const UniPoly g = pl.is_zero()  ? UniPoly(ql, free_var)
                      : ql.is_zero() ? UniPoly(pl, free_var)
                                     : uni_gcd(UniPoly(pl, free_var), UniPoly(ql, free_var));
    if (g.degree() < 1) return BoxStatus::refuted;
    if (range.is_point())
        return g.eval(range.lo()).is_zero() ? BoxStatus::certified : BoxStatus::refuted;
    const auto chain = sturm_chain(uni_squarefree(g));
    return count_roots(chain, range.lo(), range.hi()) == 1 ? BoxStatus::certified
                                                           : BoxStatus::refuted;
}

Sign exact_sign(const MPoly& z, const Var& x, const Var& y, const Rational& vx,
                const Rational& vy) {
    return sign_of(z.eval_at(x, vx).eval_at(y, vy).eval({}));
}

} // namespace

std::vector<IsolatedRoot> isolate_univariate(const MPoly& p, const Rational& width) {
    if (p.is_zero()) throw invalid_input("isolate_univariate: zero polynomial");
    if (width.sign() <= 0) throw invalid_input("isolate_univariate: width must be positive");
    const std::optional<Var> v = used_variable(p);
    if (!v) return {};
    return isolate_roots(UniPoly(p, *v), width);
}

Triangularization triangularize(const std::array<MPoly, 2>& sys, const std::array<Var, 2>& vars) {
    const MPoly& p = sys[0];
    const MPoly& q = sys[1];
    const Var& x = vars[0];
    const Var& y = vars[1];
    if (p.is_zero() || q.is_zero()) throw invalid_input("triangularize: zero polynomial in system");

    Triangularization out;
    const MPoly g = poly_gcd(p, q);
    if (!g.is_constant()) {
        out.common_factor = g;
        return out;
    }

    const int dpy = p.degree_in(y), dqy = q.degree_in(y);
    if (dpy == 0 && dqy == 0) return out;
    const MPoly res = resultant(p, q, y);
    if (res.is_constant()) return out;
    const MPoly r = normalize_primitive(squarefree_part(res, x));
    const MPoly& s = dpy == 0 ? q : dqy == 0 ? p : dpy < dqy ? p : q;
    out.chains.push_back({r, s});
    return out;
}

std::string certificate_to_text(const IsolationCertificate& cert) {
    std::ostringstream os;
    os << "vars " << cert.vars[0].name() << " " << cert.vars[1].name() << " width "
       << cert.width.str() << "\n";
    for (const auto& b : cert.boxes) {
        os << b.box[0].str() << " " << b.box[1].str() << " [";
        for (size_t i = 0; i < b.side_signs.size(); ++i) {
            if (i) os << ",";
            os << sign_char(b.side_signs[i]);
        }
        os << "]";
        if (b.multiple) os << " multiple";
        os << "\n";
    }
    return os.str();
}

IsolationCertificate mrealroot(const std::array<MPoly, 2>& sys, const std::array<Var, 2>& vars,
                               const Rational& width, const std::vector<MPoly>& side,
                               const MRealRootOptions& opt) {
    const MPoly& p = sys[0];
    const MPoly& q = sys[1];
    const Var& x = vars[0];
    const Var& y = vars[1];
    if (p.is_zero() || q.is_zero()) throw invalid_input("mrealroot: zero polynomial in system");
    if (width.sign() <= 0) throw invalid_input("mrealroot: width must be positive");
    if (!poly_gcd(p, q).is_constant())
        throw invalid_input("mrealroot: inputs share a nonconstant factor");

    IsolationCertificate cert;
    cert.vars = vars;
    cert.width = width;

    const bool py_free = p.degree_in(y) == 0, qy_free = q.degree_in(y) == 0;
    const bool px_free = p.degree_in(x) == 0, qx_free = q.degree_in(x) == 0;
    if ((py_free && qy_free) || (px_free && qx_free)) return cert;
    const MPoly rx = resultant(p, q, y);
    const MPoly ry = resultant(p, q, x);
    if (rx.is_constant() || ry.is_constant()) return cert;

    const UniPoly ux(rx, x), uy(ry, y);
    const UniPoly sfx = uni_squarefree(ux), sfy = uni_squarefree(uy);
    std::vector<IsolatedRoot> roots_x = isolate_roots(ux, width);
    std::vector<IsolatedRoot> roots_y = isolate_roots(uy, width);
    if (opt.region) {
        auto filter = [](std::vector<IsolatedRoot>& roots, const UniPoly& sf, const Interval& b) {
            std::vector<IsolatedRoot> kept;
            for (auto& rt : roots)
                if (root_in_halfopen(sf, rt, b)) kept.push_back(rt);
            roots = std::move(kept);
        };
        filter(roots_x, sfx, (*opt.region)[0]);
        filter(roots_y, sfy, (*opt.region)[1]);
    }

    const MPoly dpx = p.derivative(x), dpy = p.derivative(y);
    const MPoly dqx = q.derivative(x), dqy = q.derivative(y);

    for (const auto& xr : roots_x) {
        for (const auto& yr : roots_y) {
            Interval Ix = xr.box, Iy = yr.box;
            BoxStatus status = BoxStatus::unknown;
            for (int round = 0; round <= opt.budget && status == BoxStatus::unknown; ++round) {
                if (Ix.is_point() && Iy.is_point()) {
                    const bool hit = exact_sign(p, x, y, Ix.lo(), Iy.lo()) == Sign::zero &&
                                     exact_sign(q, x, y, Ix.lo(), Iy.lo()) == Sign::zero;
                    status = hit ? BoxStatus::certified : BoxStatus::refuted;
                    break;
                }
                if (Ix.is_point()) {
                    status = decide_on_line(p, q, x, Ix.lo(), y, Iy);
                    break;
                }
                if (Iy.is_point()) {
                    status = decide_on_line(p, q, y, Iy.lo(), x, Ix);
                    break;
                }
                const std::map<Var, Interval> box = {{x, Ix}, {y, Iy}};
                if (p.eval_interval(box).sign() != Sign::indeterminate ||
                    q.eval_interval(box).sign() != Sign::indeterminate) {
                    status = BoxStatus::refuted;
                    break;
                }
                status = newton_step(p, q, dpx, dpy, dqx, dqy, x, y, Ix, Iy);
                if (status == BoxStatus::unknown) {
                    shrink_half(sfx, Ix);
                    shrink_half(sfy, Iy);
                }
            }
            if (status == BoxStatus::unknown)
                throw certification_failure(
                    "mrealroot: root candidate undecided within refinement budget");
            if (status == BoxStatus::refuted) continue;

            CertifiedBox out;
            out.multiple = xr.multiplicity > 1 || yr.multiplicity > 1;
            for (const MPoly& z : side) {
                Sign s = Sign::indeterminate;
                for (int round = 0; round <= opt.budget; ++round) {
                    if (Ix.is_point() && Iy.is_point()) {
                        s = exact_sign(z, x, y, Ix.lo(), Iy.lo());
                        break;
                    }
                    s = z.eval_interval({{x, Ix}, {y, Iy}}).sign();
                    if (s != Sign::indeterminate) break;
                    shrink_half(sfx, Ix);
                    shrink_half(sfy, Iy);
                }
                if (s == Sign::zero)
                    throw certification_failure("mrealroot: side polynomial vanishes on a root box");
                if (s == Sign::indeterminate)
                    throw certification_failure(
                        "mrealroot: side sign undecided within refinement budget");
                out.side_signs.push_back(s);
            }
            out.box = {Ix, Iy};
            cert.boxes.push_back(out);
        }
    }
    return cert;
}

} // namespace lvc
