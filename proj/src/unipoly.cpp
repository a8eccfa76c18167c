#include "lvc/unipoly.hpp"

#include <algorithm>

#include "lvc/error.hpp"

namespace lvc {

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(const MPoly& p, const Var& v) {
    for (const auto& w : p.vars())
        if (!(w == v) && p.uses(w))
            throw invalid_input("polynomial is not univariate in " + v.name() +
                                ": uses " + w.name());
    int d = p.degree_in(v);
    c_.assign(static_cast<size_t>(d) + 1, Rational(0));
    for (const auto& [e, coef] : p.terms()) {
        int k = 0;
        for (size_t i = 0; i < e.size(); ++i)
            if (p.vars()[i] == v) k = e[i];
        c_[static_cast<size_t>(k)] += coef;
    }
    trim();
}

UniPoly UniPoly::constant(const Rational& c) {
    UniPoly p;
    if (!c.is_zero()) p.c_.push_back(c);
    return p;
}

const Rational& UniPoly::coeff(size_t i) const {
    static const Rational zero(0);
    return i < c_.size() ? c_[i] : zero;
}

const Rational& UniPoly::lead() const {
    if (c_.empty()) throw invalid_input("leading coefficient of zero polynomial");
    return c_.back();
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Interval UniPoly::eval(const Interval& x) const {
    Interval acc{Rational(0), Rational(0)};
    for (size_t i = c_.size(); i-- > 0;)
        acc = acc * x + Interval{c_[i], c_[i]};
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (c_.empty() || o.c_.empty()) return UniPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rational& s) const {
    if (s.is_zero()) return UniPoly();
    UniPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    return r;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& q) const {
    if (q.is_zero()) throw division_by_zero("univariate division by zero polynomial");
    UniPoly r = *this;
    if (degree() < q.degree()) return {UniPoly(), r};
    std::vector<Rational> quot(static_cast<size_t>(degree() - q.degree()) + 1, Rational(0));
    Rational inv_lq = q.lead().inv();
    while (!r.is_zero() && r.degree() >= q.degree()) {
        size_t shift = static_cast<size_t>(r.degree() - q.degree());
        Rational f = r.lead() * inv_lq;
        quot[shift] = f;
        // r -= f * x^shift * q
        for (size_t i = 0; i < q.c_.size(); ++i) r.c_[shift + i] -= f * q.c_[i];
        r.trim();
    }
    return {UniPoly(std::move(quot)), r};
}

UniPoly UniPoly::normalized() const {
    if (c_.empty()) return UniPoly();
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& c : c_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    if (c_.back().sign() < 0) scale = -scale;
    return scaled(scale);
}

MPoly UniPoly::to_mpoly(const Var& v) const {
    MPoly out;
    MPoly xv = MPoly::variable(v);
    for (size_t i = c_.size(); i-- > 0;) out = out * xv + MPoly(c_[i]);
    return out;
}

UniPoly uni_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a.normalized(), y = b.normalized();
    while (!y.is_zero()) {
        UniPoly r = x.divrem(y).second.normalized();
        x = std::move(y);
        y = std::move(r);
    }
    return x.normalized();
}

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
    std::vector<UniPoly> chain;
    if (p.is_zero()) throw invalid_input("Sturm chain of zero polynomial");
    // Chain members may only be rescaled by positive factors, or the sign
    // variation counts break; normalized() flips negative leads, so undo that.
    auto scaled_down = [](const UniPoly& q) {
        UniPoly n = q.normalized();
        return q.lead().sign() < 0 ? -n : n;
    };
    chain.push_back(scaled_down(p));
    if (p.degree() == 0) return chain;
    chain.push_back(scaled_down(p.derivative()));
    while (chain.back().degree() > 0) {
        UniPoly r = chain[chain.size() - 2].divrem(chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(scaled_down(-r));
    }
    return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace

int sign_variations_at(const std::vector<UniPoly>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& p : chain) signs.push_back(p.eval(x).sign());
    return variations(signs);
}

int sign_variations_at_neg_inf(const std::vector<UniPoly>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) {
        int s = p.is_zero() ? 0 : p.lead().sign();
        if (!p.is_zero() && (p.degree() & 1)) s = -s;
        signs.push_back(s);
    }
    return variations(signs);
}

int sign_variations_at_pos_inf(const std::vector<UniPoly>& chain) {
    std::vector<int> signs;
    for (const auto& p : chain) signs.push_back(p.is_zero() ? 0 : p.lead().sign());
    return variations(signs);
}

int count_roots(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
    if (!(a < b)) throw invalid_input("count_roots needs a < b");
    return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

int count_all_roots(const std::vector<UniPoly>& chain) {
    return sign_variations_at_neg_inf(chain) - sign_variations_at_pos_inf(chain);
}

Rational root_bound(const UniPoly& p) {
    if (p.is_zero()) throw invalid_input("root bound of zero polynomial");
    Rational m(0);
    Rational inv_lead = p.lead().inv().abs();
    for (int i = 0; i < p.degree(); ++i)
        m = rat_max(m, p.coeff(static_cast<size_t>(i)).abs() * inv_lead);
    return m + Rational(2);
}

Interval refine_root(const UniPoly& p, Interval box, const Rational& width) {
    int sa = p.eval(box.lo()).sign();
    int sb = p.eval(box.hi()).sign();
    if (sa == 0) return Interval{box.lo(), box.lo()};
    if (sb == 0) return Interval{box.hi(), box.hi()};
    if (sa == sb) throw invalid_input("refine_root: no sign change on interval");
    while (box.width() > width) {
        Rational m = box.mid();
        int sm = p.eval(m).sign();
        if (sm == 0) return Interval{m, m};
        if (sm == sa)
            box = Interval{m, box.hi()};
        else
            box = Interval{box.lo(), m};
    }
    return box;
}

namespace {

// Yun square-free decomposition; factors with their multiplicities in p.
std::vector<std::pair<UniPoly, int>> yun(const UniPoly& p) {
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly dp = p.derivative();
    UniPoly g = uni_gcd(p, dp);
    if (g.degree() == 0) {
        out.emplace_back(p.normalized(), 1);
        return out;
    }
    UniPoly c = p.divrem(g).first;
    UniPoly d = dp.divrem(g).first - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        UniPoly a = uni_gcd(c, d);
        if (a.degree() > 0) out.emplace_back(a.normalized(), i);
        c = c.divrem(a).first;
        d = d.divrem(a).first - c.derivative();
        ++i;
    }
    return out;
}

struct Isolator {
    const UniPoly& sf;
    const std::vector<UniPoly>& chain;
    Rational width;
    std::vector<Interval> out;

    // a < b, both non-roots of sf.
    void isolate(const Rational& a, const Rational& b) {
        int count = count_roots(chain, a, b);
        if (count == 0) return;
        if (count == 1) {
            out.push_back(refine_root(sf, Interval{a, b}, width));
            return;
        }
        Rational m = Interval{a, b}.mid();
        if (sf.eval(m).is_zero()) {
            // Exact rational root at the midpoint: emit it as a point and carve
            // out a root-free collar around it before recursing.
            Rational delta = (b - a) / Rational(4);
            while (sf.eval(m - delta).is_zero() || sf.eval(m + delta).is_zero() ||
                   count_roots(chain, m - delta, m + delta) != 1)
                delta = delta / Rational(2);
            out.push_back(Interval{m, m});
            isolate(a, m - delta);
            isolate(m + delta, b);
            return;
        }
        isolate(a, m);
        isolate(m, b);
    }
};

} // namespace

std::vector<IsolatedRoot> isolate_roots(const UniPoly& p, const Rational& width) {
    if (p.is_zero()) throw invalid_input("cannot isolate roots of the zero polynomial");
    if (width.sign() <= 0) throw invalid_input("isolation width must be positive");
    std::vector<IsolatedRoot> out;
    if (p.degree() == 0) return out;
    auto factors = yun(p);
    UniPoly sf = UniPoly::constant(Rational(1));
    for (const auto& fm : factors) sf = sf * fm.first;
    sf = sf.normalized();
    auto chain = sturm_chain(sf);
    Rational bound = root_bound(sf);
    Isolator iso{sf, chain, width, {}};
    iso.isolate(-bound, bound);
    std::sort(iso.out.begin(), iso.out.end(),
              [](const Interval& x, const Interval& y) { return x.lo() < y.lo(); });
    bool simple = factors.size() == 1 && factors[0].second == 1;
    for (const auto& box : iso.out) {
        int mult = 1;
        if (!simple) {
            for (const auto& [f, m] : factors) {
                bool hit;
                if (box.is_point())
                    hit = f.eval(box.lo()).is_zero();
                else
                    hit = count_roots(sturm_chain(f), box.lo(), box.hi()) == 1;
                if (hit) {
                    mult = m;
                    break;
                }
            }
        }
        out.push_back(IsolatedRoot{box, mult});
    }
    return out;
}

} // namespace lvc
