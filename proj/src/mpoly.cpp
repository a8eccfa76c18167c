#include "lvc/mpoly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lvc {

namespace {

// Global interning table.  Rank is (fixed-list index | 6, name): the six model
// variables come first in the spec order, everything else after, alphabetically.
struct VarTable {
    std::vector<std::string> names;
    std::vector<int> fixed_rank;
    std::unordered_map<std::string, uint32_t> index;
    std::mutex mu;

    static int fixed_rank_of(const std::string& s) {
        static const char* fixed[] = {"lambda", "n", "mu", "y1", "y2", "y3"};
        for (int i = 0; i < 6; ++i)
            if (s == fixed[i]) return i;
        return 6;
    }

    uint32_t intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        uint32_t id = static_cast<uint32_t>(names.size());
        names.push_back(name);
        fixed_rank.push_back(fixed_rank_of(name));
        index.emplace(name, id);
        return id;
    }
};

VarTable& table() {
    static VarTable t;
    return t;
}

} // namespace

Var::Var(const std::string& name) : id_(table().intern(name)) {
    if (name.empty()) throw invalid_input("empty variable name");
}

const std::string& Var::name() const { return table().names[id_]; }

bool Var::operator<(const Var& o) const {
    if (id_ == o.id_) return false;
    const auto& t = table();
    int ra = t.fixed_rank[id_], rb = t.fixed_rank[o.id_];
    if (ra != rb) return ra < rb;
    if (ra < 6) return false; // equal fixed rank => same variable, handled above
    return t.names[id_] < t.names[o.id_];
}

bool MPoly::GrlexDesc::operator()(const Exps& a, const Exps& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    // Lexicographic tie-break, first variable most significant.
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

MPoly::MPoly(const Rational& c) {
    if (!c.is_zero()) terms_.emplace(Exps{}, c);
}

MPoly MPoly::variable(const Var& v) {
    MPoly p;
    p.vars_ = {v};
    p.terms_.emplace(Exps{1}, Rational(1));
    return p;
}

MPoly MPoly::monomial(const Rational& c, const std::vector<std::pair<Var, int>>& powers) {
    MPoly p(c);
    for (const auto& [v, e] : powers) {
        if (e < 0) throw invalid_input("negative exponent in monomial");
        MPoly x = variable(v);
        p = p * x.pow(static_cast<unsigned>(e));
    }
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

Rational MPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw invalid_input("constant_value on non-constant polynomial");
    return terms_.begin()->second;
}

bool MPoly::uses(const Var& v) const {
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (!(vars_[i] == v)) continue;
        for (const auto& [e, c] : terms_)
            if (e[i] > 0) return true;
        return false;
    }
    return false;
}

int MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first; // grlex-leading term has maximal degree
    return std::accumulate(e.begin(), e.end(), 0);
}

int MPoly::degree_in(const Var& v) const {
    int d = 0;
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (!(vars_[i] == v)) continue;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }
    return 0;
}

const Rational& MPoly::leading_coeff() const {
    if (terms_.empty()) throw invalid_input("leading coefficient of zero polynomial");
    return terms_.begin()->second;
}

Rational MPoly::coeff_of(const std::vector<std::pair<Var, int>>& powers) const {
    Exps e(vars_.size(), 0);
    for (const auto& [v, k] : powers) {
        bool found = false;
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == v) {
                e[i] = k;
                found = true;
                break;
            }
        if (!found && k != 0) return Rational(0);
    }
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    // Drop trailing unused variables only when the polynomial collapsed entirely:
    // keeping the var list stable is cheaper than re-indexing after every op.
    if (terms_.empty()) vars_.clear();
}

MPoly MPoly::with_vars(const std::vector<Var>& target) const {
    if (target == vars_) return *this;
    std::vector<int> pos(vars_.size(), -1);
    for (size_t i = 0; i < vars_.size(); ++i) {
        for (size_t j = 0; j < target.size(); ++j)
            if (target[j] == vars_[i]) {
                pos[i] = static_cast<int>(j);
                break;
            }
        if (pos[i] < 0) throw invalid_input("with_vars: target not a superset");
    }
    MPoly out;
    out.vars_ = target;
    for (const auto& [e, c] : terms_) {
        Exps ne(target.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

std::vector<Var> merged_vars(const MPoly& a, const MPoly& b) {
    std::vector<Var> out = a.vars_;
    for (const auto& v : b.vars_)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

MPoly MPoly::operator-() const {
    MPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MPoly MPoly::operator+(const MPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (vars_ == o.vars_) {
        MPoly out = *this;
        for (const auto& [e, c] : o.terms_) {
            auto [it, inserted] = out.terms_.emplace(e, c);
            if (!inserted) it->second += c;
        }
        out.prune();
        return out;
    }
    auto mv = merged_vars(*this, o);
    return with_vars(mv) + o.with_vars(mv);
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (is_zero() || o.is_zero()) return MPoly();
    if (vars_ == o.vars_) {
        MPoly out;
        out.vars_ = vars_;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exps e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                auto [it, inserted] = out.terms_.emplace(std::move(e), ca * cb);
                if (!inserted) it->second += ca * cb;
            }
        out.prune();
        return out;
    }
    auto mv = merged_vars(*this, o);
    return with_vars(mv) * o.with_vars(mv);
}

MPoly MPoly::scaled(const Rational& c) const {
    if (c.is_zero()) return MPoly();
    MPoly out = *this;
    for (auto& [e, v] : out.terms_) v *= c;
    return out;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly out(Rational(1)), base = *this;
    while (e) {
        if (e & 1u) out = out * base;
        e >>= 1u;
        if (e) base = base * base;
    }
    return out;
}

bool MPoly::operator==(const MPoly& o) const {
    if (vars_ == o.vars_) return terms_ == o.terms_;
    return (*this - o).is_zero();
}

MPoly MPoly::derivative(const Var& v) const {
    size_t vi = vars_.size();
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == v) vi = i;
    if (vi == vars_.size()) return MPoly();
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [e, c] : terms_) {
        if (e[vi] == 0) continue;
        Exps ne = e;
        ne[vi] -= 1;
        out.terms_.emplace(std::move(ne), c * Rational(e[vi]));
    }
    out.prune();
    return out;
}

std::vector<MPoly> MPoly::coeffs_in(const Var& v) const {
    int d = degree_in(v);
    std::vector<MPoly> out(static_cast<size_t>(d) + 1);
    size_t vi = vars_.size();
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == v) vi = i;
    if (vi == vars_.size()) {
        out[0] = *this;
        return out;
    }
    std::vector<Var> rest;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (i != vi) rest.push_back(vars_[i]);
    for (const auto& [e, c] : terms_) {
        Exps ne;
        ne.reserve(e.size() - 1);
        for (size_t i = 0; i < e.size(); ++i)
            if (i != vi) ne.push_back(e[i]);
        auto& slot = out[static_cast<size_t>(e[vi])];
        if (slot.vars_.empty() && slot.terms_.empty()) slot.vars_ = rest;
        slot.add_term(ne, c);
    }
    for (auto& p : out) p.prune();
    return out;
}

MPoly MPoly::from_coeffs(const Var& v, const std::vector<MPoly>& coeffs) {
    MPoly x = variable(v), out;
    for (size_t i = coeffs.size(); i-- > 0;) out = out * x + coeffs[i];
    return out;
}

void MPoly::add_term(const Exps& e, const Rational& c) {
    if (c.is_zero()) return;
    if (e.size() != vars_.size()) throw invalid_input("add_term arity mismatch");
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::build(std::vector<Var> vars, TermMap terms) {
    MPoly p;
    p.vars_ = std::move(vars);
    p.terms_ = std::move(terms);
    p.prune();
    return p;
}

MPoly MPoly::eval_at(const Var& v, const Rational& value) const {
    auto cs = coeffs_in(v);
    MPoly out;
    for (size_t i = cs.size(); i-- > 0;) out = out.scaled(value) + cs[i];
    return out;
}

Rational MPoly::eval(const std::map<Var, Rational>& point) const {
    MPoly cur = *this;
    for (const auto& [v, val] : point)
        if (cur.uses(v)) cur = cur.eval_at(v, val);
    if (!cur.is_constant())
        throw invalid_input("eval: point does not cover all variables");
    return cur.constant_value();
}

Interval MPoly::eval_interval(const std::map<Var, Interval>& box) const {
    if (is_zero()) return Interval::point(Rational(0));
    if (is_constant()) return Interval::point(constant_value());
    // Horner in the first used variable, recursing on the coefficients.
    const Var& v = vars_.front();
    if (!uses(v)) {
        // vars_ may contain stale unused entries after coefficient extraction; strip.
        auto cs = coeffs_in(v);
        return cs[0].eval_interval(box);
    }
    auto it = box.find(v);
    if (it == box.end())
        throw invalid_input("eval_interval: missing box entry for " + v.name());
    auto cs = coeffs_in(v);
    Interval acc = Interval::point(Rational(0));
    for (size_t i = cs.size(); i-- > 0;)
        acc = acc * it->second + cs[i].eval_interval(box);
    return acc;
}

Rational MPoly::content() const {
    if (is_zero()) throw invalid_input("content of zero polynomial");
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
    }
    return Rational(num_gcd, den_lcm);
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool has_mono = std::any_of(e.begin(), e.end(), [](int x) { return x > 0; });
        if (!has_mono) {
            os << a.str();
        } else {
            bool printed = false;
            if (!a.is_one()) {
                os << a.str();
                printed = true;
            }
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << vars_[i].name();
                if (e[i] > 1) os << "^" << e[i];
                printed = true;
            }
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

} // namespace lvc
