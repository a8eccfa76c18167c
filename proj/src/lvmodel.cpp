#include "lvc/lvmodel.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lvc/parser.hpp"

namespace lvc {

LVSystem lvsystem_from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        LVSystem sys;
        for (const auto& p : j.at("parameters"))
            sys.parameters.emplace_back(p.get<std::string>());
        const auto& rows = j.at("A");
        if (!rows.is_array() || rows.size() != 3)
            throw invalid_input("model JSON: \"A\" must have 3 rows");
        for (int i = 0; i < 3; ++i) {
            if (!rows[i].is_array() || rows[i].size() != 3)
                throw invalid_input("model JSON: each row of \"A\" must have 3 entries");
            for (int k = 0; k < 3; ++k) {
                RatFunc e = parse_ratfunc(rows[i][k].get<std::string>());
                for (const Var& v : e.used_vars())
                    if (std::find(sys.parameters.begin(), sys.parameters.end(), v) ==
                        sys.parameters.end())
                        throw invalid_input("model JSON: entry (" + std::to_string(i + 1) + "," +
                                            std::to_string(k + 1) + ") uses undeclared symbol " +
                                            v.name());
                sys.A.at(i, k) = e;
            }
        }
        return sys;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("model JSON: ") + e.what());
    }
}

std::string lvsystem_to_json(const LVSystem& sys) {
    nlohmann::json j;
    j["parameters"] = nlohmann::json::array();
    for (const Var& v : sys.parameters) j["parameters"].push_back(v.name());
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < 3; ++k) row.push_back(sys.A.at(i, k).str());
        rows.push_back(row);
    }
    j["A"] = rows;
    return j.dump(2) + "\n";
}

Vec3 row_sums(const LVSystem& sys) {
    Vec3 b;
    for (int i = 0; i < 3; ++i)
        b[static_cast<size_t>(i)] = sys.A.at(i, 0) + sys.A.at(i, 1) + sys.A.at(i, 2);
    return b;
}

std::array<RatFunc, 3> vector_field(const LVSystem& sys, const std::array<Var, 3>& x) {
    const RatFunc one{Rational(1)};
    std::array<RatFunc, 3> xs{RatFunc(MPoly::variable(x[0])), RatFunc(MPoly::variable(x[1])),
                              RatFunc(MPoly::variable(x[2]))};
    std::array<RatFunc, 3> f;
    for (size_t i = 0; i < 3; ++i) {
        RatFunc growth;
        for (size_t j = 0; j < 3; ++j)
            growth = growth + sys.A.at(static_cast<int>(i), static_cast<int>(j)) * (xs[j] - one);
        f[i] = xs[i] * growth;
    }
    return f;
}

Vec3 axial_equilibrium(const LVSystem& sys, int axis) {
    if (axis < 0 || axis > 2) throw invalid_input("axial_equilibrium: axis index out of range");
    const RatFunc& aii = sys.A.at(axis, axis);
    if (aii.is_zero())
        throw degenerate_input("axial_equilibrium: a_" + std::to_string(axis + 1) +
                               std::to_string(axis + 1) + " is identically zero");
    Vec3 r;
    r[static_cast<size_t>(axis)] = row_sums(sys)[static_cast<size_t>(axis)] / aii;
    return r;
}

Vec3 planar_equilibrium(const LVSystem& sys, int face) {
    if (face < 0 || face > 2) throw invalid_input("planar_equilibrium: face index out of range");
    size_t i = static_cast<size_t>((face + 1) % 3);
    size_t j = static_cast<size_t>((face + 2) % 3);
    int ii = static_cast<int>(i), jj = static_cast<int>(j);
    Vec3 b = row_sums(sys);
    RatFunc d = sys.A.at(ii, ii) * sys.A.at(jj, jj) - sys.A.at(ii, jj) * sys.A.at(jj, ii);
    if (d.is_zero())
        throw degenerate_input("planar_equilibrium: singular face subsystem on {x_" +
                               std::to_string(face + 1) + " = 0}");
    Vec3 q;
    q[i] = (b[i] * sys.A.at(jj, jj) - sys.A.at(ii, jj) * b[j]) / d;
    q[j] = (sys.A.at(ii, ii) * b[j] - b[i] * sys.A.at(jj, ii)) / d;
    return q;
}

Sign certify_sign(const RatFunc& f, const Box& box, int budget) {
    if (f.is_zero()) return Sign::zero;
    std::vector<Var> vars = f.used_vars();
    for (const Var& v : vars)
        if (box.find(v) == box.end())
            throw invalid_input("certify_sign: no interval for variable " + v.name());

    std::deque<Box> work{box};
    bool seen = false;
    Sign agreed = Sign::indeterminate;
    while (!work.empty()) {
        Box cur = std::move(work.front());
        work.pop_front();
        Sign s = Sign::indeterminate;
        bool pole = false;
        try {
            s = f.eval_interval(cur).sign();
        } catch (const division_by_zero&) {
            pole = true; // denominator enclosure straddles zero: refine
        }
        if (!pole && s != Sign::indeterminate) {
            if (!seen) {
                agreed = s;
                seen = true;
            } else if (agreed != s) {
                return Sign::indeterminate; // sign not constant on the box
            }
            continue;
        }
        const Var* split = nullptr;
        Rational widest(0);
        for (const Var& v : vars) {
            const Interval& iv = cur.at(v);
            if (!iv.is_point() && (split == nullptr || widest < iv.width())) {
                split = &v;
                widest = iv.width();
            }
        }
        if (split == nullptr || budget <= 0) return Sign::indeterminate;
        --budget;
        auto [lo, hi] = cur.at(*split).halves();
        Box right = cur;
        cur[*split] = lo;
        right[*split] = hi;
        work.push_back(std::move(cur));
        work.push_back(std::move(right));
    }
    return seen ? agreed : Sign::indeterminate;
}

CompetitiveStatus competitive_check(const LVSystem& sys, const Box& box, int budget) {
    bool undecided = false;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Sign s = certify_sign(sys.A.at(i, j), box, budget);
            if (s == Sign::positive || s == Sign::zero) return CompetitiveStatus::not_competitive;
            if (s == Sign::indeterminate) undecided = true;
        }
    return undecided ? CompetitiveStatus::indeterminate : CompetitiveStatus::competitive;
}

ZeemanInvariants zeeman_invariants(const LVSystem& sys, const Box& box, int budget) {
    ZeemanInvariants inv;
    inv.b = row_sums(sys);
    for (auto& row : inv.R) row.fill(Sign::indeterminate);
    inv.Q.fill(Sign::indeterminate);
    inv.q_exists.fill(Sign::indeterminate);

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            size_t si = static_cast<size_t>(i), sj = static_cast<size_t>(j);
            inv.alpha[si][sj] = inv.b[si] * sys.A.at(j, i) / sys.A.at(i, i) - inv.b[sj];
            inv.R[si][sj] = certify_sign(inv.alpha[si][sj], box, budget);
        }

    for (int k = 0; k < 3; ++k) {
        size_t sk = static_cast<size_t>(k);
        Vec3 q;
        try {
            q = planar_equilibrium(sys, k);
        } catch (const degenerate_input&) {
            inv.q_exists[sk] = Sign::negative;
            continue;
        }
        size_t i = static_cast<size_t>((k + 1) % 3);
        size_t j = static_cast<size_t>((k + 2) % 3);
        Sign pi = certify_sign(q[i], box, budget);
        Sign pj = certify_sign(q[j], box, budget);
        if (pi == Sign::positive && pj == Sign::positive)
            inv.q_exists[sk] = Sign::positive;
        else if (pi == Sign::negative || pi == Sign::zero || pj == Sign::negative ||
                 pj == Sign::zero)
            inv.q_exists[sk] = Sign::negative;
        RatFunc Aq = sys.A.at(k, 0) * q[0] + sys.A.at(k, 1) * q[1] + sys.A.at(k, 2) * q[2];
        inv.beta[sk] = Aq - inv.b[sk];
        if (inv.q_exists[sk] == Sign::positive) inv.Q[sk] = certify_sign(inv.beta[sk], box, budget);
    }
    return inv;
}

ClassTable class_table_from_text(const std::string& text) {
    ClassTable table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fail = [lineno](const std::string& m) {
            return invalid_input("class table line " + std::to_string(lineno) + ": " + m);
        };
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string w;
        while (ls >> w) tok.push_back(w);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (tok.size() != 11 || tok[0].rfind("class=", 0) != 0 || tok[1] != "pattern")
            throw fail("expected \"class=<int> pattern\" followed by 9 sign fields");
        ClassPattern p;
        try {
            size_t used = 0;
            p.class_number = std::stoi(tok[0].substr(6), &used);
            if (used != tok[0].size() - 6) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw fail("bad class number in " + tok[0]);
        }
        std::map<std::string, int*> slot{
            {"R12", &p.R[0][1]}, {"R13", &p.R[0][2]}, {"R21", &p.R[1][0]},
            {"R23", &p.R[1][2]}, {"R31", &p.R[2][0]}, {"R32", &p.R[2][1]},
            {"Q11", &p.Q[0]},    {"Q22", &p.Q[1]},    {"Q33", &p.Q[2]}};
        std::set<std::string> seen;
        for (size_t t = 2; t < tok.size(); ++t) {
            size_t eq = tok[t].find('=');
            if (eq == std::string::npos) throw fail("bad field " + tok[t]);
            std::string key = tok[t].substr(0, eq), val = tok[t].substr(eq + 1);
            auto it = slot.find(key);
            if (it == slot.end()) throw fail("unknown field " + key);
            if (!seen.insert(key).second) throw fail("duplicate field " + key);
            if (val == "+1")
                *it->second = 1;
            else if (val == "-1")
                *it->second = -1;
            else if (val == "*")
                *it->second = 0;
            else
                throw fail("bad sign value " + val + " (want +1, -1 or *)");
        }
        table.entries.push_back(p);
    }
    return table;
}

ClassTable class_table_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open class table file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return class_table_from_text(buf.str());
}

namespace {

// Match one required sign against a certified one.  Wildcards always match;
// an indeterminate certified sign can neither match nor refute a +1/-1
// requirement, which the caller must treat as "blocked".
enum class MatchState { ok, refuted, blocked };

MatchState match_one(int want, Sign got) {
    if (want == 0) return MatchState::ok;
    if (got == Sign::indeterminate) return MatchState::blocked;
    int g = got == Sign::positive ? 1 : got == Sign::negative ? -1 : 0;
    return g == want ? MatchState::ok : MatchState::refuted;
}

MatchState match_q(int want, Sign exists, Sign beta_sign) {
    if (want == 0) return MatchState::ok;
    if (exists == Sign::negative) return MatchState::refuted; // no positive face equilibrium
    if (exists == Sign::indeterminate) return MatchState::blocked;
    return match_one(want, beta_sign);
}

} // namespace

ClassifyResult classify(const ZeemanInvariants& inv, const ClassTable& table) {
    std::ostringstream pat;
    const char* rname[3][3] = {{"", "R12", "R13"}, {"R21", "", "R23"}, {"R31", "R32", ""}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            pat << rname[i][j] << '='
                << sign_char(inv.R[static_cast<size_t>(i)][static_cast<size_t>(j)]) << ' ';
        }
    for (int k = 0; k < 3; ++k) {
        size_t sk = static_cast<size_t>(k);
        char c = inv.q_exists[sk] == Sign::negative ? 'x' : sign_char(inv.Q[sk]);
        pat << 'Q' << k + 1 << k + 1 << '=' << c << (k < 2 ? " " : "");
    }

    static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                                          {0, 2, 1},
                                                          {1, 0, 2},
                                                          {1, 2, 0},
                                                          {2, 0, 1},
                                                          {2, 1, 0}}};
    bool any_blocked = false;
    for (const ClassPattern& e : table.entries) {
        for (const auto& sigma : perms) {
            bool refuted = false, blocked = false;
            auto absorb = [&](MatchState st) {
                if (st == MatchState::refuted) refuted = true;
                if (st == MatchState::blocked) blocked = true;
            };
            for (int i = 0; i < 3 && !refuted; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    size_t oi = static_cast<size_t>(sigma[static_cast<size_t>(i)]);
                    size_t oj = static_cast<size_t>(sigma[static_cast<size_t>(j)]);
                    absorb(match_one(e.R[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                     inv.R[oi][oj]));
                }
            for (int k = 0; k < 3 && !refuted; ++k) {
                size_t ok = static_cast<size_t>(sigma[static_cast<size_t>(k)]);
                absorb(match_q(e.Q[static_cast<size_t>(k)], inv.q_exists[ok], inv.Q[ok]));
            }
            if (refuted) continue;
            if (blocked) {
                any_blocked = true;
                continue;
            }
            return ClassifyResult{e.class_number, sigma, pat.str()};
        }
    }
    if (any_blocked)
        throw invalid_input("classify: lookup blocked by indeterminate signs; pattern: " +
                            pat.str());
    return ClassifyResult{std::nullopt, {0, 1, 2}, pat.str()};
}

} // namespace lvc
