#include "lvc/parser.hpp"

#include <cctype>

#include "lvc/error.hpp"

namespace lvc {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : s_(text) {}

    RatFunc parse() {
        RatFunc e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) {
        throw invalid_input("parse error at position " + std::to_string(pos_) + ": " + msg +
                            " in \"" + s_ + "\"");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFunc expr() {
        RatFunc acc = term();
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    RatFunc term() {
        RatFunc acc = factor();
        while (true) {
            if (eat('*'))
                acc *= factor();
            else if (eat('/'))
                acc /= factor();
            else
                return acc;
        }
    }

    RatFunc factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        RatFunc base = atom();
        skip_ws();
        bool has_pow = false;
        if (pos_ + 1 < s_.size() && s_[pos_] == '*' && s_[pos_ + 1] == '*') {
            pos_ += 2;
            has_pow = true;
        } else if (eat('^')) {
            has_pow = true;
        }
        if (!has_pow) return base;
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("integer exponent expected");
        unsigned long e = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + static_cast<unsigned long>(s_[pos_] - '0');
            if (e > 1000000) fail("exponent too large");
            ++pos_;
        }
        RatFunc p(Rational(1));
        for (unsigned long i = 0; i < e; ++i) p *= base;
        return neg ? p.inv() : p;
    }

    RatFunc atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc e = expr();
            if (!eat(')')) fail("')' expected");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        return symbol();
    }

    RatFunc number() {
        size_t start = pos_;
        auto digits = [&] {
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        };
        digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            digits();
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                digits();
            else
                pos_ = save; // 'e' belongs to an identifier that follows
        }
        if (pos_ == start) fail("number expected");
        return RatFunc(Rational::from_string(s_.substr(start, pos_ - start)));
    }

    RatFunc symbol() {
        skip_ws();
        std::string name;
        // UTF-8 Greek aliases.
        if (pos_ + 1 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xCE) {
            unsigned char b = static_cast<unsigned char>(s_[pos_ + 1]);
            if (b == 0xBB) name = "lambda";
            if (b == 0xBC) name = "mu";
            if (!name.empty()) {
                pos_ += 2;
                return RatFunc::variable(Var(name));
            }
        }
        if (pos_ + 1 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xCF &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0x89) {
            pos_ += 2;
            return RatFunc::variable(Var("omega"));
        }
        auto idchar = [&](char ch) {
            return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
        };
        if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            fail("symbol expected");
        while (pos_ < s_.size() && idchar(s_[pos_])) name.push_back(s_[pos_++]);
        return RatFunc::variable(Var(name));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

RatFunc parse_ratfunc(const std::string& text) { return Parser(text).parse(); }

MPoly parse_poly(const std::string& text) {
    RatFunc f = parse_ratfunc(text);
    if (!f.den().is_constant())
        throw invalid_input("expression is not polynomial: denominator " + f.den().str());
    return f.num().scaled(f.den().constant_value().inv());
}

} // namespace lvc
