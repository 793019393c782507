#include "swhw/polynomial.hpp"

#include "swhw/error.hpp"

#include <cctype>

namespace swhw {

namespace {

void trim(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ZPoly parse() {
        ZPoly p = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return p;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    int peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : -1;
    }

    ZPoly expr() {
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = s_[i_++] == '-';
        ZPoly acc = term();
        if (neg) acc = ZPoly() - acc;
        for (;;) {
            int ch = peek();
            if (ch != '+' && ch != '-') break;
            ++i_;
            ZPoly t = term();
            acc = ch == '+' ? acc + t : acc - t;
        }
        return acc;
    }

    ZPoly term() {
        ZPoly acc = factor();
        for (;;) {
            int ch = peek();
            if (ch == '*') {
                ++i_;
                acc = acc * factor();
            } else if (ch == '(' || ch == 'x' || (ch >= 0 && std::isdigit(ch))) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    ZPoly factor() {
        ZPoly b = primary();
        if (peek() == '^') {
            ++i_;
            skip();
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            if (st == i_) fail("exponent expected");
            unsigned long e = std::stoul(s_.substr(st, i_ - st));
            if (e > 4096) fail("exponent too large");
            b = b.pow(e);
        }
        return b;
    }

    ZPoly primary() {
        int ch = peek();
        if (ch == '(') {
            ++i_;
            ZPoly e = expr();
            if (peek() != ')') fail("')' expected");
            ++i_;
            return e;
        }
        if (ch == 'x') {
            ++i_;
            return ZPoly::x();
        }
        if (ch >= 0 && std::isdigit(ch)) {
            size_t st = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return ZPoly::constant(mpz_class(s_.substr(st, i_ - st)));
        }
        fail("term expected");
    }
};

using QPoly = std::vector<mpq_class>;

void trimq(QPoly& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

QPoly qmod(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        mpq_class f = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        trimq(a);
    }
    return a;
}

}  // namespace

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(c); }

ZPoly ZPoly::constant(const mpz_class& a) { return ZPoly(std::vector<mpz_class>{a}); }

ZPoly ZPoly::x() { return ZPoly(std::vector<mpz_class>{0, 1}); }

mpz_class ZPoly::coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : mpz_class(0);
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i));
    return ZPoly(r);
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
    std::vector<mpz_class> r(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
    return ZPoly(r);
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
    if (is_zero() || o.is_zero()) return ZPoly();
    std::vector<mpz_class> r(c.size() + o.c.size() - 1);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
    return ZPoly(r);
}

ZPoly ZPoly::pow(unsigned long e) const {
    ZPoly acc = constant(1), b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

ZPoly ZPoly::derivative() const {
    std::vector<mpz_class> r;
    for (size_t i = 1; i < c.size(); ++i) r.push_back(c[i] * static_cast<unsigned long>(i));
    return ZPoly(r);
}

std::string ZPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& a = c[static_cast<size_t>(i)];
        if (a == 0) continue;
        mpz_class m = abs(a);
        if (out.empty())
            out += a < 0 ? "-" : "";
        else
            out += a < 0 ? "-" : "+";
        if (m != 1 || i == 0) out += m.get_str();
        if (i >= 1) out += "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

ZPoly parse_poly(const std::string& s) { return Parser(s).parse(); }

int gcd_degree(const ZPoly& f, const ZPoly& g) {
    QPoly a(f.c.begin(), f.c.end()), b(g.c.begin(), g.c.end());
    trimq(a);
    trimq(b);
    while (!b.empty()) {
        QPoly r = qmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

}  // namespace swhw
