#include "gbik/poly_io.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gbik {

std::string mono_to_string(const Monomial& m, const MonoOrder& ord) {
    if (m.is_one()) return "1";
    // print variables in precedence order
    std::ostringstream out;
    bool first = true;
    for (VarId v : ord.prec) {
        int k = m.exponent(v);
        if (k == 0) continue;
        if (!first) out << "*";
        out << var_name(v);
        if (k > 1) out << "^" << k;
        first = false;
    }
    return out.str();
}

std::string poly_to_string(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : p.terms) {
        Rat c = t.c;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        Rat a = neg ? Rat(-c) : c;
        if (t.m.is_one()) {
            out << rat_to_string(a);
        } else {
            if (a != 1) out << rat_to_string(a) << "*";
            out << mono_to_string(t.m, *p.ord);
        }
        first = false;
    }
    return out.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        if (i >= s.size()) throw std::invalid_argument("parse_poly: unexpected end");
        return s[i++];
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("parse_poly: " + what + " at offset " + std::to_string(i) +
                                    " in \"" + s + "\"");
    }
};

std::string read_integer(Cursor& c) {
    c.skip_ws();
    std::string d;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
        d.push_back(c.s[c.i++]);
    if (d.empty()) c.fail("expected digits");
    return d;
}

std::string read_name(Cursor& c) {
    c.skip_ws();
    std::string n;
    if (c.i >= c.s.size()) c.fail("expected variable name");
    char ch = c.s[c.i];
    if (!(std::isalpha(static_cast<unsigned char>(ch)) || ch == '_')) c.fail("expected variable");
    while (c.i < c.s.size()) {
        ch = c.s[c.i];
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
            n.push_back(ch);
            ++c.i;
        } else {
            break;
        }
    }
    return n;
}

}  // namespace

QPoly parse_poly(const std::string& text, std::shared_ptr<const MonoOrder> ord) {
    Cursor c{text};
    QPoly p(ord);
    if (c.done()) c.fail("empty input");
    bool expect_term = true;
    int sign = 1;
    while (!c.done()) {
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            c.take();
            if (expect_term && ch == '-') sign = -sign;
            if (!expect_term) sign = (ch == '-') ? -1 : 1;
            expect_term = true;
            continue;
        }
        if (!expect_term) c.fail("expected '+' or '-'");
        // one term: optional rational coefficient, then optional variable factors
        Rat coef = 1;
        bool saw_coef = false;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num = read_integer(c);
            std::string den;
            if (c.peek() == '/') {
                c.take();
                den = read_integer(c);
            }
            coef = rat_from_string(den.empty() ? num : num + "/" + den);
            saw_coef = true;
        }
        Monomial m = Monomial::one();
        bool expect_factor = !saw_coef;
        while (true) {
            char nx = c.peek();
            if (nx == '*') {
                c.take();
                expect_factor = true;
                continue;
            }
            bool is_var = std::isalpha(static_cast<unsigned char>(nx)) || nx == '_';
            if (!is_var) break;
            if (!expect_factor && saw_coef) c.fail("missing '*' between factors");
            std::string name = read_name(c);
            int exp = 1;
            if (c.peek() == '^') {
                c.take();
                exp = std::stoi(read_integer(c));
            }
            VarId v = var(name);
            if (!ord->contains(v))
                throw RingMismatch("parse_poly: variable " + name + " not in order");
            m = m * Monomial::of(v, exp);
            expect_factor = false;
        }
        if (!saw_coef && m.is_one()) c.fail("expected term");
        p.add_term(m, Rat(sign) * coef);
        sign = 1;
        expect_term = false;
    }
    if (expect_term) c.fail("dangling sign");
    return p;
}

}  // namespace gbik
