#include "gbik/ratfunc.hpp"

#include <sstream>

#include "gbik/poly_io.hpp"
#include "gbik/poly_ops.hpp"

namespace gbik {

namespace {

QPoly orderless_const(const Rat& r) {
    QPoly p;  // ord deliberately null; only constant terms may live here
    if (!r.is_zero()) p.terms.push_back({Monomial::one(), r});
    return p;
}

QPoly lift_poly(const QPoly& p, const std::shared_ptr<const MonoOrder>& o) {
    if (p.ord) {
        if (o && !p.ord->same_as(*o)) throw RingMismatch("RatFunc: mixed parameter rings");
        return p;
    }
    if (!o) return p;
    QPoly r = p;
    r.ord = o;
    return r;
}

std::shared_ptr<const MonoOrder> join_ring(const RatFunc& a, const RatFunc& b) {
    auto ra = a.ring();
    auto rb = b.ring();
    if (ra && rb && !ra->same_as(*rb)) throw RingMismatch("RatFunc: mixed parameter rings");
    return ra ? ra : rb;
}

}  // namespace

RatFunc::RatFunc(const Rat& r) : num(orderless_const(r)), den(orderless_const(Rat(1))) {}

RatFunc::RatFunc(QPoly n) : num(std::move(n)) {
    den = lift_poly(orderless_const(Rat(1)), num.ord);
}

RatFunc::RatFunc(QPoly n, QPoly d) {
    auto o = n.ord ? n.ord : d.ord;
    n = lift_poly(n, o);
    d = lift_poly(d, o);
    if (d.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    if (n.is_zero()) {
        num = n;
        den = lift_poly(orderless_const(Rat(1)), o);
        return;
    }
    if (!d.is_constant() && o) {
        QPoly g = poly_gcd(n, d);
        if (!g.is_constant()) {
            n = exact_div(n, g);
            d = exact_div(d, g);
        }
    }
    Rat c = rational_content(d);
    if (d.lc() < 0) c = -c;
    num = n.scaled(Rat(1) / c);
    den = d.scaled(Rat(1) / c);
}

Rat RatFunc::constant_value() const {
    if (!is_constant()) throw std::logic_error("RatFunc::constant_value: not constant");
    if (is_zero()) return Rat(0);
    return num.lc() / den.lc();
}

RatFunc RatFunc::lifted(const std::shared_ptr<const MonoOrder>& o) const {
    RatFunc r = *this;
    r.num = lift_poly(num, o);
    r.den = lift_poly(den, o);
    return r;
}

RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    for (auto& t : r.num.terms) t.c = -t.c;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    auto o = join_ring(a, b);
    if (!o) return RatFunc(a.constant_value() + b.constant_value());
    RatFunc x = a.lifted(o);
    RatFunc y = b.lifted(o);
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    return RatFunc(x.num * y.den + y.num * x.den, x.den * y.den);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    auto o = join_ring(a, b);
    if (a.is_zero() || b.is_zero()) return RatFunc(Rat(0)).lifted(o);
    if (!o) return RatFunc(a.constant_value() * b.constant_value());
    RatFunc x = a.lifted(o);
    RatFunc y = b.lifted(o);
    return RatFunc(x.num * y.num, x.den * y.den);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
    auto o = join_ring(a, b);
    if (!o) return RatFunc(a.constant_value() / b.constant_value());
    RatFunc x = a.lifted(o);
    RatFunc y = b.lifted(o);
    return RatFunc(x.num * y.den, x.den * y.num);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
    // canonical form: term lists decide, ring pointers do not
    auto eq = [](const QPoly& p, const QPoly& q) {
        if (p.terms.size() != q.terms.size()) return false;
        for (std::size_t i = 0; i < p.terms.size(); ++i)
            if (!(p.terms[i].m == q.terms[i].m) || p.terms[i].c != q.terms[i].c) return false;
        return true;
    };
    return eq(a.num, b.num) && eq(a.den, b.den);
}

bool operator<(const RatFunc& a, const RatFunc& b) {
    if (a == b) return false;
    auto o = join_ring(a, b);
    if (!o) return a.constant_value() < b.constant_value();
    RatFunc x = a.lifted(o);
    RatFunc y = b.lifted(o);
    int c = poly_compare(x.num, y.num);
    if (c != 0) return c < 0;
    return poly_compare(x.den, y.den) < 0;
}

Rat RatFunc::eval(const std::map<VarId, Rat>& point) const {
    Rat d = eval_poly(den, point);
    if (d.is_zero())
        throw DegenerateSpecialization("RatFunc::eval: denominator vanishes at point");
    return eval_poly(num, point) / d;
}

std::string ratfunc_to_string(const RatFunc& f) {
    if (f.is_zero()) return "0";
    if (f.is_constant()) return rat_to_string(f.constant_value());
    std::string s = "(" + poly_to_string(f.num) + ")";
    if (!(f.den.is_constant() && !f.den.is_zero() && f.den.lc() == 1))
        s += "/(" + poly_to_string(f.den) + ")";
    return s;
}

PPoly ppoly_zero(std::shared_ptr<const MonoOrder> main_ord) { return PPoly(std::move(main_ord)); }

PPoly ppoly_from_qpoly(const QPoly& p, std::shared_ptr<const MonoOrder> main_ord) {
    PPoly r(std::move(main_ord));
    for (const auto& t : p.terms) {
        if (!t.m.is_one())
            throw RingMismatch("ppoly_from_qpoly: input must be constant in main variables");
        r.add_term(t.m, RatFunc(t.c));
    }
    return r;
}

PPoly split_params(const QPoly& mixed, std::shared_ptr<const MonoOrder> main_ord,
                   std::shared_ptr<const MonoOrder> param_ord) {
    PPoly r(main_ord);
    for (const auto& t : mixed.terms) {
        Monomial main_part, param_part;
        for (const auto& [v, k] : t.m.e) {
            if (main_ord->contains(v))
                main_part.e.emplace_back(v, k);
            else if (param_ord->contains(v))
                param_part.e.emplace_back(v, k);
            else
                throw RingMismatch("split_params: variable " + var_name(v) +
                                   " in neither main nor parameter ring");
        }
        QPoly coeff(param_ord);
        coeff.add_term(param_part, t.c);
        r.add_term(main_part, RatFunc(std::move(coeff)));
    }
    return r;
}

QPoly specialize(const PPoly& p, const std::map<VarId, Rat>& point) {
    QPoly r(p.ord);
    for (const auto& t : p.terms) r.add_term(t.m, t.c.eval(point));
    return r;
}

std::string ppoly_to_string(const PPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : p.terms) {
        if (t.c.is_constant()) {
            Rat v = t.c.constant_value();
            bool neg = v < 0;
            if (first)
                out << (neg ? "-" : "");
            else
                out << (neg ? " - " : " + ");
            Rat a = neg ? Rat(-v) : v;
            if (t.m.is_one())
                out << rat_to_string(a);
            else if (a == 1)
                out << mono_to_string(t.m, *p.ord);
            else
                out << rat_to_string(a) << "*" << mono_to_string(t.m, *p.ord);
        } else {
            if (!first) out << " + ";
            if (t.m.is_one())
                out << ratfunc_to_string(t.c);
            else
                out << ratfunc_to_string(t.c) << "*" << mono_to_string(t.m, *p.ord);
        }
        first = false;
    }
    return out.str();
}

}  // namespace gbik
