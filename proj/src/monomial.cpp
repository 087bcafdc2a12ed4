#include "gbik/monomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace gbik {

Monomial Monomial::of(VarId v, int exp) {
    if (exp < 0) throw std::invalid_argument("Monomial::of: negative exponent");
    Monomial m;
    if (exp > 0) m.e.emplace_back(v, exp);
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [v, k] : e) d += k;
    return d;
}

int Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(e.begin(), e.end(), v,
                               [](const auto& p, VarId w) { return p.first < w; });
    if (it != e.end() && it->first == v) return it->second;
    return 0;
}

bool Monomial::divides(const Monomial& m) const {
    auto it = m.e.begin();
    for (const auto& [v, k] : e) {
        while (it != m.e.end() && it->first < v) ++it;
        if (it == m.e.end() || it->first != v || it->second < k) return false;
    }
    return true;
}

Monomial Monomial::divided_by(const Monomial& d) const {
    Monomial q;
    q.e.reserve(e.size());
    auto it = d.e.begin();
    for (const auto& [v, k] : e) {
        int sub = 0;
        while (it != d.e.end() && it->first < v) {
            throw std::invalid_argument("Monomial::divided_by: does not divide");
        }
        if (it != d.e.end() && it->first == v) {
            sub = it->second;
            ++it;
        }
        int r = k - sub;
        if (r < 0) throw std::invalid_argument("Monomial::divided_by: does not divide");
        if (r > 0) q.e.emplace_back(v, r);
    }
    if (it != d.e.end()) throw std::invalid_argument("Monomial::divided_by: does not divide");
    return q;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.e.reserve(a.e.size() + b.e.size());
    auto ia = a.e.begin();
    auto ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first < ib->first)
            r.e.push_back(*ia++);
        else if (ib->first < ia->first)
            r.e.push_back(*ib++);
        else {
            r.e.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    r.e.insert(r.e.end(), ia, a.e.end());
    r.e.insert(r.e.end(), ib, b.e.end());
    return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.e.begin();
    auto ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first < ib->first)
            r.e.push_back(*ia++);
        else if (ib->first < ia->first)
            r.e.push_back(*ib++);
        else {
            r.e.emplace_back(ia->first, std::max(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    r.e.insert(r.e.end(), ia, a.e.end());
    r.e.insert(r.e.end(), ib, b.e.end());
    return r;
}

Monomial mono_gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    auto ia = a.e.begin();
    auto ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else {
            r.e.emplace_back(ia->first, std::min(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    auto ia = a.e.begin();
    auto ib = b.e.begin();
    while (ia != a.e.end() && ib != b.e.end()) {
        if (ia->first < ib->first)
            ++ia;
        else if (ib->first < ia->first)
            ++ib;
        else
            return false;
    }
    return true;
}

std::shared_ptr<const MonoOrder> MonoOrder::make(Kind k, std::vector<VarId> precedence) {
    auto ord = std::make_shared<MonoOrder>();
    ord->kind = k;
    ord->prec = std::move(precedence);
    VarId max_id = -1;
    for (VarId v : ord->prec) max_id = std::max(max_id, v);
    ord->rank_.assign(static_cast<std::size_t>(max_id + 1), -1);
    for (std::size_t i = 0; i < ord->prec.size(); ++i) {
        VarId v = ord->prec[i];
        if (v < 0) throw std::invalid_argument("MonoOrder: bad variable id");
        if (ord->rank_[static_cast<std::size_t>(v)] != -1)
            throw std::invalid_argument("MonoOrder: duplicate variable " + var_name(v));
        ord->rank_[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    return ord;
}

bool MonoOrder::contains(VarId v) const {
    return v >= 0 && v < static_cast<VarId>(rank_.size()) &&
           rank_[static_cast<std::size_t>(v)] != -1;
}

int MonoOrder::rank_of(VarId v) const {
    if (!contains(v)) return -1;
    return rank_[static_cast<std::size_t>(v)];
}

int MonoOrder::compare(const Monomial& a, const Monomial& b) const {
    thread_local std::vector<int> ea, eb;
    ea.assign(prec.size(), 0);
    eb.assign(prec.size(), 0);
    int da = 0, db = 0;
    for (const auto& [v, k] : a.e) {
        int r = rank_of(v);
        if (r < 0)
            throw std::invalid_argument("MonoOrder::compare: variable " + var_name(v) +
                                        " not in order");
        ea[static_cast<std::size_t>(r)] = k;
        da += k;
    }
    for (const auto& [v, k] : b.e) {
        int r = rank_of(v);
        if (r < 0)
            throw std::invalid_argument("MonoOrder::compare: variable " + var_name(v) +
                                        " not in order");
        eb[static_cast<std::size_t>(r)] = k;
        db += k;
    }
    if (kind == Kind::lex) {
        for (std::size_t i = 0; i < prec.size(); ++i) {
            if (ea[i] != eb[i]) return ea[i] > eb[i] ? 1 : -1;
        }
        return 0;
    }
    // grevlex: total degree first, ties broken by the smallest variable with
    // a differing exponent, where the larger exponent loses.
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = prec.size(); i-- > 0;) {
        if (ea[i] != eb[i]) return ea[i] < eb[i] ? 1 : -1;
    }
    return 0;
}

std::string order_kind_name(MonoOrder::Kind k) {
    return k == MonoOrder::Kind::lex ? "lex" : "grevlex";
}

}  // namespace gbik
