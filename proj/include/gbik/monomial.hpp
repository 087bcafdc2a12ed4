#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "gbik/vars.hpp"

namespace gbik {

// Power product. Entries are sorted by variable id and exponents are > 0,
// so the empty vector is the monomial 1.
struct Monomial {
    std::vector<std::pair<VarId, int>> e;

    static Monomial one() { return {}; }
    static Monomial of(VarId v, int exp = 1);

    bool is_one() const { return e.empty(); }
    int total_degree() const;
    int exponent(VarId v) const;
    int degree_in(VarId v) const { return exponent(v); }
    bool depends_on(VarId v) const { return exponent(v) > 0; }

    bool divides(const Monomial& m) const;       // *this | m
    Monomial divided_by(const Monomial& d) const;  // pre: d | *this

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

Monomial mono_lcm(const Monomial& a, const Monomial& b);
Monomial mono_gcd(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

// Monomial order over an explicit variable precedence (highest first).
// Comparing a monomial that involves a variable outside the precedence list
// is a ring mismatch and throws.
struct MonoOrder {
    enum class Kind { lex, grevlex };

    Kind kind;
    std::vector<VarId> prec;

    static std::shared_ptr<const MonoOrder> make(Kind k, std::vector<VarId> precedence);

    int compare(const Monomial& a, const Monomial& b) const;  // -1, 0, 1 (a vs b)
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
    bool contains(VarId v) const;
    int rank_of(VarId v) const;  // 0 = highest precedence, -1 = absent

    bool same_as(const MonoOrder& o) const { return kind == o.kind && prec == o.prec; }

  private:
    std::vector<int> rank_;  // indexed by VarId, -1 when absent
    friend struct MonoOrderAccess;
};

std::string order_kind_name(MonoOrder::Kind k);

}  // namespace gbik
