#pragma once

// Exact sparse multivariate polynomials over the integers, in the three
// variable families the local equations use:
//   z_a      one per non-root vertex a        (kind Z, slot 0)
//   w_b_e    one per terminal b and slot e    (kind W, slot e in [1, n])
//   u_j      one per blowup chart direction j (kind U, vertex -1, slot j)
// Variables order Z < W < U, then by vertex id, then by slot; term order for
// display is graded (total degree first), then lexicographic in that
// variable order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wtree/errors.hpp"

namespace wtree {

enum class VarKind : int { Z = 0, W = 1, U = 2 };

struct Var {
    VarKind kind = VarKind::Z;
    int vertex = -1; // -1 for U variables
    int slot = 0;    // 0 for Z, component index for W, chart direction for U
    auto operator<=>(const Var&) const = default;
};

inline Var z_var(int vertex) { return {VarKind::Z, vertex, 0}; }
inline Var w_var(int vertex, int slot) { return {VarKind::W, vertex, slot}; }
inline Var u_var(int slot) { return {VarKind::U, -1, slot}; }

// Exponent vector, sorted by Var, exponents > 0.
using Monomial = std::vector<std::pair<Var, int>>;

inline int monomial_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

inline Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return out;
}

// Display/term order: higher total degree first, then lexicographic with
// smaller variables (earlier in the global order) and higher exponents first.
inline bool monomial_display_less(const Monomial& a, const Monomial& b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da > db;
    std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() > b.size();
}

class Poly {
  public:
    // term map keyed by monomial; invariant: no zero coefficients
    std::map<Monomial, long long> terms;

    Poly() = default;
    static Poly constant(long long c) {
        Poly p;
        if (c != 0) p.terms[{}] = c;
        return p;
    }
    static Poly var(Var v, int exp = 1) {
        Poly p;
        if (exp < 0) throw DomainError("negative exponent");
        if (exp == 0) return constant(1);
        p.terms[{{v, exp}}] = 1;
        return p;
    }

    bool is_zero() const { return terms.empty(); }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms) {
            long long& slot = terms[m];
            slot += c;
            if (slot == 0) terms.erase(m);
        }
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }

    Poly operator-() const {
        Poly p = *this;
        for (auto& [m, c] : p.terms) c = -c;
        return p;
    }
    Poly& operator-=(const Poly& o) { return *this += -o; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly p;
        for (const auto& [ma, ca] : a.terms)
            for (const auto& [mb, cb] : b.terms) {
                Monomial m = monomial_mul(ma, mb);
                long long& slot = p.terms[m];
                slot += ca * cb;
                if (slot == 0) p.terms.erase(m);
            }
        return p;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(int e) const {
        if (e < 0) throw DomainError("negative exponent");
        Poly r = constant(1);
        for (int i = 0; i < e; ++i) r *= *this;
        return r;
    }

    bool operator==(const Poly& o) const = default;

    std::set<Var> vars() const {
        std::set<Var> out;
        for (const auto& [m, c] : terms)
            for (const auto& [v, e] : m) out.insert(v);
        return out;
    }

    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms) d = std::max(d, monomial_degree(m));
        return d;
    }
};

// Simultaneous substitution v -> bindings[v]; unbound variables persist.
inline Poly substitute(const Poly& p, const std::map<Var, Poly>& bindings) {
    Poly out;
    for (const auto& [m, c] : p.terms) {
        Poly term = Poly::constant(c);
        for (const auto& [v, e] : m) {
            auto it = bindings.find(v);
            term *= (it == bindings.end()) ? Poly::var(v, e) : it->second.pow(e);
        }
        out += term;
    }
    return out;
}

// Variable renaming along an injective map; unmapped variables persist.
inline Poly rename(const Poly& p, const std::map<Var, Var>& m) {
    std::map<Var, Poly> b;
    for (const auto& [from, to] : m) b[from] = Poly::var(to);
    return substitute(p, b);
}

// Integer-point evaluation; every variable of p must be bound.
inline long long evaluate(const Poly& p, const std::map<Var, long long>& point) {
    long long total = 0;
    for (const auto& [m, c] : p.terms) {
        long long t = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end())
                throw DomainError("evaluation point misses a variable");
            for (int i = 0; i < e; ++i) t *= it->second;
        }
        total += t;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Display.
// ---------------------------------------------------------------------------

// Names for display are provided by the caller (built from tree labels);
// unknown variables fall back to a kind/vertex/slot spelling.
inline std::string var_name(Var v, const std::map<Var, std::string>& names) {
    auto it = names.find(v);
    if (it != names.end()) return it->second;
    switch (v.kind) {
        case VarKind::Z: return "z#" + std::to_string(v.vertex);
        case VarKind::W: return "w#" + std::to_string(v.vertex) + "_" + std::to_string(v.slot);
        default: return "u_" + std::to_string(v.slot);
    }
}

// Canonical text: terms in display order joined by " + "/" - ", factors as
// name or name^e, coefficient prefix only when it is not 1, e.g.
//   z_a*w_a_1 + 2*z_b^2*w_c_1
inline std::string poly_to_string(const Poly& p, const std::map<Var, std::string>& names) {
    if (p.terms.empty()) return "0";
    std::vector<std::pair<Monomial, long long>> terms(p.terms.begin(), p.terms.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return monomial_display_less(a.first, b.first);
    });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& [m, c] = terms[i];
        long long mag = c < 0 ? -c : c;
        if (i == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        std::string body;
        if (mag != 1 || m.empty()) body = std::to_string(mag);
        for (const auto& [v, e] : m) {
            if (!body.empty()) body += "*";
            body += var_name(v, names);
            if (e > 1) body += "^" + std::to_string(e);
        }
        out += body;
    }
    return out;
}

// A system of polynomials sharing one ambient variable inventory; component
// count n matches the slot range of its W variables.
struct PolySystem {
    int n = 0;
    std::vector<Poly> components;
    std::set<Var> inventory;
    std::map<Var, std::string> names;

    // every variable that occurs must be declared in the inventory
    void check() const {
        if (static_cast<int>(components.size()) != n)
            throw VerifyError("component count does not match n");
        for (const Poly& p : components)
            for (Var v : p.vars())
                if (!inventory.count(v))
                    throw VerifyError("system uses a variable outside its inventory");
    }
};

} // namespace wtree
