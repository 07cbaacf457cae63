#pragma once

// The local equation system attached to a terminally weighted tree, built
// three independent ways (they must agree):
//   * direct:     Phi_e = sum over terminals b of z_[b,o] * w_b_e, where
//                 z_[b,o] is the product of z_a over the path b >= a > o;
//   * inductive:  Phi_e = sum over root children v of z_v * Phi(subtree)_e,
//                 with Phi_e = w_root_e for the 1-vertex tree;
//   * bracket:    rewrite the bracket text (drop the root, ghost a -> z_a,
//                 terminal b -> z_b*w_b_e, comma -> +, brackets -> parens)
//                 and parse the resulting expression.
// Plus the normal-crossing shape test: is the system exactly one squarefree
// Z-monomial times one distinct W variable per component?

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wtree/errors.hpp"
#include "wtree/poly.hpp"
#include "wtree/tree.hpp"

namespace wtree {

namespace detail {

inline void require_terminally_weighted(const WeightedTree& t) {
    if (!classify(t).terminally_weighted)
        throw DomainError("local equations need a terminally weighted tree");
}

} // namespace detail

// Ambient inventory of the system of t: z per non-root vertex, w per
// terminal per slot; display names from the tree's labels.
inline void phi_inventory(const WeightedTree& t, int n, PolySystem& sys) {
    auto ch = t.children_map();
    for (const auto& [id, vx] : t.verts) {
        if (id != t.root) {
            sys.inventory.insert(z_var(id));
            sys.names[z_var(id)] = "z_" + vx.label;
        }
        if (ch.at(id).empty()) {
            for (int e = 1; e <= n; ++e) {
                sys.inventory.insert(w_var(id, e));
                sys.names[w_var(id, e)] = "w_" + vx.label + "_" + std::to_string(e);
            }
        }
    }
}

// Direct construction (sum over terminal vertices).
inline PolySystem phi_direct(const WeightedTree& t, int n) {
    if (n < 1) throw DomainError("component count must be >= 1");
    detail::require_terminally_weighted(t);
    PolySystem sys;
    sys.n = n;
    phi_inventory(t, n, sys);
    auto ch = t.children_map();
    for (int e = 1; e <= n; ++e) {
        Poly comp;
        for (const auto& [id, vx] : t.verts) {
            if (!ch.at(id).empty()) continue; // terminals only
            Poly path = Poly::constant(1);
            for (int cur = id; cur != t.root; cur = t.at(cur).parent)
                path *= Poly::var(z_var(cur));
            comp += path * Poly::var(w_var(id, e));
        }
        sys.components.push_back(comp);
    }
    sys.check();
    return sys;
}

// Inductive construction (recursion over root children).
inline PolySystem phi_inductive(const WeightedTree& t, int n) {
    if (n < 1) throw DomainError("component count must be >= 1");
    detail::require_terminally_weighted(t);
    PolySystem sys;
    sys.n = n;
    phi_inventory(t, n, sys);
    auto ch = t.children_map();
    std::function<Poly(int, int)> rec = [&](int v, int e) -> Poly {
        if (ch.at(v).empty()) return Poly::var(w_var(v, e));
        Poly sum;
        for (int c : ch.at(v)) sum += Poly::var(z_var(c)) * rec(c, e);
        return sum;
    };
    for (int e = 1; e <= n; ++e) sys.components.push_back(rec(t.root, e));
    sys.check();
    return sys;
}

// ---------------------------------------------------------------------------
// Bracket-rewrite construction.
// ---------------------------------------------------------------------------

namespace detail {

// Minimal expression grammar for the rewritten bracket text:
//   expr   := term ("+" term)*
//   term   := factor ("*" factor)*
//   factor := NAME | "(" expr ")"
// Names are resolved to variables through the provided map.
class ExprParser {
  public:
    ExprParser(std::string_view s, const std::map<std::string, Var, std::less<>>& vars)
        : s_(s), vars_(vars) {}

    Poly run() {
        Poly p = expr();
        skip_ws();
        if (i_ < s_.size())
            throw ParseError("trailing characters in expression", i_ + 1);
        return p;
    }

  private:
    std::string_view s_;
    std::size_t i_ = 0;
    const std::map<std::string, Var, std::less<>>& vars_;

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) { ++i_; return true; }
        return false;
    }

    Poly expr() {
        Poly p = term();
        while (eat('+')) p += term();
        return p;
    }
    Poly term() {
        Poly p = factor();
        for (;;) {
            skip_ws();
            if (i_ < s_.size() && s_[i_] == '*') { ++i_; p *= factor(); }
            else break;
        }
        return p;
    }
    Poly factor() {
        skip_ws();
        if (i_ >= s_.size()) throw ParseError("expected a factor", i_ + 1);
        if (s_[i_] == '(') {
            ++i_;
            Poly p = expr();
            if (!eat(')')) throw ParseError("expected ')'", i_ + 1);
            return p;
        }
        std::size_t start = i_;
        while (i_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        if (i_ == start)
            throw ParseError("expected a variable name", i_ + 1);
        auto it = vars_.find(s_.substr(start, i_ - start));
        if (it == vars_.end())
            throw ParseError("unknown variable in expression", start + 1);
        return Poly::var(it->second);
    }
};

} // namespace detail

// String-rewrite construction, operating on bracket text.  The text is
// parsed once to know each vertex's role, then rewritten per component and
// fed through the expression parser.
inline PolySystem phi_bracket(std::string_view bracket_text, int n) {
    if (n < 1) throw DomainError("component count must be >= 1");
    WeightedTree t = parse(bracket_text);
    detail::require_terminally_weighted(t);
    PolySystem sys;
    sys.n = n;
    phi_inventory(t, n, sys);

    auto ch = t.children_map();
    std::map<std::string, Var, std::less<>> resolve;
    for (const auto& [v, name] : sys.names) resolve.emplace(name, v);

    for (int e = 1; e <= n; ++e) {
        // one-vertex tree: the bare root rewrites to w_root_e by convention
        if (t.size() == 1) {
            std::string only = "w_" + t.at(t.root).label + "_" + std::to_string(e);
            sys.components.push_back(detail::ExprParser(only, resolve).run());
            continue;
        }
        std::string rewritten;
        std::function<void(int, bool)> emit = [&](int v, bool is_root) {
            const auto& kids = ch.at(v);
            if (!is_root) {
                rewritten += kids.empty()
                                 ? "z_" + t.at(v).label + "*w_" + t.at(v).label + "_" + std::to_string(e)
                                 : "z_" + t.at(v).label;
            }
            if (!kids.empty()) {
                if (!is_root) rewritten += "*";
                rewritten += "(";
                for (std::size_t i = 0; i < kids.size(); ++i) {
                    if (i) rewritten += "+"; // comma -> plus
                    emit(kids[i], false);
                }
                rewritten += ")";
            }
        };
        emit(t.root, true);
        sys.components.push_back(detail::ExprParser(rewritten, resolve).run());
    }
    sys.check();
    return sys;
}

// ---------------------------------------------------------------------------
// Normal-crossing certificate.
// ---------------------------------------------------------------------------

// Witness that a system has the shape M * w_e with M one common squarefree
// monomial in Z variables and the w_e distinct single W variables.
struct NormalCrossingCertificate {
    Monomial z_monomial;      // the common factor M (possibly empty)
    std::vector<Var> w_vars;  // per component, all distinct
};

inline std::optional<NormalCrossingCertificate>
is_monomial_times_unit_linear(const PolySystem& sys) {
    NormalCrossingCertificate cert;
    std::set<Var> seen_w;
    bool first = true;
    for (const Poly& p : sys.components) {
        if (p.terms.size() != 1) return std::nullopt;
        const auto& [m, c] = *p.terms.begin();
        if (c != 1) return std::nullopt;
        Monomial zpart;
        std::optional<Var> wvar;
        for (const auto& [v, e] : m) {
            if (e != 1) return std::nullopt; // squarefree, w linear
            if (v.kind == VarKind::Z) zpart.push_back({v, e});
            else if (v.kind == VarKind::W) {
                if (wvar) return std::nullopt;
                wvar = v;
            } else {
                return std::nullopt; // no chart variables allowed
            }
        }
        if (!wvar) return std::nullopt;
        if (!seen_w.insert(*wvar).second) return std::nullopt;
        if (first) {
            cert.z_monomial = zpart;
            first = false;
        } else if (cert.z_monomial != zpart) {
            return std::nullopt;
        }
        cert.w_vars.push_back(*wvar);
    }
    if (first) return std::nullopt; // empty system certifies nothing
    return cert;
}

} // namespace wtree
