#pragma once

// Blowup centers, per-chart substitutions with their normalizations, the
// matched-tree correspondence (chart i of a branch tree looks like the tree
// obtained by advancing the i-th branch), and the staged pipeline that
// drives every branch tree of weight d down to certified path trees.
//
// Every chart is verified on construction:
//   1. applying the chart substitution to the system of the source equals
//      the factored form (trunk monomial) * z_ai * (Phi_i + sum u_j Phi_j),
//      built independently from the branch subtrees;
//   2. the system of the matched tree, renamed through variable_map and
//      expanded through the normalization, equals the chart system exactly;
//   3. the normalization is unit-triangular (each rewritten variable maps to
//      itself plus terms free of every rewritten variable) and variable_map
//      is injective.
// A failure throws VerifyError; charts are never silently repaired.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wtree/enumerate.hpp"
#include "wtree/errors.hpp"
#include "wtree/ops.hpp"
#include "wtree/phi.hpp"
#include "wtree/poly.hpp"
#include "wtree/tree.hpp"

namespace wtree {

namespace detail {

// Children of the branch vertex in display order (canonical encoding, label
// tiebreak); chart/direction indices are 1-based positions in this order.
inline std::vector<int> branch_children_ordered(const WeightedTree& t,
                                                const TreeClassification& c) {
    auto ch = t.children_map();
    std::map<int, CanonEnc> encs;
    build_enc(t, ch, t.root, true, &encs);
    std::vector<int> kids = ch.at(*c.branch_vertex);
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
        if (int r = enc_cmp(encs.at(a), encs.at(b))) return r < 0;
        return t.at(a).label < t.at(b).label;
    });
    return kids;
}

// Copy of the subtree rooted at v, with ids (and labels) preserved.
inline WeightedTree subtree(const WeightedTree& t, int v) {
    auto ch = t.children_map();
    WeightedTree s;
    s.root = v;
    std::vector<int> stack{v};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        s.verts[x] = t.at(x);
        for (int c : ch.at(x)) stack.push_back(c);
    }
    s.verts[v].parent = -1;
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Blowup center.
// ---------------------------------------------------------------------------

// The center of the stage-k blowup seen in the chart of a simple tree.  For
// br == k it is the coordinate subspace where the branch-root variables all
// vanish; for br == 0 or br > k it is empty.  For 0 < br < k the closure is
// not described by the calculus and is reported as such, never guessed.
struct PiLocusResult {
    enum class Status { center, empty, uncovered };
    Status status = Status::empty;
    std::vector<Var> vars;                 // z variables cut out, chart order
    std::map<Var, std::string> names;
};

inline PiLocusResult pi_locus(const WeightedTree& t, int k) {
    if (k < 2) throw DomainError("stage index k must be >= 2");
    TreeClassification c = classify(t);
    if (!c.simple) throw DomainError("pi_locus requires a simple tree");
    PiLocusResult out;
    if (c.br == k) {
        out.status = PiLocusResult::Status::center;
        for (int a : detail::branch_children_ordered(t, c)) {
            out.vars.push_back(z_var(a));
            out.names[z_var(a)] = "z_" + t.at(a).label;
        }
    } else if (c.br == 0 || c.br > k) {
        out.status = PiLocusResult::Status::empty;
    } else {
        out.status = PiLocusResult::Status::uncovered;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Charts.
// ---------------------------------------------------------------------------

struct BlowupChart {
    int chart_index = 0;                   // i, 1-based in branch order
    bool terminal_direction = false;       // was the i-th branch a single vertex
    std::vector<int> center;               // branch-root ids a_1..a_k
    std::map<Var, Poly> substitution;      // z_aj -> z_ai * u_j  (j != i)
    PolySystem system;                     // the chart system ("raw")
    WeightedTree matched;                  // advance(source, a_i)
    // matched-system vars -> chart vars; identity entries included
    std::map<Var, Var> variable_map;
    // expansion of the renamed terminal variable back into chart
    // coordinates: w_ai_e -> w_ai_e + sum_{j != i} u_j * Phi_j_e; empty for
    // non-terminal directions
    std::map<Var, Poly> normalization;
};

namespace detail {

inline PolySystem substituted_system(const PolySystem& in, const std::map<Var, Poly>& sub,
                                     int n) {
    PolySystem out;
    out.n = n;
    for (const Poly& p : in.components) out.components.push_back(substitute(p, sub));
    return out;
}

} // namespace detail

// All k charts of the stage-k blowup at a simple tree with br == k >= 2.
inline std::vector<BlowupChart> blowup_charts(const WeightedTree& t, int n) {
    if (n < 1) throw DomainError("component count must be >= 1");
    TreeClassification cls = classify(t);
    if (!cls.simple) throw DomainError("blowup requires a simple tree");
    if (cls.br < 2) throw DomainError("blowup requires a branch vertex (br >= 2)");
    if (!cls.terminally_weighted)
        throw DomainError("blowup requires a terminally weighted tree");

    std::vector<int> branches = detail::branch_children_ordered(t, cls);
    int k = static_cast<int>(branches.size());
    PolySystem phi = phi_inductive(t, n);

    // trunk monomial z_v1 * ... * z_vr (empty when the root is the branch vertex)
    Poly trunkM = Poly::constant(1);
    for (std::size_t s = 1; s < cls.trunk.size(); ++s)
        trunkM *= Poly::var(z_var(cls.trunk[s]));

    // per-branch systems, ids shared with t
    std::vector<PolySystem> branch_phi;
    auto ch = t.children_map();
    for (int a : branches) branch_phi.push_back(phi_inductive(detail::subtree(t, a), n));

    std::vector<BlowupChart> out;
    for (int i = 1; i <= k; ++i) {
        BlowupChart chart;
        chart.chart_index = i;
        chart.center = branches;
        int ai = branches[i - 1];
        chart.terminal_direction = ch.at(ai).empty();

        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            chart.substitution[z_var(branches[j - 1])] =
                Poly::var(z_var(ai)) * Poly::var(u_var(j));
        }

        // route 1: substitute into the source system
        PolySystem raw = detail::substituted_system(phi, chart.substitution, n);

        // route 2: factored form from the branch systems
        for (int e = 1; e <= n; ++e) {
            Poly inner = branch_phi[i - 1].components[e - 1];
            for (int j = 1; j <= k; ++j) {
                if (j == i) continue;
                inner += Poly::var(u_var(j)) * branch_phi[j - 1].components[e - 1];
            }
            Poly expect = trunkM * Poly::var(z_var(ai)) * inner;
            if (!(expect == raw.components[e - 1]))
                throw VerifyError("chart system disagrees with its factored form");
        }

        // chart inventory: source minus the substituted z's, plus the u's
        raw.inventory = phi.inventory;
        raw.names = phi.names;
        for (int j = 1; j <= k; ++j) {
            if (j == i) continue;
            raw.inventory.erase(z_var(branches[j - 1]));
            raw.inventory.insert(u_var(j));
            raw.names[u_var(j)] = "u_" + std::to_string(j);
        }
        raw.check();

        chart.matched = advance(t, ai);

        // variable_map: identity on the matched system's variables, except
        // that surviving branch roots z_aj read as chart directions u_j
        PolySystem matched_phi = phi_inductive(chart.matched, n);
        for (Var v : matched_phi.inventory) {
            chart.variable_map[v] = v;
            if (v.kind == VarKind::Z) {
                for (int j = 1; j <= k; ++j)
                    if (j != i && v.vertex == branches[j - 1])
                        chart.variable_map[v] = u_var(j);
            }
        }

        if (chart.terminal_direction) {
            // advancing a terminal branch folds the other branches into it;
            // the matched variable w_ai_e expands to w_ai_e + sum u_j Phi_j_e
            for (int e = 1; e <= n; ++e) {
                Poly expansion = Poly::var(w_var(ai, e));
                for (int j = 1; j <= k; ++j) {
                    if (j == i) continue;
                    expansion += Poly::var(u_var(j)) * branch_phi[j - 1].components[e - 1];
                }
                chart.normalization[w_var(ai, e)] = expansion;
            }
        }

        // invariant 3: unit-triangular normalization, injective renaming
        for (const auto& [v, expansion] : chart.normalization) {
            Poly rest = expansion - Poly::var(v);
            for (Var used : rest.vars())
                if (chart.normalization.count(used))
                    throw VerifyError("normalization is not triangular");
        }
        {
            std::set<Var> images;
            for (const auto& [from, to] : chart.variable_map)
                if (!images.insert(to).second)
                    throw VerifyError("variable_map is not injective");
        }

        // invariant 2: matched system, renamed and expanded, equals the chart
        for (int e = 1; e <= n; ++e) {
            Poly mapped = rename(matched_phi.components[e - 1], chart.variable_map);
            mapped = substitute(mapped, chart.normalization);
            if (!(mapped == raw.components[e - 1]))
                throw VerifyError("matched tree system does not reproduce the chart");
        }

        chart.system = std::move(raw);
        out.push_back(std::move(chart));
    }
    return out;
}

// The tree a point degenerates to when the z coordinates in `support` become
// nonzero: collapse the support, deepest first.
inline WeightedTree singularity_type(const WeightedTree& t, const std::set<int>& support) {
    return collapse_at_support(t, support);
}

// ---------------------------------------------------------------------------
// Pipeline.
// ---------------------------------------------------------------------------

struct PipelineStage {
    int k = 0;
    std::vector<std::string> survivors;            // canonical forms carried over
    // canonical form of each blown source with its verified charts
    std::vector<std::pair<std::string, std::vector<BlowupChart>>> blown;
    std::vector<std::string> result;               // the stage's output set
};

struct TerminalCertificate {
    std::string tree;          // canonical form, a path tree
    Monomial z_monomial;       // trunk monomial of its system
    std::vector<Var> w_vars;
    std::map<Var, std::string> names;
};

struct PipelineReport {
    long long d = 0;
    int n = 0;
    bool literal_staging = false;
    std::vector<PipelineStage> stages;
    std::vector<TerminalCertificate> terminal;
};

// Stage-by-stage blowup over the full index set of weight d: at stage k every
// member with br == k is replaced by the matched trees of its verified
// charts; members with br > k survive; path trees are retained (or dropped
// under literal staging).  The final set must consist of path trees, each of
// which gets a normal-crossing certificate.
inline PipelineReport run_pipeline(long long d, int n, bool literal_staging = false) {
    if (n < 1) throw DomainError("component count must be >= 1");
    PipelineReport rep;
    rep.d = d;
    rep.n = n;
    rep.literal_staging = literal_staging;

    TreeSet cur = lambda(d);
    for (int k = 2; k <= d; ++k) {
        PipelineStage stage;
        stage.k = k;
        TreeSet next;
        next.d = d;
        next.k = k;
        for (const auto& [key, t] : cur.members) {
            int br = classify(t).br;
            if (br == 0) {
                if (!literal_staging) {
                    next.insert(t);
                    stage.survivors.push_back(key);
                }
            } else if (br == k) {
                std::vector<BlowupChart> charts = blowup_charts(t, n);
                // store matched trees with canonical labels so later stages
                // and the report all speak about the same display names
                for (const BlowupChart& c : charts)
                    next.insert(detail::normalized(c.matched));
                stage.blown.emplace_back(key, std::move(charts));
            } else if (br > k) {
                next.insert(t);
                stage.survivors.push_back(key);
            } else {
                throw VerifyError("pipeline met a br=" + std::to_string(br) +
                                  " tree at stage " + std::to_string(k));
            }
        }
        stage.result = next.keys();
        rep.stages.push_back(std::move(stage));
        cur = std::move(next);
    }

    for (const auto& [key, t] : cur.members) {
        TreeClassification c = classify(t);
        if (!c.path_tree)
            throw VerifyError("pipeline finished with a non-path tree: " + key);
        PolySystem sys = phi_inductive(t, n);
        auto cert = is_monomial_times_unit_linear(sys);
        if (!cert)
            throw VerifyError("final path tree lacks a normal-crossing certificate: " + key);
        TerminalCertificate out;
        out.tree = key;
        out.z_monomial = cert->z_monomial;
        out.w_vars = cert->w_vars;
        out.names = sys.names;
        rep.terminal.push_back(std::move(out));
    }
    return rep;
}

} // namespace wtree
