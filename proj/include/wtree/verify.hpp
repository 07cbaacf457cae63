#pragma once

// Property sweeps exposed through `verify --suite ...`.  Each suite runs a
// finite, deterministic check (the roundtrip suite draws from an explicit
// seed) and reports the number of checks plus every counterexample found.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wtree/blowup.hpp"
#include "wtree/enumerate.hpp"
#include "wtree/errors.hpp"
#include "wtree/ops.hpp"
#include "wtree/phi.hpp"
#include "wtree/random_trees.hpp"
#include "wtree/tree.hpp"

namespace wtree {

struct SuiteResult {
    std::string suite;
    long long checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// parse/print round trips: canonical text reparses to the same text, random
// trees survive print -> parse up to isomorphism (and representation
// shuffles), malformed inputs are rejected with a position.
inline SuiteResult suite_roundtrip(long long d, std::uint64_t seed) {
    SuiteResult r{"roundtrip"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 1000; ++i) {
        WeightedTree t = random_tree(rng);
        std::string canon = canonical_form(t);
        ++r.checks;
        if (canonical_form(parse(print(t))) != canon)
            r.failures.push_back("print->parse changed " + canon);
        ++r.checks;
        if (print(parse(canon)) != canon)
            r.failures.push_back("canonical text does not reparse to itself: " + canon);
        ++r.checks;
        if (canonical_form(iso_shuffle(t, rng)) != canon)
            r.failures.push_back("canonical form is representation dependent: " + canon);
    }
    for (const auto& t : lambda(std::max<long long>(1, std::min<long long>(d, 4))).members) {
        ++r.checks;
        if (print(parse(t.first)) != t.first)
            r.failures.push_back("enumerated member does not round trip: " + t.first);
    }
    const char* malformed[] = {
        "",      "o[",        "o]",       "o[a(2)", "o[a(-2)]", "o()",
        "o[]",   "(2)",       "o[a,]",    "o[a]b",  "o[a(2x)]", "123",
        "o[[a]]", "o[a(2)](3)", "o[a,a]", "o(999999999999999999999)",
    };
    for (const char* s : malformed) {
        ++r.checks;
        try {
            parse(s);
            r.failures.push_back(std::string("accepted malformed input: '") + s + "'");
        } catch (const ParseError&) {
            // expected
        }
    }
    return r;
}

// Monoidal transforms strictly increase br (or finish at a path tree), and
// the same holds for collapsing a direct descendant of the branch vertex.
inline SuiteResult suite_mon1(long long d) {
    SuiteResult r{"mon1"};
    for (long long w = 1; w <= d; ++w) {
        for (const WeightedTree& t : all_terminally_weighted(w, static_cast<int>(2 * w + 1))) {
            TreeClassification c = classify(t);
            if (!c.simple || c.path_tree) continue;
            for (const WeightedTree& m : mon(t)) {
                ++r.checks;
                int br2 = classify(m).br;
                if (!(br2 == 0 || br2 >= c.br + 1))
                    r.failures.push_back("mon: " + canonical_form(t) + " -> " +
                                         canonical_form(m) + " br " + std::to_string(c.br) +
                                         " -> " + std::to_string(br2));
            }
            for (int v : detail::branch_children_ordered(t, c)) {
                ++r.checks;
                int br2 = classify(collapse(t, v)).br;
                if (!(br2 == 0 || br2 >= c.br + 1))
                    r.failures.push_back("collapse: " + canonical_form(t) + " at " +
                                         t.at(v).label + " br " + std::to_string(c.br) +
                                         " -> " + std::to_string(br2));
            }
        }
    }
    return r;
}

// Staged sets only contain path trees and members with br in [k+1, d]; the
// last stage is path trees only.
inline SuiteResult suite_mon2(long long d) {
    SuiteResult r{"mon2"};
    for (int literal = 0; literal <= 1; ++literal) {
        for (int k = 1; k <= d; ++k) {
            TreeSet s = lambda_staged(d, k, literal != 0);
            for (const auto& [key, t] : s.members) {
                ++r.checks;
                int br = classify(t).br;
                bool ok = br == 0 || (br >= k + 1 && br <= d);
                if (k == static_cast<int>(d)) ok = br == 0;
                if (!ok)
                    r.failures.push_back("stage " + std::to_string(k) +
                                         (literal ? " (literal)" : "") + ": " + key +
                                         " has br=" + std::to_string(br));
            }
        }
    }
    return r;
}

// The three constructions of the local equations agree.
inline SuiteResult suite_phi_equiv(long long d, int n) {
    SuiteResult r{"phi-equiv"};
    for (long long w = 1; w <= d; ++w) {
        for (const auto& [key, t] : lambda(w).members) {
            for (int e = 1; e <= n; ++e) {
                ++r.checks;
                PolySystem a = phi_direct(t, e);
                PolySystem b = phi_inductive(t, e);
                PolySystem c = phi_bracket(print(t), e);
                if (a.components != b.components || b.components != c.components)
                    r.failures.push_back("constructions disagree on " + key +
                                         " with n=" + std::to_string(e));
            }
        }
    }
    return r;
}

// The blowup center in a chart is exactly the vanishing of the branch-root
// coordinates: collapsing a support set keeps br == k iff the support avoids
// every branch root.  Checked over all supports of all simple branch trees.
inline SuiteResult suite_justk(long long d) {
    SuiteResult r{"justk"};
    for (long long w = 1; w <= d; ++w) {
        for (const WeightedTree& t : all_terminally_weighted(w, static_cast<int>(2 * w + 1))) {
            TreeClassification c = classify(t);
            if (!c.simple || c.br < 2) continue;
            std::set<int> branch_roots;
            for (int v : detail::branch_children_ordered(t, c)) branch_roots.insert(v);
            std::vector<int> pool;
            for (const auto& [id, vx] : t.verts)
                if (id != t.root) pool.push_back(id);
            for (std::uint64_t mask = 0; mask < (1ULL << pool.size()); ++mask) {
                std::set<int> support;
                bool hits_center = false;
                for (std::size_t b = 0; b < pool.size(); ++b)
                    if (mask & (1ULL << b)) {
                        support.insert(pool[b]);
                        if (branch_roots.count(pool[b])) hits_center = true;
                    }
                ++r.checks;
                int br2 = classify(collapse_at_support(t, support)).br;
                if ((br2 == c.br) != !hits_center)
                    r.failures.push_back("support mismatch on " + canonical_form(t));
            }
        }
    }
    return r;
}

// Every chart produced by the pipeline passes its construction-time checks
// (route equality, matched-tree reproduction, triangular normalization).
inline SuiteResult suite_zgk(long long d, int n) {
    SuiteResult r{"zgk"};
    for (long long w = 1; w <= d; ++w) {
        for (int e = 1; e <= n; ++e) {
            try {
                PipelineReport rep = run_pipeline(w, e);
                for (const PipelineStage& s : rep.stages)
                    for (const auto& [src, charts] : s.blown) r.checks += charts.size();
            } catch (const VerifyError& err) {
                r.failures.push_back("pipeline(" + std::to_string(w) + "," +
                                     std::to_string(e) + "): " + err.what());
            }
        }
    }
    return r;
}

// Terminality: the pipeline ends at path trees whose systems are one
// squarefree trunk monomial times one fresh W variable per component (degree
// of the monomial = trunk length), and no branch tree's system has that shape.
inline SuiteResult suite_nc(long long d, int n) {
    SuiteResult r{"nc"};
    try {
        PipelineReport rep = run_pipeline(d, n);
        std::set<std::string> final_keys;
        for (const TerminalCertificate& cert : rep.terminal) {
            final_keys.insert(cert.tree);
            WeightedTree t = parse(cert.tree);
            TreeClassification c = classify(t);
            ++r.checks;
            if (!c.path_tree) {
                r.failures.push_back("certified tree is not a path tree: " + cert.tree);
                continue;
            }
            std::set<Var> distinct;
            for (const auto& [v, e] : cert.z_monomial) distinct.insert(v);
            bool squarefree = distinct.size() == cert.z_monomial.size() &&
                              monomial_degree(cert.z_monomial) ==
                                  static_cast<int>(cert.z_monomial.size());
            if (!squarefree)
                r.failures.push_back("certificate monomial is not squarefree: " + cert.tree);
            if (monomial_degree(cert.z_monomial) != static_cast<int>(c.trunk.size()) - 1)
                r.failures.push_back("monomial degree != trunk length: " + cert.tree);
            if (static_cast<int>(cert.w_vars.size()) != n)
                r.failures.push_back("certificate misses components: " + cert.tree);
        }
        // every branch tree met along the way must fail the shape test
        for (const PipelineStage& s : rep.stages)
            for (const auto& [src, charts] : s.blown) {
                ++r.checks;
                if (is_monomial_times_unit_linear(phi_inductive(parse(src), n)))
                    r.failures.push_back("branch tree unexpectedly certified: " + src);
            }
        // and the final set is exactly the last staged index set
        TreeSet staged = lambda_staged(d, static_cast<int>(d));
        ++r.checks;
        if (staged.keys() != std::vector<std::string>(final_keys.begin(), final_keys.end()))
            r.failures.push_back("pipeline result differs from the staged index set");
    } catch (const VerifyError& err) {
        r.failures.push_back(err.what());
    }
    return r;
}

// Direct enumeration against the exhaustive generate-and-filter oracle.
inline SuiteResult suite_oracle(long long d) {
    SuiteResult r{"oracle"};
    for (long long w = 1; w <= d; ++w) {
        ++r.checks;
        TreeSet fast = lambda(w);
        TreeSet slow = oracle_lambda(w, static_cast<int>(2 * w + 1));
        if (fast.keys() != slow.keys())
            r.failures.push_back("lambda(" + std::to_string(w) +
                                 ") disagrees with the oracle (" +
                                 std::to_string(fast.size()) + " vs " +
                                 std::to_string(slow.size()) + " members)");
    }
    return r;
}

inline SuiteResult run_suite(const std::string& name, long long d, int n,
                             std::uint64_t seed) {
    if (name == "roundtrip") return suite_roundtrip(d, seed);
    if (name == "mon1") return suite_mon1(d);
    if (name == "mon2") return suite_mon2(d);
    if (name == "phi-equiv") return suite_phi_equiv(d, n);
    if (name == "justk") return suite_justk(d);
    if (name == "zgk") return suite_zgk(d, n);
    if (name == "nc") return suite_nc(d, n);
    if (name == "oracle") return suite_oracle(d);
    throw DomainError("unknown suite '" + name +
                      "' (expected roundtrip, mon1, mon2, phi-equiv, justk, zgk, nc or oracle)");
}

} // namespace wtree
