#pragma once

// Enumeration of stable terminally weighted trees of a given total weight up
// to isomorphism, the staged index sets produced by monoidal transforms, the
// shape-equivalence partition, and an independent brute-force oracle used to
// cross-check the direct enumeration.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wtree/errors.hpp"
#include "wtree/ops.hpp"
#include "wtree/tree.hpp"

namespace wtree {

// A set of trees up to isomorphism, keyed (and ordered) by canonical form.
struct TreeSet {
    long long d = 0;                       // total weight of every member
    std::optional<int> k;                  // stage index, if staged
    std::map<std::string, WeightedTree> members;

    bool insert(const WeightedTree& t) {
        return members.emplace(canonical_form(t), t).second;
    }
    bool contains_iso(const WeightedTree& t) const {
        return members.count(canonical_form(t)) != 0;
    }
    std::size_t size() const { return members.size(); }
    std::vector<std::string> keys() const {
        std::vector<std::string> out;
        for (const auto& [kf, t] : members) out.push_back(kf);
        return out;
    }
};

namespace detail {

// Assemble root (ghost) + child subtrees into one tree with dense fresh ids.
inline WeightedTree assemble(long long root_weight,
                             const std::vector<WeightedTree>& subtrees) {
    WeightedTree t;
    t.root = 0;
    t.verts[0] = {-1, root_weight, "r0"};
    int next = 1;
    for (const auto& s : subtrees) {
        std::map<int, int> remap;
        for (const auto& [id, vx] : s.verts) remap[id] = next++;
        for (const auto& [id, vx] : s.verts) {
            int p = (id == s.root) ? 0 : remap[vx.parent];
            t.verts[remap[id]] = {p, vx.weight, "r" + std::to_string(remap[id])};
        }
    }
    return t;
}

// Re-derive a tree from its canonical form so that stored members have
// canonical labels and ids.
inline WeightedTree normalized(const WeightedTree& t) {
    return parse(canonical_form(t));
}

// Enumerate multisets of inner subtrees with total weight `target` and at
// least `min_children` elements; canonical: indices non-increasing.
inline void multisets(const std::vector<std::pair<std::string, WeightedTree>>& pool,
                      const std::vector<long long>& pool_w,
                      std::size_t max_index, long long target, std::size_t count,
                      std::size_t min_children,
                      std::vector<const WeightedTree*>& current,
                      const std::function<void(const std::vector<const WeightedTree*>&)>& emit) {
    if (target == 0) {
        if (count >= min_children) emit(current);
        return;
    }
    for (std::size_t i = max_index; i-- > 0;) {
        if (pool_w[i] > target) continue;
        current.push_back(&pool[i].second);
        multisets(pool, pool_w, i + 1, target - pool_w[i], count + 1, min_children,
                  current, emit);
        current.pop_back();
    }
}

// Inner subtrees for the direct enumeration: every stable terminally
// weighted structure a non-root child can carry.  Either a single positive
// vertex, or a ghost root with >= 2 child subtrees (the ghost needs >= 3
// edges counting its attachment).  Memoized per weight; entries carry their
// canonical keys so multiset choices can be made canonically.
inline std::vector<std::pair<std::string, WeightedTree>>
inner_subtrees(long long w,
               std::map<long long, std::vector<std::pair<std::string, WeightedTree>>>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;

    std::vector<std::pair<std::string, WeightedTree>> out;
    // single positive vertex
    WeightedTree leaf;
    leaf.root = 0;
    leaf.verts[0] = {-1, w, "r0"};
    out.emplace_back(canonical_form(leaf), leaf);

    // ghost root with >= 2 child subtrees (all of weight < w)
    std::vector<std::pair<std::string, WeightedTree>> pool;
    std::vector<long long> pool_w;
    for (long long c = 1; c < w; ++c)
        for (const auto& [key, sub] : inner_subtrees(c, memo)) {
            pool.emplace_back(key, sub);
            pool_w.push_back(c);
        }
    std::vector<const WeightedTree*> current;
    multisets(pool, pool_w, pool.size(), w, 0, 2, current,
              [&](const std::vector<const WeightedTree*>& kids) {
                  std::vector<WeightedTree> copies;
                  for (const WeightedTree* k : kids) copies.push_back(*k);
                  WeightedTree t = assemble(0, copies);
                  out.emplace_back(canonical_form(t), t);
              });

    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              out.end());
    memo[w] = out;
    return out;
}

} // namespace detail

// All stable terminally weighted trees of total weight d, up to isomorphism.
// Direct recursive construction: the tree is a single vertex o(d), or a ghost
// root with any multiset of inner subtrees of total weight d (the root is
// exempt from the edge-count condition, so one child is allowed).
inline TreeSet lambda(long long d) {
    if (d < 1) throw DomainError("total weight must be >= 1");
    TreeSet out;
    out.d = d;
    out.k = 1;

    WeightedTree single;
    single.root = 0;
    single.verts[0] = {-1, d, "o"};
    out.insert(detail::normalized(single));

    std::map<long long, std::vector<std::pair<std::string, WeightedTree>>> memo;
    std::vector<std::pair<std::string, WeightedTree>> pool;
    std::vector<long long> pool_w;
    for (long long c = 1; c <= d; ++c)
        for (const auto& [key, sub] : detail::inner_subtrees(c, memo)) {
            pool.emplace_back(key, sub);
            pool_w.push_back(c);
        }
    std::vector<const WeightedTree*> current;
    detail::multisets(pool, pool_w, pool.size(), d, 0, 1, current,
                      [&](const std::vector<const WeightedTree*>& kids) {
                          std::vector<WeightedTree> copies;
                          for (const WeightedTree* k : kids) copies.push_back(*k);
                          out.insert(detail::normalized(detail::assemble(0, copies)));
                      });
    return out;
}

// Staged index sets.  Stage 1 is lambda(d); stage k replaces every member
// with br == k by its monoidal transforms and keeps members with br >= k+1.
// Members with br == 0 (path trees) are retained across stages; pass
// literal_staging = true to use the literal recurrence that drops them.
inline TreeSet lambda_staged(long long d, int k, bool literal_staging = false) {
    if (k < 1 || k > d) throw DomainError("stage index must satisfy 1 <= k <= d");
    TreeSet cur = lambda(d);
    for (int stage = 2; stage <= k; ++stage) {
        TreeSet next;
        next.d = d;
        next.k = stage;
        for (const auto& [key, t] : cur.members) {
            int br = classify(t).br;
            if (br == 0) {
                if (!literal_staging) next.insert(t);
            } else if (br == stage) {
                for (const WeightedTree& m : mon(t)) next.insert(m);
            } else if (br > stage) {
                next.insert(t);
            } else {
                // br in [1, stage-1] cannot occur (checked by the mon2 sweep)
                throw VerifyError("staged set contains br=" + std::to_string(br) +
                                  " member at stage " + std::to_string(stage));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

// Partition a TreeSet by unweighted shape.  Keys are unweighted canonical
// forms; values are the canonical forms of the members in each class.
inline std::map<std::string, std::vector<std::string>> sim_classes(const TreeSet& s) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [key, t] : s.members)
        out[unweighted_canonical_form(t)].push_back(key);
    return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle.
// ---------------------------------------------------------------------------

namespace detail {

// All unlabeled rooted tree shapes with exactly n vertices, up to
// isomorphism (weights all zero).  Recursive: root + canonical multiset of
// child shapes.  Memoized.
inline const std::vector<WeightedTree>&
shapes_exact(int n, std::map<int, std::vector<WeightedTree>>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;

    std::vector<WeightedTree> out;
    if (n == 1) {
        WeightedTree t;
        t.root = 0;
        t.verts[0] = {-1, 0, "r0"};
        out.push_back(t);
    } else {
        // pool of shapes of size 1..n-1 with canonical keys
        std::vector<std::pair<std::string, WeightedTree>> pool;
        std::vector<long long> pool_w;
        for (int s = 1; s <= n - 1; ++s)
            for (const WeightedTree& sh : shapes_exact(s, memo)) {
                pool.emplace_back(canonical_form(sh), sh);
                pool_w.push_back(s);
            }
        std::set<std::string> seen;
        std::vector<const WeightedTree*> current;
        multisets(pool, pool_w, pool.size(), n - 1, 0, 1, current,
                  [&](const std::vector<const WeightedTree*>& kids) {
                      std::vector<WeightedTree> copies;
                      for (const WeightedTree* k : kids) copies.push_back(*k);
                      WeightedTree t = assemble(0, copies);
                      if (seen.insert(canonical_form(t)).second) out.push_back(t);
                  });
    }
    memo[n] = out;
    return memo[n];
}

// Weight assignments: all ways to write d as an ordered sum over the given
// vertex ids (zeros allowed); calls sink for each complete assignment.
inline void weightings(const std::vector<int>& ids, std::size_t i, long long left,
                       std::map<int, long long>& w,
                       const std::function<void(const std::map<int, long long>&)>& sink) {
    if (i + 1 == ids.size()) {
        w[ids[i]] = left;
        sink(w);
        return;
    }
    for (long long give = 0; give <= left; ++give) {
        w[ids[i]] = give;
        weightings(ids, i + 1, left - give, w, sink);
    }
}

} // namespace detail

// All unlabeled rooted tree shapes with <= max_vertices vertices.
inline std::vector<WeightedTree> all_rooted_tree_shapes(int max_vertices) {
    std::map<int, std::vector<WeightedTree>> memo;
    std::vector<WeightedTree> out;
    for (int n = 1; n <= max_vertices; ++n)
        for (const WeightedTree& t : detail::shapes_exact(n, memo)) out.push_back(t);
    return out;
}

// Exhaustive oracle for lambda: every rooted tree shape with <= vertex_cap
// vertices, every weight assignment summing to d, filtered by the classify
// predicates, deduplicated canonically.  Sound because a stable terminally
// weighted tree of weight d has at most 2d vertices (each terminal carries
// >= 1, and ghosts below the branch vertex branch at least in two).
inline TreeSet oracle_lambda(long long d, int vertex_cap) {
    if (d < 1) throw DomainError("total weight must be >= 1");
    if (vertex_cap < 2 * d + 1)
        throw DomainError("vertex_cap too small to be sound (need >= 2d+1)");
    TreeSet out;
    out.d = d;
    out.k = 1;
    for (const WeightedTree& shape : all_rooted_tree_shapes(vertex_cap)) {
        std::vector<int> ids;
        for (const auto& [id, vx] : shape.verts) ids.push_back(id);
        std::map<int, long long> w;
        detail::weightings(ids, 0, d, w, [&](const std::map<int, long long>& weights) {
            WeightedTree t = shape;
            for (const auto& [id, wt] : weights) t.verts[id].weight = wt;
            TreeClassification c = classify(t);
            if (c.terminally_weighted && c.stable) out.insert(detail::normalized(t));
        });
    }
    return out;
}

// All terminally weighted trees of total weight exactly d with <= vertex_cap
// vertices, up to isomorphism.  (Terminally weighted already implies
// semistable: ghosts are non-terminal, hence have >= 2 edges.)  Used by the
// property sweeps that need every simple tree of small weight.
inline std::vector<WeightedTree> all_terminally_weighted(long long d, int vertex_cap) {
    if (d < 1) throw DomainError("total weight must be >= 1");
    std::map<std::string, WeightedTree> seen;
    for (const WeightedTree& shape : all_rooted_tree_shapes(vertex_cap)) {
        auto ch = shape.children_map();
        std::vector<int> leaves;
        for (const auto& [id, vx] : shape.verts)
            if (ch.at(id).empty()) leaves.push_back(id);
        if (static_cast<long long>(leaves.size()) > d) continue;
        // positive weights on leaves only, each >= 1, summing to d
        std::map<int, long long> w;
        std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
            if (i + 1 == leaves.size()) {
                w[leaves[i]] = left;
                WeightedTree t = shape;
                for (const auto& [id, wt] : w) t.verts[id].weight = wt;
                seen.emplace(canonical_form(t), detail::normalized(t));
                return;
            }
            long long reserve = static_cast<long long>(leaves.size() - i - 1);
            for (long long give = 1; give + reserve <= left; ++give) {
                w[leaves[i]] = give;
                rec(i + 1, left - give);
            }
        };
        rec(0, d);
    }
    std::vector<WeightedTree> out;
    for (const auto& [key, t] : seen) out.push_back(t);
    return out;
}

} // namespace wtree
