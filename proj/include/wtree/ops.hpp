#pragma once

// The four elementary moves on weighted rooted trees (prune, collapse,
// specialize via advance, and the terminalize cascade they share), plus the
// derived operations: monoidal transforms, collapse at a support set, and
// the reduction of a genus-one dual graph to a weighted rooted tree.
//
// All operations preserve total weight and vertex ids of surviving vertices.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wtree/errors.hpp"
#include "wtree/tree.hpp"

namespace wtree {

namespace detail {

inline void collect_descendants(const std::map<int, std::vector<int>>& ch,
                                int v, std::vector<int>& out) {
    for (int c : ch.at(v)) {
        out.push_back(c);
        collect_descendants(ch, c, out);
    }
}

} // namespace detail

// Remove all strict descendants of v; v absorbs their weight.
inline WeightedTree prune(const WeightedTree& t, int v) {
    t.at(v);
    auto ch = t.children_map();
    std::vector<int> doomed;
    detail::collect_descendants(ch, v, doomed);
    WeightedTree r = t;
    for (int d : doomed) {
        r.verts[v].weight += r.at(d).weight;
        r.verts.erase(d);
    }
    return r;
}

// Repeatedly prune at positively weighted non-terminal vertices until every
// positive vertex is terminal.  The result is independent of the order in
// which offenders are picked (each prune folds an entire subtree's weight
// into one vertex), and the cascade always terminates because the vertex
// count drops strictly.
inline WeightedTree terminalize(const WeightedTree& t) {
    WeightedTree r = t;
    for (;;) {
        auto ch = r.children_map();
        int offender = -1;
        for (const auto& [id, vx] : r.verts) {
            if (vx.weight > 0 && !ch.at(id).empty()) { offender = id; break; }
        }
        if (offender < 0) return r;
        r = prune(r, offender);
    }
}

// Merge v into its parent: the parent absorbs v's weight, v's children
// re-attach to the parent, and the result is terminalized.
inline WeightedTree collapse(const WeightedTree& t, int v) {
    if (v == t.root) throw DomainError("cannot collapse the root");
    int p = t.at(v).parent;
    WeightedTree r = t;
    for (auto& [id, vx] : r.verts)
        if (id != v && vx.parent == v) vx.parent = p;
    r.verts[p].weight += r.at(v).weight;
    r.verts.erase(v);
    return terminalize(r);
}

// Advance v one step toward the root: the siblings of v re-attach as
// children of v, and the result is terminalized.  (Inverse direction of
// collapse: collapsing v in the result, when v was a ghost, restores t.)
inline WeightedTree advance(const WeightedTree& t, int v) {
    if (v == t.root) throw DomainError("cannot advance the root");
    int p = t.at(v).parent;
    WeightedTree r = t;
    for (auto& [id, vx] : r.verts)
        if (id != v && vx.parent == p) vx.parent = v;
    return terminalize(r);
}

// Is g obtainable from s by collapsing exactly one vertex?  Compared up to
// isomorphism, as the enumeration sets are.
inline bool is_collapse_of(const WeightedTree& g, const WeightedTree& s) {
    std::string want = canonical_form(g);
    for (const auto& [id, vx] : s.verts) {
        if (id == s.root) continue;
        if (canonical_form(collapse(s, id)) == want) return true;
    }
    return false;
}

// Monoidal transforms: advance each immediate descendant of the branch
// vertex, collecting results up to isomorphism.  Requires a simple tree;
// empty for path trees.
inline std::vector<WeightedTree> mon(const WeightedTree& t) {
    TreeClassification c = classify(t);
    if (!c.simple)
        throw DomainError("mon requires a simple tree (every branch stable)");
    std::vector<WeightedTree> out;
    if (c.path_tree) return out;
    auto ch = t.children_map();
    std::set<std::string> seen;
    for (int v : ch.at(*c.branch_vertex)) {
        WeightedTree a = advance(t, v);
        if (seen.insert(canonical_form(a)).second) out.push_back(a);
    }
    std::sort(out.begin(), out.end(), [](const WeightedTree& x, const WeightedTree& y) {
        return canonical_form(x) < canonical_form(y);
    });
    return out;
}

// Collapse every vertex in `support` (a set of non-root vertex ids),
// deepest first.  A support member can disappear before its turn: collapsing
// a sibling may trigger a terminalize cascade that swallows it.  Such
// members are skipped; the result is order-independent (asserted by tests
// over all subsets of small trees).
inline WeightedTree collapse_at_support(const WeightedTree& t,
                                        const std::set<int>& support) {
    std::map<int, int> depth;
    for (const auto& [id, vx] : t.verts) {
        int d = 0;
        for (int cur = id; cur != t.root; cur = t.at(cur).parent) ++d;
        depth[id] = d;
    }
    std::vector<int> order;
    for (int v : support) {
        if (!t.contains(v)) throw DomainError("support vertex not in tree");
        if (v == t.root) throw DomainError("support must not contain the root");
        order.push_back(v);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (depth[a] != depth[b]) return depth[a] > depth[b];
        return a < b;
    });
    WeightedTree r = t;
    for (int v : order)
        if (r.contains(v)) r = collapse(r, v);
    return r;
}

// ---------------------------------------------------------------------------
// Dual graphs of genus-one curves and their reduction to rooted trees.
// ---------------------------------------------------------------------------

// A connected multigraph with per-vertex weights and geometric genus.
// Admissible when sum(genus) + first Betti number == 1: either one genus-1
// vertex and no cycle, or all genus 0 and exactly one cycle (a self-loop or
// a pair of parallel edges both count).
struct DualGraph {
    struct Node {
        std::string id;
        long long weight = 0;
        int genus = 0;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
};

namespace detail {

struct GraphView {
    std::map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> adj; // adjacency with multiplicity
    std::size_t edge_count = 0;
};

inline GraphView graph_view(const DualGraph& g) {
    GraphView v;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (!v.index.emplace(g.nodes[i].id, i).second)
            throw DomainError("duplicate dual graph vertex id '" + g.nodes[i].id + "'");
    }
    v.adj.resize(g.nodes.size());
    for (const auto& [a, b] : g.edges) {
        auto ia = v.index.find(a), ib = v.index.find(b);
        if (ia == v.index.end() || ib == v.index.end())
            throw DomainError("dual graph edge references unknown vertex");
        // both directions, so adj sizes are degrees (a self-loop counts 2)
        v.adj[ia->second].push_back(ib->second);
        v.adj[ib->second].push_back(ia->second);
        ++v.edge_count;
    }
    return v;
}

// Rooted spanning structure of a (multi)tree once cycles are gone.
inline WeightedTree tree_from_graph(const std::vector<DualGraph::Node>& nodes,
                                    const std::vector<std::vector<std::size_t>>& adj,
                                    std::size_t root) {
    WeightedTree t;
    t.root = static_cast<int>(root);
    std::vector<bool> seen(nodes.size(), false);
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    t.verts[t.root] = {-1, nodes[root].weight, nodes[root].id};
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            t.verts[static_cast<int>(w)] = {static_cast<int>(v), nodes[w].weight, nodes[w].id};
            stack.push_back(w);
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
        throw DomainError("dual graph is not connected");
    return t;
}

} // namespace detail

// Reduce an admissible genus-one dual graph to a terminally weighted rooted
// tree: root at the genus-1 vertex if there is one, otherwise contract the
// unique cycle to a fresh root carrying the cycle's total weight; then
// terminalize.  Total weight is preserved.
inline WeightedTree reduce_dual_graph(const DualGraph& g) {
    if (g.nodes.empty()) throw DomainError("empty dual graph");
    detail::GraphView v = detail::graph_view(g);

    int genus_sum = 0;
    std::size_t genus_vertex = g.nodes.size();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (g.nodes[i].genus < 0 || g.nodes[i].genus > 1)
            throw DomainError("vertex genus must be 0 or 1");
        if (g.nodes[i].weight < 0)
            throw DomainError("negative weight in dual graph");
        if (g.nodes[i].genus == 1) genus_vertex = i;
        genus_sum += g.nodes[i].genus;
    }

    // connectivity check up front so Betti number is meaningful
    {
        std::vector<bool> seen(g.nodes.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            std::size_t x = stack.back();
            stack.pop_back();
            for (std::size_t w : v.adj[x])
                if (!seen[w]) { seen[w] = true; stack.push_back(w); }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end())
            throw DomainError("dual graph is not connected");
    }

    long long betti = static_cast<long long>(v.edge_count) -
                      static_cast<long long>(g.nodes.size()) + 1;
    if (genus_sum + betti != 1)
        throw DomainError("dual graph is not of arithmetic genus one (genus + cycles != 1)");

    if (genus_sum == 1)
        return terminalize(detail::tree_from_graph(g.nodes, v.adj, genus_vertex));

    // Exactly one cycle: peel degree-<=1 vertices until only the loop is
    // left, then contract the loop to a fresh root.
    std::vector<std::size_t> degree(g.nodes.size(), 0);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) degree[i] = v.adj[i].size();
    std::vector<bool> removed(g.nodes.size(), false);
    for (;;) {
        bool any = false;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (!removed[i] && degree[i] <= 1) {
                removed[i] = true;
                any = true;
                for (std::size_t w : v.adj[i])
                    if (!removed[w] && degree[w] > 0) --degree[w];
            }
        }
        if (!any) break;
    }

    std::set<std::size_t> loop;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (!removed[i]) loop.insert(i);
    if (loop.empty()) throw DomainError("failed to locate the cycle in the dual graph");

    // contracted graph: loop -> single node, other vertices unchanged
    std::vector<DualGraph::Node> nodes;
    std::map<std::size_t, std::size_t> remap;
    long long loop_weight = 0;
    for (std::size_t i : loop) loop_weight += g.nodes[i].weight;
    std::set<std::string> used;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (!loop.count(i)) used.insert(g.nodes[i].id);
    std::string root_id = "o";
    while (used.count(root_id)) root_id += "_";
    nodes.push_back({root_id, loop_weight, 0});
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (loop.count(i)) { remap[i] = 0; continue; }
        remap[i] = nodes.size();
        nodes.push_back(g.nodes[i]);
    }
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (std::size_t a = 0; a < g.nodes.size(); ++a) {
        for (std::size_t b : v.adj[a]) {
            if (a > b && !(loop.count(a) && loop.count(b))) continue; // one direction, skip loop-internal
            if (loop.count(a) && loop.count(b)) continue;
            std::size_t ra = remap[a], rb = remap[b];
            adj[ra].push_back(rb);
            adj[rb].push_back(ra);
        }
    }
    return terminalize(detail::tree_from_graph(nodes, adj, 0));
}

} // namespace wtree
