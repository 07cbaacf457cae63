#pragma once

// Seeded random weighted trees and isomorphism-preserving shuffles, used by
// the roundtrip suite and the property tests.  Everything draws from an
// explicit mt19937_64, so a fixed seed gives identical trees everywhere.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "wtree/tree.hpp"

namespace wtree {

// A random weighted rooted tree: vertex i attaches to a uniform earlier
// vertex, weights uniform in [0, max_weight].  Not necessarily terminally
// weighted; parse/print must cope with anything.
inline WeightedTree random_tree(std::mt19937_64& rng, int max_vertices = 12,
                                long long max_weight = 4) {
    std::uniform_int_distribution<int> nd(1, max_vertices);
    int n = nd(rng);
    WeightedTree t;
    t.root = 0;
    for (int i = 0; i < n; ++i) {
        WeightedTree::Vertex vx;
        if (i == 0) {
            vx.parent = -1;
        } else {
            std::uniform_int_distribution<int> pd(0, i - 1);
            vx.parent = pd(rng);
        }
        std::uniform_int_distribution<long long> wd(0, max_weight);
        vx.weight = wd(rng);
        vx.label = i == 0 ? "o" : "v" + std::to_string(i);
        t.verts[i] = vx;
    }
    return t;
}

// Same abstract tree, different representation: vertex ids permuted and
// labels replaced by fresh ones.  Canonical forms must be unchanged.
inline WeightedTree iso_shuffle(const WeightedTree& t, std::mt19937_64& rng) {
    std::vector<int> ids;
    for (const auto& [id, vx] : t.verts) ids.push_back(id);
    std::vector<int> target = ids;
    std::shuffle(target.begin(), target.end(), rng);
    std::map<int, int> remap;
    for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = target[i];

    std::vector<int> label_order = target;
    std::shuffle(label_order.begin(), label_order.end(), rng);

    WeightedTree out;
    out.root = remap[t.root];
    std::map<int, std::string> fresh;
    for (std::size_t i = 0; i < label_order.size(); ++i)
        fresh[label_order[i]] = "n" + std::to_string(i);
    for (const auto& [id, vx] : t.verts) {
        WeightedTree::Vertex nv;
        nv.parent = id == t.root ? -1 : remap[vx.parent];
        nv.weight = vx.weight;
        nv.label = fresh[remap[id]];
        out.verts[remap[id]] = nv;
    }
    return out;
}

} // namespace wtree
