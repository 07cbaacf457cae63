// Parsing, printing, classification and canonical forms.

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>

#include "support/iso_oracle.hpp"
#include "wtree/random_trees.hpp"
#include "wtree/tree.hpp"

using namespace wtree;

TEST_CASE("parse accepts the grammar and normalizes display order") {
    CHECK(print(parse("o[b[d(1),c(1)],a(2)]")) == "o[a(2),b[c(1),d(1)]]");
    CHECK(print(parse(" o [ a ( 2 ) , b [ c(1) , d(1) ] ] ")) == "o[a(2),b[c(1),d(1)]]");
    CHECK(print(parse("o")) == "o");
    CHECK(print(parse("o(7)")) == "o(7)");
    CHECK(print(parse("root_1[x2(3)]")) == "root_1[x2(3)]");
    // omitted weights are zero and hidden by default, shown on request
    CHECK(print(parse("o[a]"), true) == "o(0)[a(0)]");
}

TEST_CASE("parse rejects malformed input with a position") {
    auto pos_of = [](const std::string& s) -> std::size_t {
        try {
            parse(s);
        } catch (const ParseError& e) {
            return e.position;
        }
        return 0; // reached only if no throw
    };
    CHECK(pos_of("") == 1);
    CHECK(pos_of("o[") == 3);
    CHECK(pos_of("o]") == 2);
    CHECK(pos_of("o[]") == 3);
    CHECK(pos_of("o[a(-2)]") == 5);
    CHECK(pos_of("o(x)") == 3);
    CHECK(pos_of("o[a,]") == 5);
    CHECK(pos_of("o[a]trail") == 5);
    CHECK(pos_of("9[a]") == 1);
    CHECK(pos_of("o[a,a]") == 5);          // duplicate label
    CHECK(pos_of("o(99999999999999999999)") == 3); // overflow guard
    CHECK_THROWS_AS(parse("o[a(2),b[c(1),]]"), ParseError);
}

TEST_CASE("classify: weights, stability, trunk and branch data") {
    // ghost chain of two: semistable (2 edges each suffice) but not stable
    {
        TreeClassification c = classify(parse("o[v[w(3)]]"));
        CHECK(c.terminally_weighted);
        CHECK(c.semistable);
        CHECK_FALSE(c.stable);
        CHECK(c.path_tree);
        CHECK(c.br == 0);
    }
    {
        TreeClassification c = classify(parse("o[a[b[c(1),d(1),e(1)]]]"));
        CHECK(c.semistable);
        CHECK_FALSE(c.stable); // a has only two edges
        CHECK_FALSE(c.path_tree);
        CHECK(c.br == 3);
    }
    {
        WeightedTree t = parse("o[a(2),b[c(1),d(1)]]");
        TreeClassification c = classify(t);
        CHECK(c.terminally_weighted);
        CHECK(c.stable);
        CHECK(c.semistable);
        CHECK_FALSE(c.path_tree);
        CHECK(c.simple);
        CHECK(c.trunk.size() == 1);          // trunk is just the root
        CHECK(t.at(*c.branch_vertex).label == "o");
        CHECK(c.br == 2);
    }
    {
        // trunk o > v, branch vertex v with three branches
        WeightedTree t = parse("o[v[a(1),b(1),c[d(1),e(1)]]]");
        TreeClassification c = classify(t);
        CHECK(c.trunk.size() == 2);
        CHECK(t.at(*c.branch_vertex).label == "v");
        CHECK(c.br == 3);
        CHECK(c.simple);
    }
    {
        // one-child ghost below the branch vertex: branch not stable
        TreeClassification c = classify(parse("o[a(1),b[c[d(1),e(1)]]]"));
        CHECK_FALSE(c.simple);
        CHECK(c.br == 2);
    }
    {
        TreeClassification c = classify(parse("o(4)"));
        CHECK(c.terminally_weighted); // lone root counts as terminal
        CHECK(c.stable);
        CHECK(c.path_tree);
        CHECK(c.simple);
        CHECK(c.trunk.size() == 1);
        CHECK(c.br == 0);
    }
    {
        // positive non-terminal vertex: not terminally weighted
        TreeClassification c = classify(parse("o[a(2)[b(1)]]"));
        CHECK_FALSE(c.terminally_weighted);
    }
    {
        // ghost leaf: not terminally weighted either
        CHECK_FALSE(classify(parse("o[a]")).terminally_weighted);
    }
}

TEST_CASE("canonical form is a complete isomorphism invariant") {
    // same abstract tree written three ways
    CHECK(canonical_form(parse("o[b[d(1),c(1)],a(2)]")) ==
          canonical_form(parse("o[a(2),b[c(1),d(1)]]")));
    CHECK(canonical_form(parse("x[y(2),z[p(1),q(1)]]")) ==
          canonical_form(parse("o[a(2),b[c(1),d(1)]]")));
    // weights matter
    CHECK(canonical_form(parse("o[a(1),b(2)]")) != canonical_form(parse("o[a(1),b(1)]")));
    // shape matters
    CHECK(canonical_form(parse("o[a(1),b(1)]")) != canonical_form(parse("o[v[a(1),b(1)]]")));
    // unweighted form erases weights only
    CHECK(unweighted_canonical_form(parse("o[a(3)]")) ==
          unweighted_canonical_form(parse("o[a(1)]")));
    CHECK(unweighted_canonical_form(parse("o[a(1)]")) !=
          unweighted_canonical_form(parse("o[a(1),b(1)]")));
}

TEST_CASE("canonical form agrees with the backtracking matcher on random pairs") {
    std::mt19937_64 rng(20250811);
    int equal_seen = 0;
    for (int i = 0; i < 400; ++i) {
        WeightedTree a = random_tree(rng, 8, 2);
        WeightedTree b = (i % 3 == 0) ? iso_shuffle(a, rng) : random_tree(rng, 8, 2);
        bool canon_eq = canonical_form(a) == canonical_form(b);
        bool oracle_eq = testsupport::isomorphic(a, b);
        REQUIRE(canon_eq == oracle_eq);
        if (canon_eq) ++equal_seen;
    }
    CHECK(equal_seen >= 100); // the shuffled third must all land equal
}

TEST_CASE("print/parse round trips") {
    std::mt19937_64 rng(987);
    for (int i = 0; i < 300; ++i) {
        WeightedTree t = random_tree(rng);
        CHECK(canonical_form(parse(print(t))) == canonical_form(t));
        CHECK(canonical_form(parse(print(t, true))) == canonical_form(t));
        std::string canon = canonical_form(t);
        CHECK(print(parse(canon)) == canon);
    }
}

TEST_CASE("canonical labels avoid the root name") {
    // a tree with enough vertices that the label generator passes 'o'
    std::string wide = "o[";
    for (int i = 0; i < 20; ++i) {
        if (i) wide += ",";
        wide += "t" + std::to_string(i) + "(1)";
    }
    wide += "]";
    WeightedTree t = parse(wide);
    WeightedTree again = parse(canonical_form(t)); // parse re-checks label uniqueness
    CHECK(again.size() == t.size());
    std::set<std::string> labels;
    for (const auto& [id, vx] : again.verts) labels.insert(vx.label);
    CHECK(labels.size() == t.size());
}
