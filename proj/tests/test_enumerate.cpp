// Enumeration sets, staged refinements, shape classes, and the brute-force
// oracle that keeps the direct construction honest.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "wtree/enumerate.hpp"
#include "wtree/ops.hpp"
#include "wtree/tree.hpp"

using namespace wtree;

TEST_CASE("weight-1 and weight-2 sets, frozen member by member") {
    CHECK(lambda(1).keys() == std::vector<std::string>{"o(1)", "o[a(1)]"});
    CHECK(lambda(2).keys() == std::vector<std::string>{
                                  "o(2)",
                                  "o[a(1),b(1)]",
                                  "o[a(2)]",
                                  "o[a[b(1),c(1)]]",
                              });
}

TEST_CASE("weight-3 set, frozen member by member") {
    // derived by listing the shapes a stable terminally weighted tree of
    // weight 3 can take: ghosts need >= 3 edges, positives are terminal
    CHECK(lambda(3).keys() == std::vector<std::string>{
                                  "o(3)",
                                  "o[a(1),b(1),c(1)]",
                                  "o[a(1),b[c(1),d(1)]]",
                                  "o[a(2),b(1)]",
                                  "o[a(3)]",
                                  "o[a[b(1),c(1),d(1)]]",
                                  "o[a[b(1),c[d(1),e(1)]]]",
                                  "o[a[b(2),c(1)]]",
                              });
}

TEST_CASE("set sizes and membership invariants") {
    CHECK(lambda(4).size() == 22);
    CHECK(lambda(5).size() == 60);
    for (long long d = 1; d <= 5; ++d) {
        for (const auto& [key, t] : lambda(d).members) {
            TreeClassification c = classify(t);
            CHECK(t.total_weight() == d);
            CHECK(c.terminally_weighted);
            CHECK(c.stable);
            CHECK(c.simple); // stability makes every ghost 3-edged
            CHECK(static_cast<long long>(t.size()) <= 2 * d);
            CHECK(key == canonical_form(t));
        }
    }
}

TEST_CASE("direct enumeration agrees with the brute-force oracle") {
    for (long long d = 1; d <= 4; ++d)
        CHECK(lambda(d).keys() == oracle_lambda(d, static_cast<int>(2 * d + 1)).keys());
    CHECK_THROWS_AS(oracle_lambda(2, 4), DomainError); // cap below soundness bound
    CHECK_THROWS_AS(lambda(0), DomainError);
}

TEST_CASE("staged sets, frozen") {
    CHECK(lambda_staged(3, 1).keys() == lambda(3).keys());

    CHECK(lambda_staged(2, 2).keys() == std::vector<std::string>{
                                            "o(2)",
                                            "o[a(2)]",
                                            "o[a[b(2)]]",
                                        });
    // stage 2 of weight 3: the two br=2 members give way to their monoidal
    // transforms; br=3 members and path trees ride through
    CHECK(lambda_staged(3, 2).keys() == std::vector<std::string>{
                                            "o(3)",
                                            "o[a(1),b(1),c(1)]",
                                            "o[a(3)]",
                                            "o[a[b(1),c(1),d(1)]]",
                                            "o[a[b(3)]]",
                                            "o[a[b[c(1),d(1),e(1)]]]",
                                        });
    CHECK(lambda_staged(3, 3).keys() == std::vector<std::string>{
                                            "o(3)",
                                            "o[a(3)]",
                                            "o[a[b(3)]]",
                                            "o[a[b[c(3)]]]",
                                        });
    CHECK_THROWS_AS(lambda_staged(3, 0), DomainError);
    CHECK_THROWS_AS(lambda_staged(3, 4), DomainError);
}

TEST_CASE("literal staging drops path trees but chains re-enter via transforms") {
    CHECK(lambda_staged(2, 2, true).keys() == std::vector<std::string>{
                                                  "o[a(2)]",
                                                  "o[a[b(2)]]",
                                              });
    CHECK(lambda_staged(3, 3, true).keys() == std::vector<std::string>{
                                                  "o[a(3)]",
                                                  "o[a[b(3)]]",
                                                  "o[a[b[c(3)]]]",
                                              });
}

TEST_CASE("final stage consists of exactly the path trees") {
    for (long long d = 1; d <= 5; ++d) {
        std::vector<std::string> expected;
        WeightedTree chain;
        chain.root = 0;
        chain.verts[0] = {-1, d, "o"};
        expected.push_back(canonical_form(chain));
        for (int len = 1; len <= d; ++len) {
            chain.verts[static_cast<int>(chain.size()) - 1].weight = 0;
            chain.verts[static_cast<int>(chain.size())] = {
                static_cast<int>(chain.size()) - 1, d, "x" + std::to_string(len)};
            expected.push_back(canonical_form(chain));
        }
        std::sort(expected.begin(), expected.end());
        CHECK(lambda_staged(d, static_cast<int>(d)).keys() == expected);
        for (const auto& [key, t] : lambda_staged(d, static_cast<int>(d)).members)
            CHECK(classify(t).path_tree);
    }
}

TEST_CASE("staged members respect the br window") {
    for (long long d = 1; d <= 5; ++d)
        for (int k = 1; k <= d; ++k)
            for (bool literal : {false, true})
                for (const auto& [key, t] : lambda_staged(d, k, literal).members) {
                    int br = classify(t).br;
                    CHECK((br == 0 || (k + 1 <= br && br <= d) || k == 1));
                    if (k == 1) CHECK((br == 0 || br >= 2));
                }
}

TEST_CASE("shape classes separate weights, not labels") {
    auto classes = sim_classes(lambda(4));
    REQUIRE(classes.count("o[a,b]") == 1);
    CHECK(classes["o[a,b]"] ==
          std::vector<std::string>{"o[a(2),b(2)]", "o[a(3),b(1)]"});
    // every weight-3 member has its own shape
    for (const auto& [shape, members] : sim_classes(lambda(3)))
        CHECK(members.size() == 1);
    // class members really do share the unweighted form
    for (const auto& [shape, members] : sim_classes(lambda(4)))
        for (const std::string& key : members)
            CHECK(unweighted_canonical_form(parse(key)) == shape);
}

TEST_CASE("exhaustive terminally weighted enumeration") {
    auto ts = all_terminally_weighted(1, 3);
    CHECK(ts.size() == 3); // o(1), o[a(1)], o[a[b(1)]]
    for (long long d = 1; d <= 3; ++d)
        for (const WeightedTree& t : all_terminally_weighted(d, static_cast<int>(2 * d + 1))) {
            TreeClassification c = classify(t);
            CHECK(t.total_weight() == d);
            CHECK(c.terminally_weighted);
            CHECK(c.semistable);
        }
}
