#include "rlkit/poset.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace rlkit;

TEST_SUITE_BEGIN("poset");

TEST_CASE("construction closes the input relation") {
    const Poset p = make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(p.leq(0, 2));  // transitivity materialized
    CHECK(p.leq(1, 1));  // reflexivity
    CHECK(!p.leq(2, 0));
    CHECK(p.cover_edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("cycles and malformed input are rejected") {
    CHECK_THROWS_AS(make_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), format_error);
    CHECK_THROWS_AS(make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                    format_error);
    CHECK_THROWS_AS(make_poset({"a"}, {{"a", "z"}}), format_error);
    CHECK_THROWS_AS(make_poset({"a", "a"}, {}), format_error);
}

TEST_CASE("two-node examples") {
    const Poset chain = make_poset({"a", "b"}, {{"a", "b"}});
    CHECK(chain.lt(0, 1));
    const Poset anti = testing::antichain_poset(2);
    CHECK(!anti.leq(0, 1));
    CHECK(!anti.leq(1, 0));
}

TEST_CASE("predicates with witnesses") {
    const Poset fork = testing::fork_poset();
    // the up-set of b contains the incomparable pair t1, t2
    const PosetPredicateResult rs = is_root_system(fork);
    CHECK(!rs.holds);
    CHECK(rs.witness == std::vector<int>{0, 1, 2});
    CHECK(!is_chain(fork).holds);

    const Poset chain3 = testing::chain_poset(3);
    CHECK(is_chain(chain3).holds);
    CHECK(is_root_system(chain3).holds);

    CHECK(is_root_system(testing::cofork_poset()).holds);
    CHECK(!is_root_system(testing::diamond_poset()).holds);

    CHECK(is_antichain(fork, {1, 2}).holds);
    CHECK(!is_antichain(fork, {0, 1}).holds);
    CHECK(is_upset(fork, {1, 2}).holds);
    CHECK(!is_upset(fork, {0}).holds);
    CHECK(is_downset(fork, {0}).holds);
    CHECK(!is_downset(fork, {1}).holds);
    CHECK(is_upset(fork, {}).holds);
}

TEST_CASE("dual is an involution") {
    const Poset fork = testing::fork_poset();
    const Poset dual = fork.dual();
    CHECK(dual.lt(1, 0));
    CHECK(!dual.lt(0, 1));
    CHECK(dual.dual().rel == fork.rel);
    CHECK(is_root_system(dual).holds);  // the co-fork is a root system

    const Poset anti = testing::antichain_poset(3);
    CHECK(anti.dual().rel == anti.rel);

    for (const Poset& p : enumerate_posets(4)) CHECK(p.dual().dual().rel == p.rel);
}

TEST_CASE("linear extension is stable and topological") {
    const Poset fork = testing::fork_poset();
    CHECK(fork.linear_extension() == std::vector<int>{0, 1, 2});
    // input order need not be topological
    const Poset upside = make_poset({"t", "b"}, {{"b", "t"}});
    CHECK(upside.linear_extension() == std::vector<int>{1, 0});
}

TEST_CASE("enumeration counts posets up to isomorphism") {
    CHECK(enumerate_posets(1).size() == 1);
    CHECK(enumerate_posets(2).size() == 1 + 2);
    CHECK(enumerate_posets(3).size() == 1 + 2 + 5);
    CHECK(enumerate_posets(4).size() == 1 + 2 + 5 + 16);
    for (const Poset& p : enumerate_posets(4)) {
        // emitted representatives list nodes in a linear extension
        for (int i = 0; i < p.n; ++i)
            for (int j = 0; j < i; ++j) CHECK(!p.lt(i, j));
        // chains are root systems
        if (is_chain(p).holds) CHECK(is_root_system(p).holds);
    }
}

TEST_SUITE_END();
