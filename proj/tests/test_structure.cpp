#include "rlkit/structure.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace rlkit;
using testing::heyting_chain;

TEST_SUITE_BEGIN("structure");

namespace {

const Algebra l2 = lukasiewicz_chain(2);
const Algebra l3 = lukasiewicz_chain(3);

}  // namespace

TEST_CASE("value frame of a simple chain is a single point") {
    const ValueFrameResult vf = value_frame(l3);
    REQUIRE(vf.delta.values.size() == 1);
    CHECK(vf.delta.values[0].members() == std::vector<int>{2});
    CHECK(vf.factor_chain_size == std::vector<int>{3});
    CHECK(vf.factors[0] == l3);
}

TEST_CASE("value frame of the Goedel chain is a two-chain of Booleans") {
    const Algebra h3 = heyting_chain(3);
    const ValueFrameResult vf = value_frame(h3);
    REQUIRE(vf.delta.values.size() == 2);
    CHECK(vf.delta.order.lt(0, 1));
    CHECK(vf.factor_chain_size == std::vector<int>{2, 2});
    CHECK(classify(vf.quotients[0].algebra).potency == 1);
}

TEST_CASE("value frame of a product is an antichain") {
    const Algebra p22 = direct_product({l2, l2});
    const ValueFrameResult vf = value_frame(p22);
    REQUIRE(vf.delta.values.size() == 2);
    CHECK(!vf.delta.order.lt(0, 1));
    CHECK(!vf.delta.order.lt(1, 0));
    CHECK(vf.factor_chain_size == std::vector<int>{2, 2});

    const Algebra p23 = direct_product({l2, l3});
    const ValueFrameResult vf23 = value_frame(p23);
    CHECK(vf23.factor_chain_size == std::vector<int>{3, 2});
}

TEST_CASE("value frame requires a GBL-algebra") {
    // four-element chain with the drastic product x y = 0 for x, y < 1:
    // residuated but not divisible
    Algebra a;
    a.n = 4;
    a.bottom = 0;
    a.top = 3;
    a.meet_t.resize(16);
    a.join_t.resize(16);
    a.prod_t.resize(16);
    a.impl_t.resize(16);
    for (Element i = 0; i < 4; ++i)
        for (Element j = 0; j < 4; ++j) {
            a.meet_t[i * 4 + j] = std::min(i, j);
            a.join_t[i * 4 + j] = std::max(i, j);
            a.prod_t[i * 4 + j] = i == 3 ? j : j == 3 ? i : 0;
            a.impl_t[i * 4 + j] = i == 3 ? j : i <= j ? 3 : 2;
        }
    REQUIRE(validate_algebra(a).ok);
    CHECK(!classify(a).is_gbl);
    CHECK_THROWS_AS(value_frame(a), precondition_error);
}

TEST_CASE("epsilon embeds a chain identically onto its one-point product") {
    const ValueFrameResult vf = value_frame(l3);
    const PosetProduct p = build_poset_product(vf.frame);
    const EmbeddingResult emb = epsilon_embedding(l3, vf, p);
    CHECK(emb.surjective);
    CHECK(emb.image_index == std::vector<int>{0, 1, 2});
}

TEST_CASE("epsilon lands bijectively on the Goedel chain's product") {
    const Algebra h3 = heyting_chain(3);
    const ValueFrameResult vf = value_frame(h3);
    const PosetProduct p = build_poset_product(vf.frame);
    const EmbeddingResult emb = epsilon_embedding(h3, vf, p);
    CHECK(emb.surjective);
    // bottom, then the middle element (bottom at the small value, top at the
    // large one), then top
    CHECK(emb.epsilon[0] == Labeling{0, 0});
    CHECK(emb.epsilon[1] == Labeling{0, 1});
    CHECK(emb.epsilon[2] == Labeling{1, 1});
}

TEST_CASE("representation on the named examples") {
    for (const Algebra& a :
         {l3, heyting_chain(3), direct_product({l2, l2}), direct_product({l2, l3}),
          lukasiewicz_chain(2), lukasiewicz_chain(4), lukasiewicz_chain(5)}) {
        const RepresentResult r = represent_finite_gbl(a);
        CHECK(r.product.algebra.n == a.n);
        // the witness is a bijective homomorphism
        for (Element x = 0; x < a.n; ++x)
            for (Element y = 0; y < a.n; ++y) {
                REQUIRE(r.iso[a.meet(x, y)] == r.product.algebra.meet(r.iso[x], r.iso[y]));
                REQUIRE(r.iso[a.impl(x, y)] == r.product.algebra.impl(r.iso[x], r.iso[y]));
            }
    }
}

TEST_CASE("representation of the trivial algebra uses the empty frame") {
    Algebra one;
    one.n = 1;
    one.meet_t = one.join_t = one.prod_t = one.impl_t = {0};
    one.bottom = one.top = 0;
    const RepresentResult r = represent_finite_gbl(one);
    CHECK(r.frame.delta.values.empty());
    CHECK(r.product.algebra.n == 1);
}

TEST_CASE("delta of a BL-chain is a chain; of a BL-algebra a root system") {
    for (const auto& [name, a] : testing::gbl_corpus()) {
        if (a.n > 16) continue;
        const Classification c = classify(a);
        if (!c.is_bl) continue;
        CAPTURE(name);
        const ValuesResult v = values(a);
        if (c.is_chain) CHECK(is_chain(v.order).holds);
        CHECK(is_root_system(v.order).holds);
    }
}

TEST_CASE("conuclear preservation through box") {
    const Frame f = testing::uniform_frame(testing::chain_poset(2), l3);
    const Algebra b = direct_product(f.algebras);
    const std::vector<Element> box = box_on_product(f);

    const PreservationReport rep =
        conuclear_preservation_check(b, box, parse_equation("x * (x -> y) <= x & y"));
    CHECK(rep.base_valid);
    CHECK(rep.image_valid);

    // the identity conucleus preserves trivially
    std::vector<Element> id(b.n);
    for (Element x = 0; x < b.n; ++x) id[x] = x;
    const PreservationReport rid =
        conuclear_preservation_check(b, id, parse_equation("x * y <= y"));
    CHECK(rid.base_valid);
    CHECK(rid.image_valid);
}

TEST_CASE("preservation preconditions") {
    const Algebra b = direct_product({l2, l2});
    std::vector<Element> id{0, 1, 2, 3};
    // consequent outside N2*: prelinearity
    CHECK_THROWS_AS(
        conuclear_preservation_check(b, id, parse_equation("1 <= (x -> y) | (y -> x)")),
        precondition_error);
    // antecedent outside P2*
    CHECK_THROWS_AS(
        conuclear_preservation_check(b, id, parse_equation("((x -> y) -> y) <= x | (x -> y)")),
        precondition_error);
    // equations (not inequalities) are rejected
    CHECK_THROWS_AS(conuclear_preservation_check(b, id, parse_equation("x = x")),
                    precondition_error);
}

TEST_SUITE_END();
