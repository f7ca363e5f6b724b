#include "rlkit/semantics.hpp"

#include "corpus.hpp"

#include <doctest.h>

using namespace rlkit;
using testing::uniform_frame;

TEST_SUITE_BEGIN("semantics");

namespace {

const Algebra l2 = lukasiewicz_chain(2);
const Algebra l3 = lukasiewicz_chain(3);

// fork frame over Booleans with h(p) the indicator of {t1}, h(q) of {t2}
struct ForkModel {
    PosetProduct product;
    Valuation h;
    ForkModel() {
        product = build_poset_product(uniform_frame(testing::fork_poset(), l2));
        h.labeling_index["p"] = product.index_of({0, 1, 0});
        h.labeling_index["q"] = product.index_of({0, 0, 1});
        REQUIRE(h.labeling_index["p"] >= 0);
        REQUIRE(h.labeling_index["q"] >= 0);
    }
};

}  // namespace

TEST_CASE("forcing at the fork") {
    ForkModel m;
    const TermPtr prelin = parse_term("(p -> q) | (q -> p)");
    CHECK(!forces(m.product, m.h, 0, prelin));  // fails at the root
    CHECK(forces(m.product, m.h, 1, prelin));
    CHECK(forces(m.product, m.h, 1, parse_term("p")));
    CHECK(!forces(m.product, m.h, 2, parse_term("p")));
    for (int x = 0; x < 3; ++x) CHECK(forces(m.product, m.h, x, tone()));
}

TEST_CASE("the extension of a valuation is a labeling with an up-set top part") {
    // on arbitrary (not just Boolean-valued) frames, the nodes where a
    // formula takes top always form an up-set
    for (const auto& [desc, f] : testing::frame_corpus(2, {2, 3})) {
        CAPTURE(desc);
        const PosetProduct p = build_poset_product(f);
        std::uint64_t state = 11;
        for (const Axiom& ax : axiom_list()) {
            Valuation h;
            for (const std::string& v : free_vars(ax.formula))
                h.labeling_index[v] = static_cast<int>(testing::splitmix(state) % p.algebra.n);
            const Labeling val = eval_labeling(p, h, ax.formula);
            REQUIRE(is_ac_labeling(f, val));
            std::vector<int> tops;
            for (int x = 0; x < f.poset.n; ++x)
                if (val[x] == f.algebras[x].top) tops.push_back(x);
            REQUIRE(is_upset(f.poset, tops).holds);
        }
    }
}

TEST_CASE("frame validity with witnesses") {
    const PosetProduct fork = build_poset_product(uniform_frame(testing::fork_poset(), l2));
    const FrameValidity fv = frame_valid(fork, parse_term("(p -> q) | (q -> p)"));
    REQUIRE(!fv.valid);
    CHECK(fv.exhaustive);
    CHECK(*fv.witness_node == 0);
    CHECK(!forces(fork, *fv.witness, *fv.witness_node, parse_term("(p -> q) | (q -> p)")));

    const PosetProduct chain = build_poset_product(uniform_frame(testing::chain_poset(2), l2));
    CHECK(frame_valid(chain, parse_term("(p -> q) | (q -> p)")).valid);

    // divisibility is valid on every MV-valued frame
    const PosetProduct mixed = build_poset_product(
        testing::frame_of(testing::chain_poset(2), {l3, l2}));
    CHECK(frame_valid(mixed, parse_term("(x * (x -> y)) <-> (x & y)")).valid);
}

TEST_CASE("frame validity verdict always matches the product equation") {
    for (const auto& [desc, f] : testing::frame_corpus(2, {2, 3})) {
        CAPTURE(desc);
        const PosetProduct p = build_poset_product(f);
        for (const Axiom& ax : axiom_list()) {
            const FrameValidity fv = frame_valid(p, ax.formula);
            const EquationResult eq = check_equation(p.algebra, Equation{ax.formula, tone(), false});
            REQUIRE(fv.valid == eq.valid);
        }
    }
}

TEST_CASE("sampled mode still decides exactly") {
    // 27 labelings over the three-antichain of L3: beyond the exhaustive
    // bound, so the forcing route samples and the equation route decides
    const PosetProduct p = build_poset_product(uniform_frame(testing::antichain_poset(3), l3));
    REQUIRE(p.algebra.n == 27);
    const FrameValidity valid = frame_valid(p, parse_term("(x * (x -> y)) <-> (x & y)"));
    CHECK(valid.valid);
    CHECK(!valid.exhaustive);
    const FrameValidity refuted = frame_valid(p, parse_term("x | (x -> 0)"));
    CHECK(!refuted.valid);
    REQUIRE(refuted.witness.has_value());
    CHECK(!forces(p, *refuted.witness, *refuted.witness_node, parse_term("x | (x -> 0)")));
}

TEST_CASE("countermodel search in canonical order") {
    const auto values = testing::chain_values({2});

    // prelinearity first fails on the fork among posets of up to 3 nodes
    const CountermodelResult pre =
        countermodel_search(parse_term("(p -> q) | (q -> p)"), 3, values);
    REQUIRE(pre.found);
    CHECK(pre.frame->poset.n == 3);
    CHECK(!is_root_system(pre.frame->poset).holds);

    // double negation elimination fails on the two-chain
    const CountermodelResult dne = countermodel_search(parse_term("~~x -> x"), 2, values);
    REQUIRE(dne.found);
    CHECK(dne.frame->poset.n == 2);
    CHECK(is_chain(dne.frame->poset).holds);

    // a theorem is never refuted
    const CountermodelResult taut =
        countermodel_search(parse_term("p -> p"), 2, testing::chain_values({2, 3}));
    CHECK(!taut.found);
    CHECK(taut.frames_checked == 10);
}

TEST_CASE("kripke bridge on the fork") {
    const PosetProduct p = build_poset_product(uniform_frame(testing::fork_poset(), l2));

    const Valuation h = valuation_of_upsets(p, {{"p", {1}}});
    CHECK(p.labelings[h.labeling_index.at("p")] == Labeling{0, 1, 0});

    const Valuation empty = valuation_of_upsets(p, {{"p", {}}});
    CHECK(p.labelings[empty.labeling_index.at("p")] == Labeling{0, 0, 0});

    const Valuation full = valuation_of_upsets(p, {{"p", {0, 1, 2}}});
    CHECK(p.labelings[full.labeling_index.at("p")] == Labeling{1, 1, 1});

    // {0} is not an up-set of the fork
    CHECK_THROWS_AS(valuation_of_upsets(p, {{"p", {0}}}), precondition_error);

    const auto back = upsets_of_valuation(p, h);
    CHECK(back.at("p") == std::set<int>{1});
}

TEST_CASE("labeling forcing equals Kripke forcing on Boolean-valued frames") {
    for (const auto& [desc, f] : testing::frame_corpus(3, {2})) {
        CAPTURE(desc);
        const PosetProduct p = build_poset_product(f);
        // all up-sets of the poset
        std::vector<std::set<int>> upsets;
        for (unsigned mask = 0; mask < (1u << f.poset.n); ++mask) {
            std::set<int> s;
            for (int i = 0; i < f.poset.n; ++i)
                if (mask & (1u << i)) s.insert(i);
            if (is_upset(f.poset, {s.begin(), s.end()}).holds) upsets.push_back(std::move(s));
        }
        for (const Axiom& ax : axiom_list()) {
            const std::vector<std::string> vars = free_vars(ax.formula);
            if (vars.size() > 2) continue;
            std::vector<std::size_t> pick(vars.size(), 0);
            const std::size_t total = [&] {
                std::size_t t = 1;
                for (std::size_t i = 0; i < vars.size(); ++i) t *= upsets.size();
                return t;
            }();
            for (std::size_t i = 0; i < total; ++i) {
                std::map<std::string, std::set<int>> assignment;
                for (std::size_t k = 0; k < vars.size(); ++k)
                    assignment[vars[k]] = upsets[pick[k]];
                const Valuation h = valuation_of_upsets(p, assignment);
                for (int x = 0; x < f.poset.n; ++x)
                    REQUIRE(forces(p, h, x, ax.formula) ==
                            kripke_forces(f.poset, assignment, x, ax.formula));
                for (int k = static_cast<int>(pick.size()) - 1; k >= 0; --k) {
                    if (++pick[k] < upsets.size()) break;
                    pick[k] = 0;
                }
            }
        }
    }
}

TEST_CASE("persistence on Boolean-valued frames") {
    for (const auto& [desc, f] : testing::frame_corpus(3, {2})) {
        const PosetProduct p = build_poset_product(f);
        for (const Axiom& ax : axiom_list()) {
            const std::vector<std::string> vars = free_vars(ax.formula);
            if (vars.size() > 2) continue;
            std::vector<int> digits(vars.size(), 0);
            const long long total = [&] {
                long long t = 1;
                for (std::size_t i = 0; i < vars.size(); ++i) t *= p.algebra.n;
                return t;
            }();
            for (long long i = 0; i < total; ++i) {
                Valuation h;
                for (std::size_t k = 0; k < vars.size(); ++k)
                    h.labeling_index[vars[k]] = digits[k];
                for (int x = 0; x < f.poset.n; ++x)
                    for (int y = 0; y < f.poset.n; ++y)
                        if (f.poset.leq(x, y) && forces(p, h, x, ax.formula))
                            REQUIRE(forces(p, h, y, ax.formula));
                for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
                    if (++digits[k] < p.algebra.n) break;
                    digits[k] = 0;
                }
            }
        }
    }
}

TEST_CASE("temporal rationals") {
    const Rational half = Rational::of(1, 2);
    CHECK(rat_prod(half, half) == Rational{0, 1});
    CHECK(rat_impl(half, Rational{0, 1}) == half);
    CHECK(rat_impl(Rational{0, 1}, half) == Rational{1, 1});
    CHECK(rat_leq(Rational::of(1, 3), half));
    CHECK(to_string(Rational::of(2, 6)) == "1/3");
}

TEST_CASE("temporal evaluation clauses") {
    // one-point flow with L(t) = 3
    const Frame point3 = uniform_frame(testing::antichain_poset(1), l3);
    const TemporalFlow flow = flow_of_frame(point3);

    TemporalAssignment v;
    v.values["p"] = {Rational::of(1, 2)};
    v.values["q"] = {Rational{0, 1}};

    // second clause: q < p < 1 with nothing above
    CHECK(temporal_eval(flow, v, 0, parse_term("p -> q")) == Rational::of(1, 2));
    // first clause
    CHECK(temporal_eval(flow, v, 0, parse_term("q -> p")) == Rational{1, 1});
    // product clause
    CHECK(temporal_eval(flow, v, 0, parse_term("p * p")) == Rational{0, 1});

    // third clause: with v(p) = 1 everywhere, p -> 0 evaluates to v(0) = 0
    TemporalAssignment top;
    top.values["p"] = {Rational{1, 1}};
    CHECK(temporal_eval(flow, top, 0, parse_term("p -> 0")) == Rational{0, 1});

    // the fragment excludes meet, join and the unit
    CHECK_THROWS_AS(temporal_eval(flow, v, 0, parse_term("p & q")), precondition_error);
    CHECK_THROWS_AS(temporal_eval(flow, v, 0, parse_term("p | q")), precondition_error);
    CHECK_THROWS_AS(temporal_eval(flow, v, 0, parse_term("p -> 1")), precondition_error);
}

TEST_CASE("temporal assignments are validated") {
    const Frame chain = uniform_frame(testing::chain_poset(2), l3);
    const TemporalFlow flow = flow_of_frame(chain);
    TemporalAssignment bad;
    bad.values["p"] = {Rational::of(1, 2), Rational{0, 1}};  // not monotone
    CHECK_THROWS_AS(validate_temporal_assignment(flow, bad), precondition_error);
    TemporalAssignment off;
    off.values["p"] = {Rational::of(1, 3), Rational{1, 1}};  // 1/3 not in L3
    CHECK_THROWS_AS(validate_temporal_assignment(flow, off), precondition_error);
    TemporalAssignment comparable;
    comparable.values["p"] = {Rational::of(1, 2), Rational::of(1, 2)};  // interior twice on a chain
    CHECK_THROWS_AS(validate_temporal_assignment(flow, comparable), precondition_error);

    // non-Lukasiewicz factors are rejected
    CHECK_THROWS_AS(flow_of_frame(uniform_frame(testing::chain_poset(2), testing::heyting_chain(3))),
                    precondition_error);
}

TEST_CASE("temporal evaluation agrees with forcing exhaustively") {
    const std::vector<const char*> formulas = {"p -> q", "p * q", "p -> (q -> p)",
                                               "(p -> q) -> q", "p -> 0", "(p -> 0) -> 0"};
    for (const auto& [desc, f] : testing::frame_corpus(2, {2, 3})) {
        CAPTURE(desc);
        const PosetProduct p = build_poset_product(f);
        for (const char* text : formulas) {
            const TermPtr t = parse_term(text);
            for (int i = 0; i < p.algebra.n; ++i)
                for (int j = 0; j < p.algebra.n; ++j) {
                    Valuation h;
                    h.labeling_index["p"] = i;
                    h.labeling_index["q"] = j;
                    const CrosscheckReport rep = temporal_crosscheck(p, h, t);
                    REQUIRE(rep.agree);
                }
        }
    }
}

TEST_CASE("soundness suite has no violations and skips mismatches") {
    const SuiteReport rep =
        soundness_instance_suite(testing::frame_corpus(2, {2, 3}), axiom_list());
    CHECK(rep.checked > 0);
    CHECK(rep.skipped > 0);
    // idempotence is skipped on an L3-valued frame
    bool found_skip = false;
    for (const SuiteEntry& e : rep.entries)
        if (e.axiom == "idempotence" && !e.applicable) found_skip = true;
    CHECK(found_skip);
}

TEST_CASE("frame hypothesis classes") {
    const Frame fork2 = uniform_frame(testing::fork_poset(), l2);
    CHECK(frame_matches(fork2, AxiomClass::All));
    CHECK(frame_matches(fork2, AxiomClass::Gbl));
    CHECK(frame_matches(fork2, AxiomClass::Ha));
    CHECK(!frame_matches(fork2, AxiomClass::Bl));  // not a root system
    CHECK(!frame_matches(fork2, AxiomClass::Ga));

    const Frame chain3 = uniform_frame(testing::chain_poset(2), l3);
    CHECK(frame_matches(chain3, AxiomClass::Bl));
    CHECK(!frame_matches(chain3, AxiomClass::Ha));
    CHECK(frame_matches(chain3, AxiomClass::Potency2));

    const Frame chain4 = uniform_frame(testing::chain_poset(2), lukasiewicz_chain(4));
    CHECK(!frame_matches(chain4, AxiomClass::Potency2));
    CHECK(frame_matches(chain4, AxiomClass::Potency3));
}

TEST_SUITE_END();
