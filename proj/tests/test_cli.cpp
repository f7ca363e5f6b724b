#include "rlkit/cli.hpp"

#include "rlkit/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace rlkit;

TEST_SUITE_BEGIN("cli");

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// writes the Boolean-valued fork frame to a temp file once
const std::string& fork_frame_path() {
    static const std::string path = [] {
        std::string p = "cli_test_fork.frame.json";
        std::ofstream f(p);
        f << R"({"poset": {"elements": ["b", "t1", "t2"],
                 "order": [["b", "t1"], ["b", "t2"]]},
                 "algebras": {"b": "L2", "t1": "L2", "t2": "L2"}})";
        return p;
    }();
    return path;
}

}  // namespace

TEST_CASE("classify exits 0 and reports flags") {
    const RunResult r = run({"--json", "classify", "L3"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["classification"]["is_mv"] == true);
    CHECK(j["classification"]["potency"] == 2);

    CHECK(run({"classify", "L3", "--is", "mv"}).code == 0);
    CHECK(run({"classify", "L3", "--is", "heyting"}).code == 1);
    CHECK(run({"classify", "L3", "--is", "nonsense"}).code == 2);
}

TEST_CASE("validate-algebra distinguishes ok, violation and format errors") {
    CHECK(run({"validate-algebra", "L4"}).code == 0);

    // corrupt one cell of L3 on disk
    Json j = algebra_to_json(lukasiewicz_chain(3));
    j["impl"][1][0] = 2;
    std::ofstream("cli_test_bad.alg.json") << j.dump();
    const RunResult bad = run({"--json", "validate-algebra", "cli_test_bad.alg.json"});
    CHECK(bad.code == 1);
    CHECK(Json::parse(bad.out)["axiom"] == "residuation");

    std::ofstream("cli_test_junk.alg.json") << "{\"size\": 2}";
    CHECK(run({"validate-algebra", "cli_test_junk.alg.json"}).code == 2);
    CHECK(run({"validate-algebra", "no_such_file.json"}).code == 2);
}

TEST_CASE("chain output round-trips as an algebra file") {
    const RunResult r = run({"--json", "chain", "5"});
    REQUIRE(r.code == 0);
    CHECK(algebra_from_json(Json::parse(r.out)) == lukasiewicz_chain(5));
    CHECK(run({"chain", "1"}).code == 2);
}

TEST_CASE("valid reports the fork countermodel with exit 1") {
    const RunResult r = run({"--json", "valid", fork_frame_path(), "(p->q)|(q->p)"});
    CHECK(r.code == 1);
    const Json j = Json::parse(r.out);
    CHECK(j["verdict"] == "refuted");
    CHECK(j["witness_node"] == "b");
    CHECK(j["labels"].is_object());

    CHECK(run({"valid", fork_frame_path(), "p -> p"}).code == 0);
    CHECK(run({"valid", fork_frame_path(), "p -> ("}).code == 2);
}

TEST_CASE("represent and embed succeed on small GBL-algebras") {
    const RunResult rep = run({"--json", "represent", "L3"});
    CHECK(rep.code == 0);
    const Json j = Json::parse(rep.out);
    CHECK(j["iso_ok"] == true);
    CHECK(j["factors"] == Json::array({"L3"}));
    CHECK(run({"embed", "L4"}).code == 0);
}

TEST_CASE("countermodel search exit codes") {
    CHECK(run({"countermodel", "(p->q)|(q->p)", "--max-poset", "3", "--values", "L2"}).code == 1);
    CHECK(run({"countermodel", "p -> p", "--max-poset", "2", "--values", "L2"}).code == 0);
}

TEST_CASE("json reports are byte-identical across runs") {
    for (const auto& args :
         {std::vector<std::string>{"--json", "valid", fork_frame_path(), "(p->q)|(q->p)"},
          std::vector<std::string>{"--json", "countermodel", "~~x -> x", "--values", "L2,L3"},
          std::vector<std::string>{"--json", "soundness-suite", "--max-poset", "2"},
          std::vector<std::string>{"--json", "filters", "L4"}}) {
        const RunResult a = run(args);
        const RunResult b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("quotient, subalgebra, filters, values, si") {
    CHECK(run({"quotient", "L3", "2"}).code == 0);
    CHECK(run({"quotient", "L3", "1,2"}).code == 2);  // not product-closed
    const RunResult sub = run({"--json", "subalgebra", "L5", "2"});
    CHECK(sub.code == 0);
    CHECK(Json::parse(sub.out)["elements"] == Json::array({0, 2, 4}));
    const RunResult fil = run({"--json", "filters", "L3"});
    CHECK(Json::parse(fil.out)["count"] == 2);
    const RunResult val = run({"--json", "values", "L3"});
    CHECK(Json::parse(val.out)["count"] == 1);
    CHECK(run({"si", "L3"}).code == 0);
    std::ofstream("cli_test_p22.alg.json")
        << algebra_to_json(direct_product({lukasiewicz_chain(2), lukasiewicz_chain(2)})).dump();
    CHECK(run({"si", "cli_test_p22.alg.json"}).code == 1);
}

TEST_CASE("product command multiplies sizes") {
    const RunResult r = run({"--json", "product", "L2", "L3"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["size"] == 6);
}

TEST_CASE("box and labelings") {
    const RunResult box = run({"--json", "box", fork_frame_path(), "1,1,0"});
    REQUIRE(box.code == 0);
    const Json j = Json::parse(box.out);
    CHECK(j["output"]["b"] == 0);
    CHECK(j["fixpoint"] == false);
    const RunResult lab = run({"--json", "labelings", fork_frame_path()});
    CHECK(Json::parse(lab.out)["count"] == 5);
}

TEST_CASE("poset-product emits a loadable algebra") {
    const RunResult r = run({"--json", "poset-product", fork_frame_path()});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["size"] == 5);
    CHECK(j["classification"]["is_heyting"] == true);
    CHECK(validate_algebra(algebra_from_json(j["algebra"])).ok);
}

TEST_CASE("parse, eval, hierarchy, conuclear, sequent") {
    const RunResult p = run({"--json", "parse", "x&y|z"});
    CHECK(p.code == 0);
    CHECK(Json::parse(p.out)["canonical"] == "x & y | z");
    CHECK(run({"parse", "x & & y"}).code == 2);

    const RunResult e = run({"--json", "eval", "L3", "x * x", "--assign", "x=1"});
    CHECK(Json::parse(e.out)["value"] == 0);
    CHECK(Json::parse(e.out)["as_rational"] == "0");

    const RunResult h = run({"--json", "hierarchy", "(p -> q) | (q -> p)"});
    CHECK(Json::parse(h.out)["p_level"] == 2);
    CHECK(Json::parse(h.out)["in_n2_star"] == false);

    CHECK(run({"conuclear", "(x*(x->y)) -> (x&y) = 1"}).code == 0);
    CHECK(run({"conuclear", "1 -> ((x->y)|(y->x)) = 1"}).code == 1);

    CHECK(run({"sequent", "L3", "p, p -> q |- q"}).code == 0);
    CHECK(run({"sequent", "L3", "|- 0"}).code == 1);
}

TEST_CASE("kripke and temporal commands") {
    const RunResult k =
        run({"--json", "kripke", fork_frame_path(), "(p->q)|(q->p)", "--upset", "p=t1",
             "--upset", "q=t2"});
    CHECK(k.code == 1);  // not forced at the root
    CHECK(Json::parse(k.out)["forces"]["b"] == false);
    CHECK(Json::parse(k.out)["forces"]["t1"] == true);

    std::ofstream("cli_test_chain3.frame.json")
        << R"({"poset": {"elements": ["a", "b"], "order": [["a", "b"]]},
               "algebras": {"a": "L3", "b": "L3"}})";
    const RunResult t = run({"--json", "temporal-eval", "cli_test_chain3.frame.json", "p -> q",
                             "--assign", "p@a=1/2,p@b=1,q@a=0,q@b=1"});
    REQUIRE(t.code == 0);
    CHECK(Json::parse(t.out)["values"]["a"] == "1/2");
    CHECK(run({"temporal-crosscheck", "cli_test_chain3.frame.json", "p -> q"}).code == 0);
}

TEST_CASE("formula files drive valid, conuclear and sequent") {
    std::ofstream("cli_test_axioms.formulas")
        << "# axioms\n"
           "x * (x -> y) = x & y\n"
           "(x -> y) | (y -> x) = 1\n"
           "x * y <= y\n";
    const RunResult v = run({"--json", "valid", fork_frame_path(), "@cli_test_axioms.formulas"});
    CHECK(v.code == 1);  // prelinearity fails on the fork
    CHECK(Json::parse(v.out)["results"].size() == 3);

    std::ofstream("cli_test_seqs.formulas") << "p, p -> q |- q\np |- q\n";
    CHECK(run({"sequent", "L3", "@cli_test_seqs.formulas"}).code == 1);

    std::ofstream("cli_test_eqs.formulas") << "(x*(x->y)) -> (x&y) = 1\n";
    CHECK(run({"conuclear", "@cli_test_eqs.formulas"}).code == 0);
    CHECK(run({"valid", fork_frame_path(), "@no_such.formulas"}).code == 2);
}

TEST_CASE("soundness-suite runs clean") {
    const RunResult r = run({"--json", "soundness-suite", "--max-poset", "2", "--values", "L2"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["checked"].get<int>() > 0);
}

TEST_CASE("usage errors and caps") {
    CHECK(run({}).code == 2);
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"classify"}).code == 2);

    // the cap flag turns an oversized product into an explicit error
    CHECK(run({"product", "L8", "L8", "--cap", "10"}).code == 2);

    // the environment variable provides the default cap; the flag wins
    setenv("RLKIT_CAP", "10", 1);
    CHECK(run({"product", "L8", "L8"}).code == 2);
    CHECK(run({"product", "L8", "L8", "--cap", "100"}).code == 0);
    unsetenv("RLKIT_CAP");
}

TEST_CASE("help exits 0") {
    const RunResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rlkit") != std::string::npos);
}

TEST_SUITE_END();
