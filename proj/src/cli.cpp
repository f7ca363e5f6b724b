#include "rlkit/cli.hpp"

#include "rlkit/io.hpp"
#include "rlkit/semantics.hpp"
#include "rlkit/structure.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

namespace rlkit {

namespace {

struct Ctx {
    bool json = false;
    std::uint64_t seed = 0;
    Caps caps;
    int max_poset = 3;
    std::vector<std::string> value_names{"L2", "L3"};
    std::ostream* out = nullptr;
};

void emit(const Ctx& ctx, const Json& report, const std::string& human) {
    if (ctx.json)
        *ctx.out << report.dump(2) << "\n";
    else
        *ctx.out << human;
}

std::vector<int> parse_csv_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) continue;
        try {
            out.push_back(std::stoi(piece));
        } catch (const std::exception&) {
            throw format_error("expected a comma-separated list of integers");
        }
    }
    return out;
}

std::vector<std::pair<std::string, Algebra>> resolve_values(const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, Algebra>> out;
    for (const std::string& n : names) {
        Algebra a = resolve_algebra(n);
        const ValidationReport r = validate_algebra(a);
        if (!r.ok) throw format_error("value algebra '" + n + "' violates " + r.axiom);
        out.emplace_back(n, std::move(a));
    }
    return out;
}

Algebra resolve_valid_algebra(const std::string& arg) {
    Algebra a = resolve_algebra(arg);
    const ValidationReport r = validate_algebra(a);
    if (!r.ok)
        throw format_error("algebra '" + arg + "' violates " + r.axiom +
                           "; run validate-algebra for details");
    return a;
}

Json classification_json(const Classification& c) {
    Json j;
    j["is_gbl"] = c.is_gbl;
    j["is_bl"] = c.is_bl;
    j["is_mv"] = c.is_mv;
    j["is_heyting"] = c.is_heyting;
    j["is_godel"] = c.is_godel;
    j["is_boolean"] = c.is_boolean;
    j["is_chain"] = c.is_chain;
    j["potency"] = c.potency;
    return j;
}

Json labeling_json(const Frame& f, const Labeling& g) {
    Json j = Json::object();
    for (int x = 0; x < f.poset.n; ++x) j[f.poset.names[x]] = g[x];
    return j;
}

Json valuation_json(const PosetProduct& p, const Valuation& h) {
    Json idx = Json::object(), labels = Json::object();
    for (const auto& [var, i] : h.labeling_index) {
        idx[var] = i;
        labels[var] = labeling_json(p.frame, p.labelings[i]);
    }
    Json j;
    j["witness_valuation"] = std::move(idx);
    j["labels"] = std::move(labels);
    return j;
}

std::map<std::string, Element> parse_assignment(const std::string& text) {
    std::map<std::string, Element> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) continue;
        const std::size_t eq = piece.find('=');
        if (eq == std::string::npos) throw format_error("assignments look like x=1,y=0");
        try {
            out[piece.substr(0, eq)] = std::stoi(piece.substr(eq + 1));
        } catch (const std::exception&) {
            throw format_error("assignments look like x=1,y=0");
        }
    }
    return out;
}

Rational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational::of(std::stoll(text), 1);
        return Rational::of(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw format_error("expected a rational like 1/2");
    }
}

int exit_of(bool property_holds) { return property_holds ? 0 : 1; }

// Formula-bearing arguments may name a formula file as @path. Equation
// lines s = t denote the formula s <-> t; inequalities denote s -> t.
struct FormulaArg {
    std::string text;
    TermPtr term;
};

std::vector<FormulaArg> formulas_from_arg(const std::string& arg) {
    std::vector<FormulaArg> out;
    if (!arg.empty() && arg[0] == '@') {
        for (const FormulaLine& line : read_formula_file(arg.substr(1))) {
            if (line.kind == FormulaLine::Kind::SequentLine)
                throw format_error("expected formulas, found a sequent: " + line.text);
            const Equation& eq = line.equation;
            out.push_back({line.text, eq.is_leq ? timpl(eq.lhs, eq.rhs) : tiff(eq.lhs, eq.rhs)});
        }
        if (out.empty()) throw format_error("no formulas in " + arg.substr(1));
        return out;
    }
    out.push_back({arg, parse_term(arg)});
    return out;
}

std::vector<std::pair<std::string, Equation>> equations_from_arg(const std::string& arg) {
    std::vector<std::pair<std::string, Equation>> out;
    if (!arg.empty() && arg[0] == '@') {
        for (const FormulaLine& line : read_formula_file(arg.substr(1))) {
            if (line.kind == FormulaLine::Kind::SequentLine)
                throw format_error("expected equations, found a sequent: " + line.text);
            out.emplace_back(line.text, line.equation);
        }
        if (out.empty()) throw format_error("no equations in " + arg.substr(1));
        return out;
    }
    out.emplace_back(arg, parse_equation(arg));
    return out;
}

std::vector<std::pair<std::string, Sequent>> sequents_from_arg(const std::string& arg) {
    std::vector<std::pair<std::string, Sequent>> out;
    if (!arg.empty() && arg[0] == '@') {
        for (const FormulaLine& line : read_formula_file(arg.substr(1))) {
            if (line.kind != FormulaLine::Kind::SequentLine)
                throw format_error("expected sequents, found: " + line.text);
            out.emplace_back(line.text, line.sequent);
        }
        if (out.empty()) throw format_error("no sequents in " + arg.substr(1));
        return out;
    }
    out.emplace_back(arg, parse_sequent(arg));
    return out;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_algebra(arg);
    const ValidationReport r = validate_algebra(a);
    Json j;
    j["command"] = "validate-algebra";
    j["algebra"] = arg;
    j["ok"] = r.ok;
    if (!r.ok) {
        j["axiom"] = r.axiom;
        j["witness"] = r.witness;
        if (!r.detail.empty()) j["detail"] = r.detail;
    }
    std::string human = r.ok ? "ok\n" : "violation: " + r.axiom + "\n";
    emit(ctx, j, human);
    return exit_of(r.ok);
}

int cmd_classify(const Ctx& ctx, const std::string& arg, const std::string& require) {
    const Algebra a = resolve_valid_algebra(arg);
    const Classification c = classify(a);
    Json j;
    j["command"] = "classify";
    j["algebra"] = arg;
    j["size"] = a.n;
    j["classification"] = classification_json(c);
    bool holds = true;
    if (!require.empty()) {
        if (require == "gbl") holds = c.is_gbl;
        else if (require == "bl") holds = c.is_bl;
        else if (require == "mv") holds = c.is_mv;
        else if (require == "heyting") holds = c.is_heyting;
        else if (require == "godel") holds = c.is_godel;
        else if (require == "boolean") holds = c.is_boolean;
        else if (require == "chain") holds = c.is_chain;
        else throw format_error("unknown class '" + require + "'");
        j["requires"] = require;
        j["holds"] = holds;
    }
    std::ostringstream human;
    human << arg << ": size " << a.n << ", potency " << c.potency;
    if (c.is_boolean) human << ", Boolean";
    else if (c.is_godel) human << ", Goedel";
    else if (c.is_mv) human << ", MV";
    else if (c.is_heyting) human << ", Heyting";
    else if (c.is_bl) human << ", BL";
    else if (c.is_gbl) human << ", GBL";
    if (c.is_chain) human << ", chain";
    if (!require.empty()) human << "; is " << require << ": " << (holds ? "yes" : "no");
    human << "\n";
    emit(ctx, j, human.str());
    return exit_of(holds);
}

int cmd_chain(const Ctx& ctx, int k) {
    const Algebra a = lukasiewicz_chain(k);
    const Json j = algebra_to_json(a);
    emit(ctx, j, j.dump(2) + "\n");
    return 0;
}

int cmd_product(const Ctx& ctx, const std::vector<std::string>& args) {
    std::vector<Algebra> factors;
    for (const auto& arg : args) factors.push_back(resolve_valid_algebra(arg));
    const Algebra p = direct_product(factors, ctx.caps);
    const Json j = algebra_to_json(p);
    emit(ctx, j, j.dump(2) + "\n");
    return 0;
}

int cmd_subalgebra(const Ctx& ctx, const std::string& arg, const std::string& seeds) {
    const Algebra a = resolve_valid_algebra(arg);
    const SubalgebraResult r = generated_subalgebra(a, parse_csv_ints(seeds));
    Json j;
    j["command"] = "subalgebra";
    j["algebra"] = arg;
    j["elements"] = r.elements;
    j["induced"] = algebra_to_json(r.algebra);
    std::ostringstream human;
    human << "elements:";
    for (Element e : r.elements) human << " " << e;
    human << "\n" << algebra_to_json(r.algebra).dump(2) << "\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_filters(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const auto filters = enumerate_filters(a, ctx.caps);
    Json j;
    j["command"] = "filters";
    j["algebra"] = arg;
    j["count"] = filters.size();
    Json list = Json::array();
    for (const Bitset& f : filters) list.push_back(f.members());
    j["filters"] = std::move(list);
    std::ostringstream human;
    human << filters.size() << " deductive filters\n";
    for (const Bitset& f : filters) {
        human << " ";
        for (Element e : f.members()) human << " " << e;
        human << "\n";
    }
    emit(ctx, j, human.str());
    return 0;
}

int cmd_values(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const ValuesResult v = values(a, ctx.caps);
    Json j;
    j["command"] = "values";
    j["algebra"] = arg;
    j["count"] = v.values.size();
    Json list = Json::array();
    for (const Bitset& f : v.values) list.push_back(f.members());
    j["values"] = std::move(list);
    j["order"] = poset_to_json(v.order);
    std::ostringstream human;
    human << v.values.size() << " values\n";
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        human << " v" << i << ":";
        for (Element e : v.values[i].members()) human << " " << e;
        human << "\n";
    }
    emit(ctx, j, human.str());
    return 0;
}

int cmd_quotient(const Ctx& ctx, const std::string& arg, const std::string& members) {
    const Algebra a = resolve_valid_algebra(arg);
    const Bitset f = bitset_of(a.n, parse_csv_ints(members));
    const FilterCheck chk = is_deductive_filter(a, f);
    if (!chk.ok) throw format_error("not a deductive filter: " + chk.violation);
    const QuotientResult q = quotient(a, f);
    Json j;
    j["command"] = "quotient";
    j["algebra"] = arg;
    j["filter"] = f.members();
    j["classes"] = q.classes;
    j["projection"] = q.projection;
    j["quotient"] = algebra_to_json(q.algebra);
    emit(ctx, j, algebra_to_json(q.algebra).dump(2) + "\n");
    return 0;
}

int cmd_si(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const SiReport r = si_analysis(a);
    Json j;
    j["command"] = "si";
    j["algebra"] = arg;
    j["is_si"] = r.is_si;
    if (r.min_nontrivial_filter) j["min_nontrivial_filter"] = r.min_nontrivial_filter->members();
    if (r.coatom) j["coatom"] = *r.coatom;
    std::ostringstream human;
    human << (r.is_si ? "subdirectly irreducible" : "not subdirectly irreducible");
    if (r.coatom) human << ", coatom " << *r.coatom;
    human << "\n";
    emit(ctx, j, human.str());
    return exit_of(r.is_si);
}

int cmd_box(const Ctx& ctx, const std::string& frame_path, const std::string& labeling) {
    const Frame f = load_frame(frame_path);
    const Labeling g = parse_csv_ints(labeling);
    const Labeling boxed = box_map(f, g);
    Json j;
    j["command"] = "box";
    j["frame"] = frame_path;
    j["input"] = labeling_json(f, g);
    j["output"] = labeling_json(f, boxed);
    j["fixpoint"] = boxed == g;
    std::ostringstream human;
    for (int x = 0; x < f.poset.n; ++x)
        human << f.poset.names[x] << ": " << g[x] << " -> " << boxed[x] << "\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_labelings(const Ctx& ctx, const std::string& frame_path) {
    const Frame f = load_frame(frame_path);
    const auto labelings = enumerate_ac_labelings(f, ctx.caps);
    Json j;
    j["command"] = "labelings";
    j["frame"] = frame_path;
    j["count"] = labelings.size();
    Json list = Json::array();
    for (const Labeling& g : labelings) list.push_back(labeling_json(f, g));
    j["labelings"] = std::move(list);
    std::ostringstream human;
    human << labelings.size() << " ac-labelings\n";
    for (const Labeling& g : labelings) {
        human << " ";
        for (int x = 0; x < f.poset.n; ++x) human << " " << g[x];
        human << "\n";
    }
    emit(ctx, j, human.str());
    return 0;
}

int cmd_poset_product(const Ctx& ctx, const std::string& frame_path, bool dual) {
    const Frame f = load_frame(frame_path);
    const PosetProduct p = dual ? dual_poset_product(f, ctx.caps) : build_poset_product(f, ctx.caps);
    Json j;
    j["command"] = dual ? "poset-product --dual" : "poset-product";
    j["frame"] = frame_path;
    j["size"] = p.algebra.n;
    j["classification"] = classification_json(classify(p.algebra));
    j["algebra"] = algebra_to_json(p.algebra);
    emit(ctx, j, algebra_to_json(p.algebra).dump(2) + "\n");
    return 0;
}

Json structure_report(const std::string& arg, const ValueFrameResult& vf,
                      const EmbeddingResult* emb, const std::vector<int>* iso) {
    Json j;
    j["algebra"] = arg;
    j["delta_size"] = vf.delta.values.size();
    Json factors = Json::array();
    for (int m : vf.factor_chain_size) factors.push_back("L" + std::to_string(m));
    j["factors"] = std::move(factors);
    j["frame"] = frame_to_json(vf.frame);
    if (emb) {
        j["embedding_ok"] = true;
        j["epsilon"] = emb->image_index;
    }
    if (iso) {
        j["iso_ok"] = true;
        j["iso"] = *iso;
    }
    return j;
}

int cmd_value_frame(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const ValueFrameResult vf = value_frame(a, ctx.caps);
    Json j = structure_report(arg, vf, nullptr, nullptr);
    j["command"] = "value-frame";
    std::ostringstream human;
    human << "delta size " << vf.delta.values.size() << ", factors:";
    for (int m : vf.factor_chain_size) human << " L" << m;
    human << "\n" << frame_to_json(vf.frame).dump(2) << "\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_embed(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const ValueFrameResult vf = value_frame(a, ctx.caps);
    const PosetProduct p = build_poset_product(vf.frame, ctx.caps);
    const EmbeddingResult emb = epsilon_embedding(a, vf, p);
    Json j = structure_report(arg, vf, &emb, nullptr);
    j["command"] = "embed";
    std::ostringstream human;
    human << "embedding verified: injective homomorphism into a product of size " << p.algebra.n
          << "\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_represent(const Ctx& ctx, const std::string& arg) {
    const Algebra a = resolve_valid_algebra(arg);
    const RepresentResult r = represent_finite_gbl(a, ctx.caps);
    Json j = structure_report(arg, r.frame, &r.embedding, &r.iso);
    j["command"] = "represent";
    std::ostringstream human;
    human << "isomorphic to the poset product of its value frame (size " << r.product.algebra.n
          << ", factors:";
    for (int m : r.frame.factor_chain_size) human << " L" << m;
    human << ")\n";
    emit(ctx, j, human.str());
    return 0;
}

Json ast_json(const TermPtr& t) {
    Json j;
    switch (t->kind) {
        case TermKind::Var: j["var"] = t->var; return j;
        case TermKind::Zero: j["const"] = 0; return j;
        case TermKind::One: j["const"] = 1; return j;
        case TermKind::Meet: j["op"] = "meet"; break;
        case TermKind::Join: j["op"] = "join"; break;
        case TermKind::Prod: j["op"] = "prod"; break;
        case TermKind::Impl: j["op"] = "impl"; break;
    }
    j["lhs"] = ast_json(t->lhs);
    j["rhs"] = ast_json(t->rhs);
    return j;
}

int cmd_parse(const Ctx& ctx, const std::string& text) {
    const TermPtr t = parse_term(text);
    Json j;
    j["command"] = "parse";
    j["input"] = text;
    j["canonical"] = render(t);
    j["variables"] = free_vars(t);
    j["ast"] = ast_json(t);
    emit(ctx, j, render(t) + "\n");
    return 0;
}

int cmd_eval(const Ctx& ctx, const std::string& arg, const std::string& formula,
             const std::string& assign) {
    const Algebra a = resolve_valid_algebra(arg);
    const TermPtr t = parse_term(formula);
    const auto assignment = parse_assignment(assign);
    const Element v = evaluate_term(a, assignment, t);
    Json j;
    j["command"] = "eval";
    j["algebra"] = arg;
    j["formula"] = render(t);
    j["value"] = v;
    std::ostringstream human;
    human << v;
    if (a.n >= 2 && a == lukasiewicz_chain(a.n)) {
        const std::string frac = to_string(Rational::of(v, a.n - 1));
        j["as_rational"] = frac;
        human << " (" << frac << ")";
    }
    human << "\n";
    emit(ctx, j, human.str());
    return 0;
}

Json hierarchy_json(const HierarchyClass& h) {
    Json j;
    if (h.p_level) j["p_level"] = *h.p_level;
    else j["p_level"] = ">" + std::to_string(HierarchyClass::level_cap);
    if (h.n_level) j["n_level"] = *h.n_level;
    else j["n_level"] = ">" + std::to_string(HierarchyClass::level_cap);
    j["in_p2_star"] = h.in_p2_star;
    j["in_n2_star"] = h.in_n2_star;
    return j;
}

int cmd_hierarchy(const Ctx& ctx, const std::string& text) {
    const TermPtr t = parse_term(text);
    const HierarchyClass h = classify_hierarchy(t);
    Json j;
    j["command"] = "hierarchy";
    j["formula"] = render(t);
    j.update(hierarchy_json(h));
    std::ostringstream human;
    human << "P-level " << (h.p_level ? std::to_string(*h.p_level) : "above cap") << ", N-level "
          << (h.n_level ? std::to_string(*h.n_level) : "above cap") << ", P2* "
          << (h.in_p2_star ? "yes" : "no") << ", N2* " << (h.in_n2_star ? "yes" : "no") << "\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_conuclear(const Ctx& ctx, const std::string& text) {
    const auto equations = equations_from_arg(text);
    Json results = Json::array();
    std::ostringstream human;
    bool all = true;
    for (const auto& [line, eq] : equations) {
        const ConuclearCheck c = is_conuclear_equation(eq);
        Json j;
        j["equation"] = render(eq);
        j["conuclear"] = c.conuclear;
        j["shape_ok"] = c.shape_ok;
        if (c.shape_ok) {
            j["antecedent"] = hierarchy_json(c.antecedent);
            j["consequent"] = hierarchy_json(c.consequent);
        }
        if (!c.shape_ok)
            human << line << ": not of the form t -> u = 1\n";
        else
            human << line << ": " << (c.conuclear ? "conuclear" : "not conuclear")
                  << " (antecedent P2* " << (c.antecedent.in_p2_star ? "yes" : "no")
                  << ", consequent N2* " << (c.consequent.in_n2_star ? "yes" : "no") << ")\n";
        all = all && c.conuclear;
        results.push_back(std::move(j));
    }
    Json out;
    out["command"] = "conuclear";
    if (equations.size() == 1)
        out.update(results[0]);
    else
        out["results"] = std::move(results);
    emit(ctx, out, human.str());
    return exit_of(all);
}

int cmd_sequent(const Ctx& ctx, const std::string& arg, const std::string& text, int kmax) {
    const Algebra a = resolve_valid_algebra(arg);
    const auto sequents = sequents_from_arg(text);
    Json results = Json::array();
    std::ostringstream human;
    bool all = true;
    for (const auto& [line, s] : sequents) {
        const SequentResult r = sequent_consequence(a, s, kmax, ctx.caps);
        Json j;
        j["algebra"] = arg;
        j["sequent"] = render(s);
        j["direct"] = r.direct;
        if (r.local_deduction_k) j["local_deduction_k"] = *r.local_deduction_k;
        else j["local_deduction_k"] = nullptr;
        human << render(s) << ": " << (r.direct ? "consequence holds" : "consequence fails");
        if (r.local_deduction_k) human << ", least k = " << *r.local_deduction_k;
        else human << ", no k <= " << kmax;
        human << "\n";
        all = all && r.direct;
        results.push_back(std::move(j));
    }
    Json out;
    out["command"] = "sequent";
    if (sequents.size() == 1)
        out.update(results[0]);
    else
        out["results"] = std::move(results);
    emit(ctx, out, human.str());
    return exit_of(all);
}

int cmd_valid(const Ctx& ctx, const std::string& frame_path, const std::string& formula) {
    const Frame f = load_frame(frame_path);
    const PosetProduct p = build_poset_product(f, ctx.caps);
    const std::vector<FormulaArg> formulas = formulas_from_arg(formula);
    Json results = Json::array();
    std::ostringstream human;
    bool all_valid = true;
    for (const FormulaArg& fa : formulas) {
        const FrameValidity fv = frame_valid(p, fa.term, ctx.caps, ctx.seed);
        Json j;
        j["formula"] = render(fa.term);
        j["frame"] = frame_path;
        j["verdict"] = fv.valid ? "valid" : "refuted";
        j["exhaustive"] = fv.exhaustive;
        j["valuations_checked"] = fv.checked;
        if (fv.valid) {
            j["witness_valuation"] = nullptr;
            j["witness_node"] = nullptr;
            j["labels"] = nullptr;
            human << fa.text << ": valid ("
                  << (fv.exhaustive ? "exhaustive" : "equation-backed") << ")\n";
        } else {
            j.update(valuation_json(p, *fv.witness));
            j["witness_node"] = f.poset.names[*fv.witness_node];
            human << fa.text << ": refuted at node " << f.poset.names[*fv.witness_node] << "\n";
            all_valid = false;
        }
        results.push_back(std::move(j));
    }
    if (formulas.size() == 1) {
        Json j = results[0];
        Json out;
        out["command"] = "valid";
        out.update(j);
        emit(ctx, out, human.str());
    } else {
        Json out;
        out["command"] = "valid";
        out["results"] = std::move(results);
        emit(ctx, out, human.str());
    }
    return exit_of(all_valid);
}

int cmd_countermodel(const Ctx& ctx, const std::string& formula) {
    const TermPtr t = parse_term(formula);
    const auto values = resolve_values(ctx.value_names);
    const CountermodelResult r = countermodel_search(t, ctx.max_poset, values, ctx.caps, ctx.seed);
    Json j;
    j["command"] = "countermodel";
    j["formula"] = render(t);
    j["frames_checked"] = r.frames_checked;
    j["found"] = r.found;
    std::ostringstream human;
    if (r.found) {
        const PosetProduct p = build_poset_product(*r.frame, ctx.caps);
        j["frame"] = frame_to_json(*r.frame);
        j["frame_desc"] = r.frame_desc;
        j.update(valuation_json(p, *r.witness));
        j["witness_node"] = r.frame->poset.names[r.witness_node];
        human << "countermodel on " << r.frame_desc << " at node "
              << r.frame->poset.names[r.witness_node] << "\n";
    } else {
        human << "exhausted " << r.frames_checked << " frames, no countermodel\n";
    }
    emit(ctx, j, human.str());
    return r.found ? 1 : 0;
}

int cmd_kripke(const Ctx& ctx, const std::string& frame_path, const std::string& formula,
               const std::vector<std::string>& upset_args) {
    const Frame f = load_frame(frame_path);
    const TermPtr t = parse_term(formula);
    const PosetProduct p = build_poset_product(f, ctx.caps);
    std::map<std::string, std::set<int>> upsets;
    for (const std::string& arg : upset_args) {
        const std::size_t eq = arg.find('=');
        if (eq == std::string::npos) throw format_error("up-sets look like --upset p=a,b");
        const std::string var = arg.substr(0, eq);
        std::set<int> nodes;
        std::stringstream ss(arg.substr(eq + 1));
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (name.empty()) continue;
            const int idx = f.poset.index_of(name);
            if (idx < 0) throw format_error("unknown node '" + name + "'");
            nodes.insert(idx);
        }
        upsets[var] = std::move(nodes);
    }
    for (const std::string& v : free_vars(t))
        if (!upsets.count(v)) upsets[v] = {};
    const Valuation h = valuation_of_upsets(p, upsets);

    // round trip must reproduce the input
    if (upsets_of_valuation(p, h) != upsets)
        throw internal_error("up-set round trip failed");

    Json per_node = Json::object();
    bool everywhere = true;
    std::ostringstream human;
    for (int x = 0; x < f.poset.n; ++x) {
        const bool via_labelings = forces(p, h, x, t);
        const bool via_kripke = kripke_forces(f.poset, upsets, x, t);
        if (via_labelings != via_kripke)
            throw internal_error("labeling forcing disagrees with Kripke forcing");
        per_node[f.poset.names[x]] = via_labelings;
        everywhere = everywhere && via_labelings;
        human << f.poset.names[x] << ": " << (via_labelings ? "forces" : "does not force") << "\n";
    }
    Json j;
    j["command"] = "kripke";
    j["formula"] = render(t);
    j["frame"] = frame_path;
    j["forces"] = std::move(per_node);
    j["everywhere"] = everywhere;
    emit(ctx, j, human.str());
    return exit_of(everywhere);
}

int cmd_temporal_eval(const Ctx& ctx, const std::string& frame_path, const std::string& formula,
                      const std::string& assign, const std::string& node) {
    const Frame f = load_frame(frame_path);
    const TermPtr t = parse_term(formula);
    const TemporalFlow flow = flow_of_frame(f);
    TemporalAssignment v;
    for (const std::string& var : free_vars(t))
        v.values[var] = std::vector<Rational>(f.poset.n, Rational{0, 1});
    std::stringstream ss(assign);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        if (piece.empty()) continue;
        const std::size_t at = piece.find('@');
        const std::size_t eq = piece.find('=', at == std::string::npos ? 0 : at);
        if (at == std::string::npos || eq == std::string::npos)
            throw format_error("temporal assignments look like p@node=1/2");
        const std::string var = piece.substr(0, at);
        const std::string node_name = piece.substr(at + 1, eq - at - 1);
        const int idx = f.poset.index_of(node_name);
        if (idx < 0) throw format_error("unknown node '" + node_name + "'");
        v.values[var].resize(f.poset.n, Rational{0, 1});
        v.values[var][idx] = parse_rational(piece.substr(eq + 1));
    }
    validate_temporal_assignment(flow, v);
    Json per_node = Json::object();
    std::ostringstream human;
    for (int x = 0; x < f.poset.n; ++x) {
        if (!node.empty() && f.poset.names[x] != node) continue;
        const Rational r = temporal_eval(flow, v, x, t);
        per_node[f.poset.names[x]] = to_string(r);
        human << f.poset.names[x] << ": " << to_string(r) << "\n";
    }
    Json j;
    j["command"] = "temporal-eval";
    j["formula"] = render(t);
    j["frame"] = frame_path;
    j["values"] = std::move(per_node);
    emit(ctx, j, human.str());
    return 0;
}

int cmd_temporal_crosscheck(const Ctx& ctx, const std::string& frame_path,
                            const std::string& formula) {
    const Frame f = load_frame(frame_path);
    const TermPtr t = parse_term(formula);
    const PosetProduct p = build_poset_product(f, ctx.caps);
    const std::vector<std::string> vars = free_vars(t);
    if (vars.size() > 2)
        throw precondition_error("exhaustive cross-check supports at most 2 variables");
    const int m = p.algebra.n;
    long long total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) total *= m;
    long long checked = 0;
    std::vector<int> digits(vars.size(), 0);
    for (long long i = 0; i < total; ++i) {
        Valuation h;
        for (std::size_t k = 0; k < vars.size(); ++k) h.labeling_index[vars[k]] = digits[k];
        temporal_crosscheck(p, h, t);  // raises internal_error on disagreement
        ++checked;
        for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
            if (++digits[k] < m) break;
            digits[k] = 0;
        }
    }
    Json j;
    j["command"] = "temporal-crosscheck";
    j["formula"] = render(t);
    j["frame"] = frame_path;
    j["valuations_checked"] = checked;
    j["agree"] = true;
    std::ostringstream human;
    human << "temporal evaluation agrees with forcing on " << checked << " valuations\n";
    emit(ctx, j, human.str());
    return 0;
}

int cmd_soundness_suite(const Ctx& ctx) {
    const auto values = resolve_values(ctx.value_names);
    const auto frames = generate_frames(ctx.max_poset, values);
    const SuiteReport rep = soundness_instance_suite(frames, axiom_list(), ctx.caps, ctx.seed);
    Json j;
    j["command"] = "soundness-suite";
    j["frames"] = frames.size();
    j["checked"] = rep.checked;
    j["skipped"] = rep.skipped;
    Json entries = Json::array();
    for (const SuiteEntry& e : rep.entries) {
        Json je;
        je["frame"] = e.frame_desc;
        je["axiom"] = e.axiom;
        je["applicable"] = e.applicable;
        if (e.valid) je["valid"] = *e.valid;
        entries.push_back(std::move(je));
    }
    j["entries"] = std::move(entries);
    std::ostringstream human;
    human << "soundness suite: " << rep.checked << " checked, " << rep.skipped
          << " skipped, 0 violations\n";
    emit(ctx, j, human.str());
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite residuated-lattice toolkit and relational model checker"};
    app.name("rlkit");

    Ctx ctx;
    ctx.out = &out;
    if (const char* env = std::getenv("RLKIT_CAP")) {
        try {
            ctx.caps.carrier = std::stoi(env);
        } catch (const std::exception&) {
            err << "RLKIT_CAP must be an integer\n";
            return 2;
        }
    }
    app.add_flag("--json", ctx.json, "emit a JSON report");
    app.add_option("--seed", ctx.seed, "seed for sampled searches");
    app.add_option("--cap", ctx.caps.carrier, "carrier size cap");
    app.add_option("--max-poset", ctx.max_poset, "maximum poset size for searches");
    app.add_option("--values", ctx.value_names, "value algebras for searches")->delimiter(',');
    app.require_subcommand(1);

    int rc = 0;
    auto wire = [&](CLI::App* sub, std::function<int()> fn) {
        sub->callback([&rc, fn = std::move(fn)] { rc = fn(); });
    };

    // positional holders
    std::string s1, s2, s3, s4;
    std::vector<std::string> list1;
    int k = 2, kmax = 8;
    bool dual = false;

    auto* validate = app.add_subcommand("validate-algebra", "check the residuated-lattice axioms");
    validate->add_option("algebra", s1, "builtin Lk or file path")->required();
    wire(validate, [&] { return cmd_validate(ctx, s1); });

    auto* cls = app.add_subcommand("classify", "classification flags and potency");
    cls->add_option("algebra", s1)->required();
    cls->add_option("--is", s2, "gbl|bl|mv|heyting|godel|boolean|chain");
    wire(cls, [&] { return cmd_classify(ctx, s1, s2); });

    auto* chain = app.add_subcommand("chain", "emit the k-element Lukasiewicz chain");
    chain->add_option("k", k, "number of elements")->required();
    wire(chain, [&] { return cmd_chain(ctx, k); });

    auto* product = app.add_subcommand("product", "direct product of algebras");
    product->add_option("algebras", list1)->required()->expected(-1);
    wire(product, [&] { return cmd_product(ctx, list1); });

    auto* sub = app.add_subcommand("subalgebra", "generated subalgebra");
    sub->add_option("algebra", s1)->required();
    sub->add_option("seed_elements", s2, "comma-separated element indices");
    wire(sub, [&] { return cmd_subalgebra(ctx, s1, s2); });

    auto* filters = app.add_subcommand("filters", "enumerate deductive filters");
    filters->add_option("algebra", s1)->required();
    wire(filters, [&] { return cmd_filters(ctx, s1); });

    auto* values_cmd = app.add_subcommand("values", "values and their inclusion order");
    values_cmd->add_option("algebra", s1)->required();
    wire(values_cmd, [&] { return cmd_values(ctx, s1); });

    auto* quot = app.add_subcommand("quotient", "quotient by a deductive filter");
    quot->add_option("algebra", s1)->required();
    quot->add_option("filter", s2, "comma-separated element indices")->required();
    wire(quot, [&] { return cmd_quotient(ctx, s1, s2); });

    auto* si = app.add_subcommand("si", "subdirect irreducibility analysis");
    si->add_option("algebra", s1)->required();
    wire(si, [&] { return cmd_si(ctx, s1); });

    auto* box = app.add_subcommand("box", "apply the interior operator to a choice function");
    box->add_option("frame", s1)->required();
    box->add_option("labeling", s2, "comma-separated element indices, node order")->required();
    wire(box, [&] { return cmd_box(ctx, s1, s2); });

    auto* labelings = app.add_subcommand("labelings", "enumerate ac-labelings");
    labelings->add_option("frame", s1)->required();
    wire(labelings, [&] { return cmd_labelings(ctx, s1); });

    auto* pp = app.add_subcommand("poset-product", "build the poset product of a frame");
    pp->add_option("frame", s1)->required();
    pp->add_flag("--dual", dual, "use the order dual of the poset");
    wire(pp, [&] { return cmd_poset_product(ctx, s1, dual); });

    auto* vf = app.add_subcommand("value-frame", "value frame of a finite GBL-algebra");
    vf->add_option("algebra", s1)->required();
    wire(vf, [&] { return cmd_value_frame(ctx, s1); });

    auto* embed = app.add_subcommand("embed", "verify the embedding into the value-frame product");
    embed->add_option("algebra", s1)->required();
    wire(embed, [&] { return cmd_embed(ctx, s1); });

    auto* represent = app.add_subcommand("represent", "isomorphism onto the value-frame product");
    represent->add_option("algebra", s1)->required();
    wire(represent, [&] { return cmd_represent(ctx, s1); });

    auto* parse = app.add_subcommand("parse", "parse and pretty-print a formula");
    parse->add_option("formula", s1)->required();
    wire(parse, [&] { return cmd_parse(ctx, s1); });

    auto* eval = app.add_subcommand("eval", "evaluate a formula under an assignment");
    eval->add_option("algebra", s1)->required();
    eval->add_option("formula", s2)->required();
    eval->add_option("--assign", s3, "x=1,y=0");
    wire(eval, [&] { return cmd_eval(ctx, s1, s2, s3); });

    auto* hier = app.add_subcommand("hierarchy", "substructural hierarchy classification");
    hier->add_option("formula", s1)->required();
    wire(hier, [&] { return cmd_hierarchy(ctx, s1); });

    auto* conuclear = app.add_subcommand("conuclear", "detect conuclear equations");
    conuclear->add_option("equation", s1, "t -> u = 1")->required();
    wire(conuclear, [&] { return cmd_conuclear(ctx, s1); });

    auto* sequent = app.add_subcommand("sequent", "consequence and local deduction");
    sequent->add_option("algebra", s1)->required();
    sequent->add_option("sequent", s2, "p, q |- r")->required();
    sequent->add_option("--kmax", kmax, "largest k to try");
    wire(sequent, [&] { return cmd_sequent(ctx, s1, s2, kmax); });

    auto* valid = app.add_subcommand("valid", "validity of a formula in a frame");
    valid->add_option("frame", s1)->required();
    valid->add_option("formula", s2)->required();
    wire(valid, [&] { return cmd_valid(ctx, s1, s2); });

    auto* cm = app.add_subcommand("countermodel", "search frames for a countermodel");
    cm->add_option("formula", s1)->required();
    wire(cm, [&] { return cmd_countermodel(ctx, s1); });

    auto* kripke = app.add_subcommand("kripke", "forcing over up-set valuations");
    kripke->add_option("frame", s1)->required();
    kripke->add_option("formula", s2)->required();
    kripke->add_option("--upset", list1, "p=a,b (repeatable)");
    wire(kripke, [&] { return cmd_kripke(ctx, s1, s2, list1); });

    auto* teval = app.add_subcommand("temporal-eval", "evaluate in the temporal-flow semantics");
    teval->add_option("frame", s1)->required();
    teval->add_option("formula", s2)->required();
    teval->add_option("--assign", s3, "p@node=1/2, comma-separated");
    teval->add_option("--node", s4, "report a single node");
    wire(teval, [&] { return cmd_temporal_eval(ctx, s1, s2, s3, s4); });

    auto* tcross = app.add_subcommand("temporal-crosscheck",
                                      "compare temporal evaluation with forcing");
    tcross->add_option("frame", s1)->required();
    tcross->add_option("formula", s2)->required();
    wire(tcross, [&] { return cmd_temporal_crosscheck(ctx, s1, s2); });

    auto* suite = app.add_subcommand("soundness-suite", "soundness instances over generated frames");
    wire(suite, [&] { return cmd_soundness_suite(ctx); });

    // global flags may appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("rlkit");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal consistency error: " << e.what() << "\n";
        return 3;
    } catch (const format_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const size_error& e) {
        err << "size error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        err << "precondition error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}

}  // namespace rlkit
