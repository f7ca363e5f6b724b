#include "rlkit/semantics.hpp"

#include <algorithm>
#include <numeric>

namespace rlkit {

// ---------------------------------------------------------------------------
// Forcing.

Labeling eval_labeling(const PosetProduct& p, const Valuation& h, const TermPtr& t) {
    const Frame& f = p.frame;
    const int n = f.poset.n;
    switch (t->kind) {
        case TermKind::Var: {
            auto it = h.labeling_index.find(t->var);
            if (it == h.labeling_index.end())
                throw precondition_error("unassigned variable '" + t->var + "'");
            return p.labelings[it->second];
        }
        case TermKind::Zero: {
            Labeling out(n);
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].bottom;
            return out;
        }
        case TermKind::One: {
            Labeling out(n);
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].top;
            return out;
        }
        default: break;
    }
    const Labeling l = eval_labeling(p, h, t->lhs);
    const Labeling r = eval_labeling(p, h, t->rhs);
    Labeling out(n);
    switch (t->kind) {
        case TermKind::Meet:
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].meet(l[k], r[k]);
            return out;
        case TermKind::Join:
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].join(l[k], r[k]);
            return out;
        case TermKind::Prod:
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].prod(l[k], r[k]);
            return out;
        case TermKind::Impl:
            for (int k = 0; k < n; ++k) out[k] = f.algebras[k].impl(l[k], r[k]);
            return box_map(f, out);
        default: throw internal_error("unreachable term kind");
    }
}

bool forces(const PosetProduct& p, const Valuation& h, int node, const TermPtr& t) {
    if (node < 0 || node >= p.frame.poset.n) throw precondition_error("node out of range");
    const Labeling v = eval_labeling(p, h, t);
    return v[node] == p.frame.algebras[node].top;
}

// ---------------------------------------------------------------------------
// Frame validity.

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// checks one valuation through the forcing route and cross-checks it
// against evaluation in the product's tables
std::optional<int> refuting_node(const PosetProduct& p, const Valuation& h, const TermPtr& t) {
    const Labeling via_forcing = eval_labeling(p, h, t);
    std::map<std::string, Element> assignment;
    for (const auto& [var, idx] : h.labeling_index) assignment[var] = idx;
    const Element via_tables = evaluate_term(p.algebra, assignment, t);
    if (p.labelings[via_tables] != via_forcing)
        throw internal_error("forcing recursion disagrees with the poset product");
    for (int x = 0; x < p.frame.poset.n; ++x)
        if (via_forcing[x] != p.frame.algebras[x].top) return x;
    return std::nullopt;
}

Valuation valuation_from_counter(const CounterAssignment& c) {
    Valuation h;
    for (std::size_t i = 0; i < c.vars.size(); ++i) h.labeling_index[c.vars[i]] = c.values[i];
    return h;
}

}  // namespace

FrameValidity frame_valid(const PosetProduct& p, const TermPtr& t, const Caps& caps,
                          std::uint64_t seed) {
    const std::vector<std::string> vars = free_vars(t);
    const int m = p.algebra.n;
    const Equation eq{t, tone(), false};
    const EquationResult by_tables = check_equation(p.algebra, eq, caps);

    FrameValidity out;
    out.exhaustive = vars.size() <= 2 && m <= 25;
    if (out.exhaustive) {
        long long total = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) total *= m;
        std::vector<int> digits(vars.size(), 0);
        std::optional<Valuation> witness;
        std::optional<int> witness_node;
        for (long long i = 0; i < total; ++i) {
            Valuation h;
            for (std::size_t k = 0; k < vars.size(); ++k) h.labeling_index[vars[k]] = digits[k];
            ++out.checked;
            if (const auto node = refuting_node(p, h, t); node && !witness) {
                witness = h;
                witness_node = node;
            }
            for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
                if (++digits[k] < m) break;
                digits[k] = 0;
            }
        }
        out.valid = !witness.has_value();
        if (out.valid != by_tables.valid)
            throw internal_error("frame validity disagrees with the product equation");
        out.witness = std::move(witness);
        out.witness_node = witness_node;
        return out;
    }

    // beyond the exhaustive bounds: sample valuations pseudo-randomly; the
    // verdict comes from the equation route, which is exact
    constexpr long long kSamples = 512;
    std::uint64_t state = seed ^ 0x720d4a7e72297a1cull;
    for (long long i = 0; i < kSamples; ++i) {
        Valuation h;
        for (const auto& v : vars)
            h.labeling_index[v] = static_cast<int>(splitmix64(state) % m);
        ++out.checked;
        refuting_node(p, h, t);  // cross-checks the two routes on the sample
    }
    out.valid = by_tables.valid;
    if (!by_tables.valid) {
        const Valuation h = valuation_from_counter(*by_tables.counter);
        const auto node = refuting_node(p, h, t);
        if (!node) throw internal_error("equation counterexample does not refute the formula");
        out.witness = h;
        out.witness_node = node;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frame generation and countermodel search.

std::vector<std::pair<std::string, Frame>> generate_frames(
    int max_nodes, const std::vector<std::pair<std::string, Algebra>>& values) {
    if (values.empty()) throw precondition_error("no value algebras supplied");
    std::vector<std::pair<std::string, Frame>> out;
    for (const Poset& poset : enumerate_posets(max_nodes)) {
        std::string pdesc = "poset{";
        bool first = true;
        for (auto [i, j] : poset.cover_edges()) {
            if (!first) pdesc += ",";
            pdesc += poset.names[i] + "<" + poset.names[j];
            first = false;
        }
        pdesc += "}";
        if (first) pdesc = "antichain(" + std::to_string(poset.n) + ")";

        // all assignments of value algebras to nodes, leftmost node most
        // significant
        std::vector<int> pick(poset.n, 0);
        const long long total = [&] {
            long long t = 1;
            for (int i = 0; i < poset.n; ++i) t *= static_cast<long long>(values.size());
            return t;
        }();
        for (long long i = 0; i < total; ++i) {
            Frame f;
            f.poset = poset;
            std::string desc = pdesc + "/";
            for (int k = 0; k < poset.n; ++k) {
                f.algebras.push_back(values[pick[k]].second);
                if (k) desc += ",";
                desc += values[pick[k]].first;
            }
            out.emplace_back(std::move(desc), std::move(f));
            for (int k = poset.n - 1; k >= 0; --k) {
                if (++pick[k] < static_cast<int>(values.size())) break;
                pick[k] = 0;
            }
        }
    }
    return out;
}

CountermodelResult countermodel_search(const TermPtr& t, int max_nodes,
                                       const std::vector<std::pair<std::string, Algebra>>& values,
                                       const Caps& caps, std::uint64_t seed) {
    CountermodelResult out;
    for (auto& [desc, frame] : generate_frames(max_nodes, values)) {
        ++out.frames_checked;
        const PosetProduct p = build_poset_product(frame, caps);
        const FrameValidity fv = frame_valid(p, t, caps, seed);
        if (fv.valid) continue;
        if (!fv.witness || !fv.witness_node)
            throw internal_error("invalid frame without a witness");
        if (forces(p, *fv.witness, *fv.witness_node, t))
            throw internal_error("countermodel witness does not refute the formula");
        out.found = true;
        out.frame = frame;
        out.witness = fv.witness;
        out.witness_node = *fv.witness_node;
        out.frame_desc = desc;
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Kripke bridge.

namespace {

void require_two_valued(const Frame& f) {
    for (const Algebra& a : f.algebras)
        if (a.n != 2) throw precondition_error("frame is not valued in the two-element algebra");
}

}  // namespace

Valuation valuation_of_upsets(const PosetProduct& p,
                              const std::map<std::string, std::set<int>>& upsets) {
    require_two_valued(p.frame);
    Valuation h;
    for (const auto& [var, up] : upsets) {
        std::vector<int> nodes(up.begin(), up.end());
        for (int x : nodes)
            if (x < 0 || x >= p.frame.poset.n) throw precondition_error("up-set node out of range");
        if (!is_upset(p.frame.poset, nodes).holds)
            throw precondition_error("set for '" + var + "' is not an up-set");
        Labeling g(p.frame.poset.n);
        for (int x = 0; x < p.frame.poset.n; ++x)
            g[x] = up.count(x) ? p.frame.algebras[x].top : p.frame.algebras[x].bottom;
        const int idx = p.index_of(g);
        if (idx < 0) throw internal_error("up-set indicator is not an ac-labeling");
        h.labeling_index[var] = idx;
    }
    return h;
}

std::map<std::string, std::set<int>> upsets_of_valuation(const PosetProduct& p,
                                                         const Valuation& h) {
    require_two_valued(p.frame);
    std::map<std::string, std::set<int>> out;
    for (const auto& [var, idx] : h.labeling_index) {
        std::set<int> up;
        const Labeling& g = p.labelings[idx];
        for (int x = 0; x < p.frame.poset.n; ++x)
            if (g[x] == p.frame.algebras[x].top) up.insert(x);
        out[var] = std::move(up);
    }
    return out;
}

bool kripke_forces(const Poset& poset, const std::map<std::string, std::set<int>>& upsets,
                   int node, const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = upsets.find(t->var);
            if (it == upsets.end())
                throw precondition_error("unassigned variable '" + t->var + "'");
            return it->second.count(node) != 0;
        }
        case TermKind::Zero: return false;
        case TermKind::One: return true;
        case TermKind::Meet:
        case TermKind::Prod:  // product collapses to meet on two-element factors
            return kripke_forces(poset, upsets, node, t->lhs) &&
                   kripke_forces(poset, upsets, node, t->rhs);
        case TermKind::Join:
            return kripke_forces(poset, upsets, node, t->lhs) ||
                   kripke_forces(poset, upsets, node, t->rhs);
        case TermKind::Impl:
            for (int y = 0; y < poset.n; ++y)
                if (poset.leq(node, y) && kripke_forces(poset, upsets, y, t->lhs) &&
                    !kripke_forces(poset, upsets, y, t->rhs))
                    return false;
            return true;
    }
    throw internal_error("unreachable term kind");
}

// ---------------------------------------------------------------------------
// Temporal flows.

Rational Rational::of(long long n, long long d) {
    if (d <= 0) throw precondition_error("rational denominator must be positive");
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return {g ? n / g : n, g ? d / g : d};
}

bool rat_leq(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }

Rational rat_prod(const Rational& a, const Rational& b) {
    // max(0, a + b - 1)
    const long long den = a.den * b.den;
    const long long num = a.num * b.den + b.num * a.den - den;
    return num <= 0 ? Rational{0, 1} : Rational::of(num, den);
}

Rational rat_impl(const Rational& a, const Rational& b) {
    // min(1, 1 - a + b)
    const long long den = a.den * b.den;
    const long long num = den - a.num * b.den + b.num * a.den;
    return num >= den ? Rational{1, 1} : Rational::of(num, den);
}

std::string to_string(const Rational& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

void validate_temporal_assignment(const TemporalFlow& flow, const TemporalAssignment& v) {
    const Poset& p = flow.poset;
    for (int x = 0; x < p.n; ++x)
        if (flow.chain_size[x] < 2)
            throw precondition_error("temporal flow labels must be at least 2");
    const Rational zero{0, 1}, one{1, 1};
    for (const auto& [var, vals] : v.values) {
        if (static_cast<int>(vals.size()) != p.n)
            throw precondition_error("temporal assignment has wrong arity for '" + var + "'");
        for (int x = 0; x < p.n; ++x) {
            // value must lie in the chain of size L(x): an integer multiple
            // of 1/(L(x)-1) within [0, 1]
            const long long d = flow.chain_size[x] - 1;
            const Rational& r = vals[x];
            if (!rat_leq(zero, r) || !rat_leq(r, one) || (r.num * d) % r.den != 0)
                throw precondition_error("value of '" + var + "' at " + p.names[x] +
                                         " is outside the node's chain");
        }
        for (int x = 0; x < p.n; ++x)
            for (int y = 0; y < p.n; ++y)
                if (p.lt(x, y) && !rat_leq(vals[x], vals[y]))
                    throw precondition_error("temporal assignment for '" + var +
                                             "' is not monotone");
        for (int x = 0; x < p.n; ++x)
            for (int y = 0; y < p.n; ++y) {
                if (x == y || (!p.lt(x, y) && !p.lt(y, x))) continue;
                const bool xin = !(vals[x] == zero) && !(vals[x] == one);
                const bool yin = !(vals[y] == zero) && !(vals[y] == one);
                if (xin && yin)
                    throw precondition_error("temporal assignment for '" + var +
                                             "' has comparable interior values");
            }
    }
}

namespace {

std::vector<Rational> temporal_values(const TemporalFlow& flow, const TemporalAssignment& v,
                                      const TermPtr& t) {
    const Poset& p = flow.poset;
    std::vector<Rational> out(p.n);
    const Rational zero{0, 1}, one{1, 1};
    switch (t->kind) {
        case TermKind::Var: {
            auto it = v.values.find(t->var);
            if (it == v.values.end())
                throw precondition_error("unassigned variable '" + t->var + "'");
            return it->second;
        }
        case TermKind::Zero: return std::vector<Rational>(p.n, zero);
        case TermKind::Meet:
        case TermKind::Join:
        case TermKind::One:
            throw precondition_error(
                "temporal semantics covers only the {*, ->, 0} fragment");
        case TermKind::Prod: {
            const auto l = temporal_values(flow, v, t->lhs);
            const auto r = temporal_values(flow, v, t->rhs);
            for (int x = 0; x < p.n; ++x) out[x] = rat_prod(l[x], r[x]);
            return out;
        }
        case TermKind::Impl: {
            const auto l = temporal_values(flow, v, t->lhs);
            const auto r = temporal_values(flow, v, t->rhs);
            for (int x = 0; x < p.n; ++x) {
                bool below_everywhere_up = true;   // first clause
                for (int y = 0; y < p.n; ++y)
                    if (p.leq(x, y) && !rat_leq(l[y], r[y])) {
                        below_everywhere_up = false;
                        break;
                    }
                if (below_everywhere_up) {
                    out[x] = one;
                    continue;
                }
                bool second = rat_leq(r[x], l[x]) && !(r[x] == l[x]) && !(l[x] == one);
                if (second)
                    for (int y = 0; y < p.n; ++y)
                        if (p.lt(x, y) && !(r[y] == one)) {
                            second = false;
                            break;
                        }
                out[x] = second ? rat_impl(l[x], r[x]) : r[x];
            }
            return out;
        }
    }
    throw internal_error("unreachable term kind");
}

}  // namespace

Rational temporal_eval(const TemporalFlow& flow, const TemporalAssignment& v, int node,
                       const TermPtr& t) {
    if (node < 0 || node >= flow.poset.n) throw precondition_error("node out of range");
    validate_temporal_assignment(flow, v);
    return temporal_values(flow, v, t)[node];
}

TemporalFlow flow_of_frame(const Frame& f) {
    TemporalFlow flow;
    flow.poset = f.poset;
    for (int x = 0; x < f.poset.n; ++x) {
        const Algebra& a = f.algebras[x];
        if (a != lukasiewicz_chain(a.n))
            throw precondition_error("node '" + f.poset.names[x] +
                                     "' does not carry a Lukasiewicz chain");
        flow.chain_size.push_back(a.n);
    }
    return flow;
}

CrosscheckReport temporal_crosscheck(const PosetProduct& p, const Valuation& h,
                                     const TermPtr& t) {
    const TemporalFlow flow = flow_of_frame(p.frame);
    TemporalAssignment v;
    for (const auto& [var, idx] : h.labeling_index) {
        std::vector<Rational> vals;
        const Labeling& g = p.labelings[idx];
        for (int x = 0; x < p.frame.poset.n; ++x)
            vals.push_back(Rational::of(g[x], flow.chain_size[x] - 1));
        v.values[var] = std::move(vals);
    }
    validate_temporal_assignment(flow, v);

    const Labeling algebraic = eval_labeling(p, h, t);
    const std::vector<Rational> temporal = [&] {
        std::vector<Rational> out(p.frame.poset.n);
        for (int x = 0; x < p.frame.poset.n; ++x) out[x] = temporal_eval(flow, v, x, t);
        return out;
    }();

    CrosscheckReport rep;
    for (int x = 0; x < p.frame.poset.n; ++x) {
        const Rational alg = Rational::of(algebraic[x], flow.chain_size[x] - 1);
        rep.lines.push_back(p.frame.poset.names[x] + ": forcing " + to_string(alg) +
                            ", temporal " + to_string(temporal[x]));
        if (!(alg == temporal[x])) rep.agree = false;
    }
    if (!rep.agree)
        throw internal_error("temporal evaluation disagrees with forcing");
    return rep;
}

// ---------------------------------------------------------------------------
// Axiom list and soundness suite.

const std::vector<Axiom>& axiom_list() {
    static const std::vector<Axiom> axioms = [] {
        auto mk = [](std::string name, std::string text, AxiomClass cls) {
            return Axiom{std::move(name), text, parse_term(text), cls};
        };
        return std::vector<Axiom>{
            mk("divisibility", "(x * (x -> y)) <-> (x & y)", AxiomClass::Gbl),
            mk("prelinearity", "(x -> y) | (y -> x)", AxiomClass::Bl),
            mk("idempotence", "(x * x) <-> x", AxiomClass::Ha),
            mk("potency2", "(x * x * x) <-> (x * x)", AxiomClass::Potency2),
            mk("potency3", "(x * x * x * x) <-> (x * x * x)", AxiomClass::Potency3),
            mk("involution", "x <-> ((x -> 0) -> 0)", AxiomClass::None),
            mk("excluded_middle", "x | (x -> 0)", AxiomClass::None),
            mk("weak_excluded_middle", "(x -> 0) | ((x -> 0) -> 0)", AxiomClass::None),
            mk("peirce", "((x -> y) -> x) -> x", AxiomClass::None),
            mk("modus_ponens_bound", "(x * (x -> y)) -> y", AxiomClass::All),
            mk("unit_implication", "(1 -> x) <-> x", AxiomClass::All),
        };
    }();
    return axioms;
}

bool frame_matches(const Frame& f, AxiomClass cls) {
    auto mv_chains = [&](int max_size) {
        for (const Algebra& a : f.algebras) {
            if (max_size && a.n > max_size) return false;
            const Classification c = classify(a);
            if (!c.is_mv || !c.is_chain) return false;
        }
        return true;
    };
    auto two_valued = [&] {
        for (const Algebra& a : f.algebras)
            if (a.n != 2) return false;
        return true;
    };
    switch (cls) {
        case AxiomClass::All: return true;
        case AxiomClass::Gbl: return mv_chains(0);
        case AxiomClass::Bl: return is_root_system(f.poset).holds && mv_chains(0);
        case AxiomClass::Ha: return two_valued();
        case AxiomClass::Ga: return is_root_system(f.poset).holds && two_valued();
        case AxiomClass::Potency2: return mv_chains(3);
        case AxiomClass::Potency3: return mv_chains(4);
        case AxiomClass::None: return false;
    }
    return false;
}

SuiteReport soundness_instance_suite(const std::vector<std::pair<std::string, Frame>>& frames,
                                     const std::vector<Axiom>& axioms, const Caps& caps,
                                     std::uint64_t seed) {
    SuiteReport rep;
    for (const auto& [desc, frame] : frames) {
        const PosetProduct p = build_poset_product(frame, caps);
        for (const Axiom& ax : axioms) {
            SuiteEntry e;
            e.frame_desc = desc;
            e.axiom = ax.name;
            e.applicable = frame_matches(frame, ax.cls);
            if (e.applicable) {
                const FrameValidity fv = frame_valid(p, ax.formula, caps, seed);
                e.valid = fv.valid;
                ++rep.checked;
                if (!fv.valid)
                    throw internal_error("soundness instance failed: " + ax.name + " on " + desc);
            } else {
                ++rep.skipped;
            }
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace rlkit
