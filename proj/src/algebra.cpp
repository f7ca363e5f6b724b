#include "rlkit/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace rlkit {

// ---------------------------------------------------------------------------
// Validation.

namespace {

void check_shape(const Algebra& a) {
    if (a.n < 1) throw format_error("carrier must be nonempty");
    const std::size_t nn = static_cast<std::size_t>(a.n) * a.n;
    for (const auto* t : {&a.meet_t, &a.join_t, &a.prod_t, &a.impl_t}) {
        if (t->size() != nn) throw format_error("operation table is not n x n");
        for (Element e : *t)
            if (e < 0 || e >= a.n) throw format_error("table entry out of range");
    }
    if (!a.in_range(a.bottom) || !a.in_range(a.top))
        throw format_error("bottom/top index out of range");
}

bool forall_residuation(const Algebra& a, std::vector<Element>* w) {
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            for (Element z = 0; z < a.n; ++z)
                if (a.leq(a.prod(x, y), z) != a.leq(x, a.impl(y, z))) {
                    if (w) *w = {x, y, z};
                    return false;
                }
    return true;
}

bool equations_residuation(const Algebra& a, std::string* which, std::vector<Element>* w) {
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            for (Element z = 0; z < a.n; ++z) {
                if (a.prod(x, a.join(y, z)) != a.join(a.prod(x, y), a.prod(x, z))) {
                    if (which) *which = "x(y|z) = xy | xz";
                    if (w) *w = {x, y, z};
                    return false;
                }
                if (a.impl(x, a.meet(y, z)) != a.meet(a.impl(x, y), a.impl(x, z))) {
                    if (which) *which = "x->(y&z) = (x->y) & (x->z)";
                    if (w) *w = {x, y, z};
                    return false;
                }
            }
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y) {
            if (a.join(a.prod(x, a.impl(x, y)), y) != y) {
                if (which) *which = "(x(x->y)) | y = y";
                if (w) *w = {x, y};
                return false;
            }
            if (a.meet(a.impl(x, a.prod(x, y)), y) != y) {
                if (which) *which = "(x->(xy)) & y = y";
                if (w) *w = {x, y};
                return false;
            }
        }
    return true;
}

}  // namespace

ValidationReport validate_algebra(const Algebra& a) {
    check_shape(a);
    ValidationReport r;
    auto fail = [&](const std::string& axiom, std::vector<Element> w) {
        r.ok = false;
        r.axiom = axiom;
        r.witness = std::move(w);
        return r;
    };

    // bounded lattice
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y) {
            if (a.meet(x, y) != a.meet(y, x)) return fail("meet-commutativity", {x, y});
            if (a.join(x, y) != a.join(y, x)) return fail("join-commutativity", {x, y});
        }
    for (Element x = 0; x < a.n; ++x) {
        if (a.meet(x, x) != x) return fail("meet-idempotence", {x});
        if (a.join(x, x) != x) return fail("join-idempotence", {x});
    }
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y) {
            if (a.meet(x, a.join(x, y)) != x) return fail("meet-absorption", {x, y});
            if (a.join(x, a.meet(x, y)) != x) return fail("join-absorption", {x, y});
        }
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            for (Element z = 0; z < a.n; ++z) {
                if (a.meet(a.meet(x, y), z) != a.meet(x, a.meet(y, z)))
                    return fail("meet-associativity", {x, y, z});
                if (a.join(a.join(x, y), z) != a.join(x, a.join(y, z)))
                    return fail("join-associativity", {x, y, z});
            }
    for (Element x = 0; x < a.n; ++x) {
        if (a.meet(x, a.bottom) != a.bottom) return fail("bottom-least", {x});
        if (a.join(x, a.top) != a.top) return fail("top-greatest", {x});
    }

    // commutative monoid with unit 1 = top
    for (Element x = 0; x < a.n; ++x)
        if (a.prod(x, a.top) != x) return fail("monoid-unit", {x});
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            if (a.prod(x, y) != a.prod(y, x)) return fail("prod-commutativity", {x, y});
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            for (Element z = 0; z < a.n; ++z)
                if (a.prod(a.prod(x, y), z) != a.prod(x, a.prod(y, z)))
                    return fail("prod-associativity", {x, y, z});

    // residuation, two routes
    r.reached_residuation = true;
    std::vector<Element> w1, w2;
    std::string which;
    r.residuation_forall = forall_residuation(a, &w1);
    r.residuation_equations = equations_residuation(a, &which, &w2);
    if (r.residuation_forall != r.residuation_equations)
        throw internal_error("residuation biconditional and four-equation check disagree");
    if (!r.residuation_forall) {
        r.ok = false;
        r.axiom = "residuation";
        r.witness = w1;
        r.detail = "equation route: " + which;
    }
    return r;
}

Algebra lukasiewicz_chain(int k) {
    if (k < 2) throw precondition_error("Lukasiewicz chain requires k >= 2");
    Algebra a;
    a.n = k;
    a.bottom = 0;
    a.top = k - 1;
    a.meet_t.resize(k * k);
    a.join_t.resize(k * k);
    a.prod_t.resize(k * k);
    a.impl_t.resize(k * k);
    for (Element i = 0; i < k; ++i)
        for (Element j = 0; j < k; ++j) {
            a.meet_t[i * k + j] = std::min(i, j);
            a.join_t[i * k + j] = std::max(i, j);
            a.prod_t[i * k + j] = std::max(0, i + j - (k - 1));
            a.impl_t[i * k + j] = std::min(k - 1, k - 1 - i + j);
        }
    return a;
}

// ---------------------------------------------------------------------------
// Term evaluation and equation checking.

Element evaluate_term(const Algebra& a, const std::map<std::string, Element>& assignment,
                      const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = assignment.find(t->var);
            if (it == assignment.end())
                throw precondition_error("unassigned variable '" + t->var + "'");
            if (!a.in_range(it->second))
                throw precondition_error("assignment for '" + t->var + "' out of range");
            return it->second;
        }
        case TermKind::Zero: return a.bottom;
        case TermKind::One: return a.top;
        case TermKind::Meet:
            return a.meet(evaluate_term(a, assignment, t->lhs), evaluate_term(a, assignment, t->rhs));
        case TermKind::Join:
            return a.join(evaluate_term(a, assignment, t->lhs), evaluate_term(a, assignment, t->rhs));
        case TermKind::Prod:
            return a.prod(evaluate_term(a, assignment, t->lhs), evaluate_term(a, assignment, t->rhs));
        case TermKind::Impl:
            return a.impl(evaluate_term(a, assignment, t->lhs), evaluate_term(a, assignment, t->rhs));
    }
    throw internal_error("unreachable term kind");
}

namespace {

Element eval_indexed(const Algebra& a, const std::vector<Element>& values, const TermPtr& t,
                     const std::vector<std::string>& vars) {
    switch (t->kind) {
        case TermKind::Var: {
            auto it = std::lower_bound(vars.begin(), vars.end(), t->var);
            return values[it - vars.begin()];
        }
        case TermKind::Zero: return a.bottom;
        case TermKind::One: return a.top;
        case TermKind::Meet:
            return a.meet(eval_indexed(a, values, t->lhs, vars), eval_indexed(a, values, t->rhs, vars));
        case TermKind::Join:
            return a.join(eval_indexed(a, values, t->lhs, vars), eval_indexed(a, values, t->rhs, vars));
        case TermKind::Prod:
            return a.prod(eval_indexed(a, values, t->lhs, vars), eval_indexed(a, values, t->rhs, vars));
        case TermKind::Impl:
            return a.impl(eval_indexed(a, values, t->lhs, vars), eval_indexed(a, values, t->rhs, vars));
    }
    throw internal_error("unreachable term kind");
}

std::vector<std::string> equation_vars(const Equation& eq) {
    std::vector<std::string> vars = free_vars(eq.lhs);
    for (auto& v : free_vars(eq.rhs))
        if (!std::binary_search(vars.begin(), vars.end(), v)) vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    return vars;
}

}  // namespace

EquationResult check_equation(const Algebra& a, const Equation& eq, const Caps& caps) {
    const std::vector<std::string> vars = equation_vars(eq);
    long long total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        total *= a.n;
        if (total > caps.assignments)
            throw size_error("equation check exceeds the assignment cap");
    }
    std::vector<Element> values(vars.size(), 0);
    // odometer with the last variable fastest: the first variable is most
    // significant, so counterexamples come in ascending assignment index
    for (long long idx = 0; idx < total; ++idx) {
        const Element l = eval_indexed(a, values, eq.lhs, vars);
        const Element r = eval_indexed(a, values, eq.rhs, vars);
        const bool holds = eq.is_leq ? a.leq(l, r) : l == r;
        if (!holds) {
            EquationResult res;
            res.valid = false;
            res.counter = CounterAssignment{vars, values};
            return res;
        }
        for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i) {
            if (++values[i] < a.n) break;
            values[i] = 0;
        }
    }
    return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Classification.

Classification classify(const Algebra& a) {
    Classification c;
    bool divisible = true, prelinear = true, involutive = true, chain = true;
    for (Element x = 0; x < a.n && (divisible || prelinear || chain); ++x)
        for (Element y = 0; y < a.n; ++y) {
            if (a.prod(x, a.impl(x, y)) != a.meet(x, y)) divisible = false;
            if (a.join(a.impl(x, y), a.impl(y, x)) != a.top) prelinear = false;
            if (!a.leq(x, y) && !a.leq(y, x)) chain = false;
        }
    for (Element x = 0; x < a.n; ++x)
        if (a.impl(a.impl(x, a.bottom), a.bottom) != x) involutive = false;

    // every finite residuated lattice is almost finite: powers of each
    // element stabilize within n steps
    int potency = 1;
    for (Element x = 0; x < a.n; ++x) {
        Element pw = x;
        int m = 1;
        while (a.prod(pw, x) != pw) {
            pw = a.prod(pw, x);
            ++m;
        }
        potency = std::max(potency, m);
    }

    c.is_gbl = divisible;
    c.is_bl = divisible && prelinear;
    c.is_heyting = divisible && potency == 1;
    c.is_godel = c.is_heyting && prelinear;
    c.is_mv = c.is_bl && involutive;
    c.is_boolean = c.is_heyting && involutive;
    c.is_chain = chain;
    c.potency = potency;
    return c;
}

// ---------------------------------------------------------------------------
// Products, subalgebras, morphisms.

std::vector<Element> product_tuple(const std::vector<Algebra>& factors, long long index) {
    std::vector<Element> tuple(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
        tuple[i] = static_cast<Element>(index % factors[i].n);
        index /= factors[i].n;
    }
    return tuple;
}

long long product_index(const std::vector<Algebra>& factors, const std::vector<Element>& tuple) {
    long long idx = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i].n + tuple[i];
    return idx;
}

Algebra direct_product(const std::vector<Algebra>& factors, const Caps& caps) {
    if (factors.empty()) throw precondition_error("direct product of an empty family");
    long long size = 1;
    for (const Algebra& f : factors) {
        size *= f.n;
        if (size > caps.carrier) throw size_error("product carrier exceeds the size cap");
    }
    const int n = static_cast<int>(size);
    Algebra p;
    p.n = n;
    p.meet_t.resize(static_cast<std::size_t>(n) * n);
    p.join_t.resize(static_cast<std::size_t>(n) * n);
    p.prod_t.resize(static_cast<std::size_t>(n) * n);
    p.impl_t.resize(static_cast<std::size_t>(n) * n);
    std::vector<std::vector<Element>> tuples(n);
    for (int i = 0; i < n; ++i) tuples[i] = product_tuple(factors, i);
    std::vector<Element> tmp(factors.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::size_t cell = static_cast<std::size_t>(i) * n + j;
            for (std::size_t k = 0; k < factors.size(); ++k)
                tmp[k] = factors[k].meet(tuples[i][k], tuples[j][k]);
            p.meet_t[cell] = static_cast<Element>(product_index(factors, tmp));
            for (std::size_t k = 0; k < factors.size(); ++k)
                tmp[k] = factors[k].join(tuples[i][k], tuples[j][k]);
            p.join_t[cell] = static_cast<Element>(product_index(factors, tmp));
            for (std::size_t k = 0; k < factors.size(); ++k)
                tmp[k] = factors[k].prod(tuples[i][k], tuples[j][k]);
            p.prod_t[cell] = static_cast<Element>(product_index(factors, tmp));
            for (std::size_t k = 0; k < factors.size(); ++k)
                tmp[k] = factors[k].impl(tuples[i][k], tuples[j][k]);
            p.impl_t[cell] = static_cast<Element>(product_index(factors, tmp));
        }
    for (std::size_t k = 0; k < factors.size(); ++k) tmp[k] = factors[k].bottom;
    p.bottom = static_cast<Element>(product_index(factors, tmp));
    for (std::size_t k = 0; k < factors.size(); ++k) tmp[k] = factors[k].top;
    p.top = static_cast<Element>(product_index(factors, tmp));
    return p;
}

SubalgebraResult generated_subalgebra(const Algebra& a, const std::vector<Element>& seed) {
    std::vector<bool> in(a.n, false);
    std::vector<Element> work;
    auto add = [&](Element e) {
        if (!in[e]) {
            in[e] = true;
            work.push_back(e);
        }
    };
    add(a.bottom);
    add(a.top);
    for (Element e : seed) {
        if (!a.in_range(e)) throw precondition_error("seed element out of range");
        add(e);
    }
    for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const Element x = work[i], y = work[j];
            for (Element r : {a.meet(x, y), a.join(x, y), a.prod(x, y), a.impl(x, y), a.impl(y, x)})
                add(r);
        }
    std::vector<Element> elements;
    for (Element e = 0; e < a.n; ++e)
        if (in[e]) elements.push_back(e);

    std::vector<int> rank(a.n, -1);
    for (std::size_t i = 0; i < elements.size(); ++i) rank[elements[i]] = static_cast<int>(i);
    const int m = static_cast<int>(elements.size());
    Algebra sub;
    sub.n = m;
    sub.meet_t.resize(static_cast<std::size_t>(m) * m);
    sub.join_t.resize(static_cast<std::size_t>(m) * m);
    sub.prod_t.resize(static_cast<std::size_t>(m) * m);
    sub.impl_t.resize(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::size_t cell = static_cast<std::size_t>(i) * m + j;
            sub.meet_t[cell] = rank[a.meet(elements[i], elements[j])];
            sub.join_t[cell] = rank[a.join(elements[i], elements[j])];
            sub.prod_t[cell] = rank[a.prod(elements[i], elements[j])];
            sub.impl_t[cell] = rank[a.impl(elements[i], elements[j])];
        }
    sub.bottom = rank[a.bottom];
    sub.top = rank[a.top];
    return {std::move(elements), std::move(sub)};
}

namespace {

std::vector<int> order_heights(const Algebra& a) {
    // height(x) = length of the longest chain from bottom up to x
    std::vector<int> h(a.n, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (Element x = 0; x < a.n; ++x)
            for (Element y = 0; y < a.n; ++y)
                if (x != y && a.leq(x, y) && h[y] < h[x] + 1) {
                    h[y] = h[x] + 1;
                    changed = true;
                }
    }
    return h;
}

struct MorphismSearcher {
    const Algebra& a;
    const Algebra& b;
    MorphismMode mode;
    std::vector<Element> map;    // a.n entries, -1 = unassigned
    std::vector<bool> used;      // image elements taken (Embedding/Isomorphism)
    std::vector<int> ha, hb;

    bool consistent(Element last) const {
        // recheck pairs involving the new element, plus pairs whose operation
        // result is the new element (its image just became known)
        for (Element x = 0; x < a.n; ++x) {
            if (map[x] < 0) continue;
            for (Element y = 0; y < a.n; ++y) {
                if (map[y] < 0) continue;
                const bool involves = x == last || y == last;
                for (int op = 0; op < 4; ++op) {
                    Element r, rb;
                    switch (op) {
                        case 0: r = a.meet(x, y); rb = b.meet(map[x], map[y]); break;
                        case 1: r = a.join(x, y); rb = b.join(map[x], map[y]); break;
                        case 2: r = a.prod(x, y); rb = b.prod(map[x], map[y]); break;
                        default: r = a.impl(x, y); rb = b.impl(map[x], map[y]); break;
                    }
                    if (!involves && r != last) continue;
                    if (map[r] >= 0 && map[r] != rb) return false;
                }
            }
        }
        return true;
    }

    bool feasible(Element x, Element img) const {
        if (x == a.bottom && img != b.bottom) return false;
        if (x == a.top && img != b.top) return false;
        if (img == b.bottom && x != a.bottom && mode != MorphismMode::Hom) return false;
        if (img == b.top && x != a.top && mode != MorphismMode::Hom) return false;
        if (mode == MorphismMode::Embedding && hb[img] < ha[x]) return false;
        if (mode == MorphismMode::Isomorphism && hb[img] != ha[x]) return false;
        // order compatibility against already assigned elements
        for (Element y = 0; y < a.n; ++y) {
            if (map[y] < 0) continue;
            if (a.leq(x, y) && !b.leq(img, map[y])) return false;
            if (a.leq(y, x) && !b.leq(map[y], img)) return false;
            if (mode != MorphismMode::Hom) {
                if (!a.leq(x, y) && b.leq(img, map[y])) return false;
                if (!a.leq(y, x) && b.leq(map[y], img)) return false;
            }
        }
        return true;
    }

    bool search(Element x) {
        if (x == a.n) return true;
        for (Element img = 0; img < b.n; ++img) {
            if (mode != MorphismMode::Hom && used[img]) continue;
            if (!feasible(x, img)) continue;
            map[x] = img;
            if (mode != MorphismMode::Hom) used[img] = true;
            if (consistent(x) && search(x + 1)) return true;
            map[x] = -1;
            if (mode != MorphismMode::Hom) used[img] = false;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Element>> morphism_search(const Algebra& a, const Algebra& b,
                                                    MorphismMode mode, const Caps& caps) {
    if (a.n > caps.carrier || b.n > caps.carrier)
        throw size_error("morphism search exceeds the size cap");
    if (mode == MorphismMode::Embedding && a.n > b.n) return std::nullopt;
    if (mode == MorphismMode::Isomorphism && a.n != b.n) return std::nullopt;
    MorphismSearcher s{a, b, mode, std::vector<Element>(a.n, -1),
                       std::vector<bool>(b.n, false), order_heights(a), order_heights(b)};
    if (!s.search(0)) return std::nullopt;
    return s.map;
}

// ---------------------------------------------------------------------------
// Conuclei.

ConucleusReport is_conucleus(const Algebra& a, const std::vector<Element>& sigma) {
    if (static_cast<int>(sigma.size()) != a.n)
        throw format_error("conucleus map must be total on the carrier");
    for (Element e : sigma)
        if (!a.in_range(e)) throw format_error("conucleus map entry out of range");
    ConucleusReport r;
    auto fail = [&](const std::string& cond, std::vector<Element> w) {
        r.ok = false;
        r.condition = cond;
        r.witness = std::move(w);
        return r;
    };
    for (Element x = 0; x < a.n; ++x)
        if (!a.leq(sigma[x], x)) return fail("deflationary: sigma(x) <= x", {x});
    for (Element x = 0; x < a.n; ++x)
        if (sigma[sigma[x]] != sigma[x]) return fail("idempotent: sigma(sigma(x)) = sigma(x)", {x});
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            if (a.leq(x, y) && !a.leq(sigma[x], sigma[y]))
                return fail("monotone: x <= y implies sigma(x) <= sigma(y)", {x, y});
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y)
            if (!a.leq(a.prod(sigma[x], sigma[y]), sigma[a.prod(x, y)]))
                return fail("submultiplicative: sigma(x)sigma(y) <= sigma(xy)", {x, y});
    for (Element x = 0; x < a.n; ++x)
        if (a.prod(sigma[a.top], sigma[x]) != sigma[x])
            return fail("unit: sigma(1)sigma(x) = sigma(x)", {x});
    return r;
}

ConuclearImage conuclear_image(const Algebra& a, const std::vector<Element>& sigma) {
    const ConucleusReport rep = is_conucleus(a, sigma);
    if (!rep.ok)
        throw precondition_error("map is not a conucleus; violates " + rep.condition);
    std::vector<Element> fix;
    std::vector<int> rank(a.n, -1);
    for (Element x = 0; x < a.n; ++x)
        if (sigma[x] == x) {
            rank[x] = static_cast<int>(fix.size());
            fix.push_back(x);
        }
    const int m = static_cast<int>(fix.size());
    Algebra img;
    img.n = m;
    img.meet_t.resize(static_cast<std::size_t>(m) * m);
    img.join_t.resize(static_cast<std::size_t>(m) * m);
    img.prod_t.resize(static_cast<std::size_t>(m) * m);
    img.impl_t.resize(static_cast<std::size_t>(m) * m);
    auto fix_rank = [&](Element e) {
        if (rank[e] < 0) throw internal_error("conuclear image not closed under an operation");
        return rank[e];
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::size_t cell = static_cast<std::size_t>(i) * m + j;
            img.meet_t[cell] = fix_rank(sigma[a.meet(fix[i], fix[j])]);
            img.impl_t[cell] = fix_rank(sigma[a.impl(fix[i], fix[j])]);
            img.join_t[cell] = fix_rank(a.join(fix[i], fix[j]));
            img.prod_t[cell] = fix_rank(a.prod(fix[i], fix[j]));
        }
    img.bottom = fix_rank(a.bottom);
    img.top = fix_rank(sigma[a.top]);
    const ValidationReport v = validate_algebra(img);
    if (!v.ok)
        throw internal_error("conuclear image fails validation: " + v.axiom);
    return {std::move(fix), std::move(img)};
}

// ---------------------------------------------------------------------------
// Sequents.

SequentResult sequent_consequence(const Algebra& a, const Sequent& s, int k_max,
                                  const Caps& caps) {
    if (k_max < 0) throw precondition_error("k_max must be nonnegative");

    // direct truth preservation over all assignments
    std::vector<std::string> vars;
    {
        std::set<std::string> vs;
        auto grab = [&](const TermPtr& t) {
            for (auto& v : free_vars(t)) vs.insert(v);
        };
        for (auto& p : s.premises) grab(p);
        grab(s.conclusion);
        vars.assign(vs.begin(), vs.end());
    }
    long long total = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        total *= a.n;
        if (total > caps.assignments)
            throw size_error("sequent check exceeds the assignment cap");
    }
    bool direct = true;
    std::vector<Element> values(vars.size(), 0);
    for (long long idx = 0; idx < total && direct; ++idx) {
        bool all_top = true;
        for (const auto& p : s.premises)
            if (eval_indexed(a, values, p, vars) != a.top) {
                all_top = false;
                break;
            }
        if (all_top && eval_indexed(a, values, s.conclusion, vars) != a.top) direct = false;
        for (int i = static_cast<int>(values.size()) - 1; i >= 0; --i) {
            if (++values[i] < a.n) break;
            values[i] = 0;
        }
    }

    SequentResult out;
    out.direct = direct;
    for (int k = 0; k <= k_max; ++k) {
        TermPtr prem = tone();
        for (const auto& p : s.premises) prem = tprod(prem, tpow(p, k));
        const Equation eq{timpl(prem, s.conclusion), tone(), false};
        if (check_equation(a, eq, caps).valid) {
            out.local_deduction_k = k;
            break;
        }
    }
    if (out.local_deduction_k && !direct)
        throw internal_error("local deduction witness found for a non-consequence");
    return out;
}

}  // namespace rlkit
