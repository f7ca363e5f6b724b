#include "rlkit/poset_product.hpp"

#include <algorithm>

namespace rlkit {

void validate_frame(const Frame& f) {
    if (static_cast<int>(f.algebras.size()) != f.poset.n)
        throw format_error("frame must assign exactly one algebra to each node");
    for (int x = 0; x < f.poset.n; ++x) {
        const ValidationReport r = validate_algebra(f.algebras[x]);
        if (!r.ok)
            throw format_error("algebra at node '" + f.poset.names[x] +
                               "' violates " + r.axiom);
    }
}

namespace {

void check_choice(const Frame& f, const Labeling& g) {
    if (static_cast<int>(g.size()) != f.poset.n)
        throw precondition_error("choice function has wrong arity");
    for (int x = 0; x < f.poset.n; ++x)
        if (!f.algebras[x].in_range(g[x]))
            throw precondition_error("choice function value out of range");
}

}  // namespace

Labeling box_map(const Frame& f, const Labeling& g) {
    check_choice(f, g);
    Labeling out(g.size());
    for (int x = 0; x < f.poset.n; ++x) {
        bool all_top_above = true;
        for (int y = 0; y < f.poset.n; ++y)
            if (f.poset.lt(x, y) && g[y] != f.algebras[y].top) {
                all_top_above = false;
                break;
            }
        out[x] = all_top_above ? g[x] : f.algebras[x].bottom;
    }
    return out;
}

LabelingParts labeling_parts(const Frame& f, const Labeling& g) {
    LabelingParts parts;
    for (int x = 0; x < f.poset.n; ++x) {
        if (g[x] == f.algebras[x].bottom)
            parts.zeros.push_back(x);
        else if (g[x] == f.algebras[x].top)
            parts.ones.push_back(x);
        else
            parts.support.push_back(x);
    }
    return parts;
}

bool is_ac_labeling(const Frame& f, const Labeling& g) {
    check_choice(f, g);

    const bool fixpoint = box_map(f, g) == g;

    bool pointwise = true;
    for (int x = 0; x < f.poset.n && pointwise; ++x)
        for (int y = 0; y < f.poset.n; ++y)
            if (f.poset.lt(x, y) && g[x] != f.algebras[x].bottom &&
                g[y] != f.algebras[y].top) {
                pointwise = false;
                break;
            }

    const LabelingParts parts = labeling_parts(f, g);
    const bool partition = is_antichain(f.poset, parts.support).holds &&
                           is_downset(f.poset, parts.zeros).holds &&
                           is_upset(f.poset, parts.ones).holds;

    if (fixpoint != pointwise || pointwise != partition)
        throw internal_error("antichain-labeling criteria disagree");
    return fixpoint;
}

namespace {

long long choice_count(const Frame& f, const Caps& caps) {
    long long total = 1;
    for (const Algebra& a : f.algebras) {
        total *= a.n;
        if (total > caps.carrier)
            throw size_error("frame choice-function count exceeds the size cap");
    }
    return total;
}

}  // namespace

std::vector<Labeling> enumerate_ac_labelings(const Frame& f, const Caps& caps) {
    const long long total = choice_count(f, caps);
    const std::vector<int> order = f.poset.linear_extension();
    std::vector<Labeling> out;
    Labeling g(f.poset.n, 0);
    // mixed-radix odometer over the linear extension, last position fastest
    std::vector<Element> digits(f.poset.n, 0);
    for (long long i = 0; i < total; ++i) {
        for (int k = 0; k < f.poset.n; ++k) g[order[k]] = digits[k];
        if (box_map(f, g) == g) out.push_back(g);
        for (int k = f.poset.n - 1; k >= 0; --k) {
            if (++digits[k] < f.algebras[order[k]].n) break;
            digits[k] = 0;
        }
    }
    return out;
}

bool labeling_leq(const Frame& f, const Labeling& x, const Labeling& y) {
    const LabelingParts px = labeling_parts(f, x);
    const LabelingParts py = labeling_parts(f, y);
    auto contains = [](const std::vector<int>& v, int e) {
        return std::find(v.begin(), v.end(), e) != v.end();
    };
    for (int e : py.zeros)
        if (!contains(px.zeros, e)) return false;  // L_y must lie inside L_x
    for (int e : px.ones)
        if (!contains(py.ones, e)) return false;  // U_x must lie inside U_y
    for (int e : px.support)
        if (contains(py.support, e) && !f.algebras[e].leq(x[e], y[e])) return false;
    return true;
}

int PosetProduct::index_of(const Labeling& g) const {
    auto it = index_.find(g);
    return it == index_.end() ? -1 : it->second;
}

std::vector<Element> box_on_product(const Frame& f, const Caps& caps) {
    const long long total = choice_count(f, caps);
    std::vector<Element> sigma(total);
    for (long long i = 0; i < total; ++i) {
        const std::vector<Element> tuple = product_tuple(f.algebras, i);
        sigma[i] = static_cast<Element>(product_index(f.algebras, box_map(f, tuple)));
    }
    return sigma;
}

PosetProduct build_poset_product(const Frame& f, const Caps& caps) {
    PosetProduct p;
    p.frame = f;

    if (f.poset.n == 0) {
        // empty index poset: the one-element algebra on the empty labeling
        p.labelings = {Labeling{}};
        p.index_[Labeling{}] = 0;
        Algebra one;
        one.n = 1;
        one.meet_t = one.join_t = one.prod_t = one.impl_t = {0};
        one.bottom = one.top = 0;
        p.algebra = one;
        return p;
    }

    p.labelings = enumerate_ac_labelings(f, caps);
    const int m = static_cast<int>(p.labelings.size());
    for (int i = 0; i < m; ++i) p.index_[p.labelings[i]] = i;

    auto rank_of = [&](const Labeling& g) {
        auto it = p.index_.find(g);
        if (it == p.index_.end())
            throw internal_error("pointwise operation left the ac-labelings");
        return it->second;
    };

    Algebra& alg = p.algebra;
    alg.n = m;
    alg.meet_t.resize(static_cast<std::size_t>(m) * m);
    alg.join_t.resize(static_cast<std::size_t>(m) * m);
    alg.prod_t.resize(static_cast<std::size_t>(m) * m);
    alg.impl_t.resize(static_cast<std::size_t>(m) * m);
    Labeling tmp(f.poset.n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const Labeling& x = p.labelings[i];
            const Labeling& y = p.labelings[j];
            const std::size_t cell = static_cast<std::size_t>(i) * m + j;
            for (int k = 0; k < f.poset.n; ++k) tmp[k] = f.algebras[k].meet(x[k], y[k]);
            alg.meet_t[cell] = rank_of(tmp);
            for (int k = 0; k < f.poset.n; ++k) tmp[k] = f.algebras[k].join(x[k], y[k]);
            alg.join_t[cell] = rank_of(tmp);
            for (int k = 0; k < f.poset.n; ++k) tmp[k] = f.algebras[k].prod(x[k], y[k]);
            alg.prod_t[cell] = rank_of(tmp);
            // pointwise implication first, then box; never the reverse
            for (int k = 0; k < f.poset.n; ++k) tmp[k] = f.algebras[k].impl(x[k], y[k]);
            alg.impl_t[cell] = rank_of(box_map(f, tmp));
        }
    Labeling bot(f.poset.n), top(f.poset.n);
    for (int k = 0; k < f.poset.n; ++k) {
        bot[k] = f.algebras[k].bottom;
        top[k] = f.algebras[k].top;
    }
    alg.bottom = rank_of(bot);
    alg.top = rank_of(top);

    const ValidationReport v = validate_algebra(alg);
    if (!v.ok) throw internal_error("poset product fails validation: " + v.axiom);

    // must agree, labeling for labeling, with the conuclear image of the
    // direct product under box
    const Algebra direct = direct_product(f.algebras, caps);
    const ConuclearImage img = conuclear_image(direct, box_on_product(f, caps));
    if (static_cast<int>(img.fixpoints.size()) != m)
        throw internal_error("poset product and conuclear image differ in size");
    std::vector<int> to_product(m);  // labeling rank -> image rank
    for (int i = 0; i < static_cast<int>(img.fixpoints.size()); ++i) {
        const Labeling g = product_tuple(f.algebras, img.fixpoints[i]);
        const int r = p.index_of(g);
        if (r < 0) throw internal_error("conuclear image fixpoint is not an ac-labeling");
        to_product[r] = i;
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::size_t cell = static_cast<std::size_t>(i) * m + j;
            const std::size_t icell =
                static_cast<std::size_t>(to_product[i]) * m + to_product[j];
            if (to_product[alg.meet_t[cell]] != img.algebra.meet_t[icell] ||
                to_product[alg.join_t[cell]] != img.algebra.join_t[icell] ||
                to_product[alg.prod_t[cell]] != img.algebra.prod_t[icell] ||
                to_product[alg.impl_t[cell]] != img.algebra.impl_t[icell])
                throw internal_error("poset product disagrees with the conuclear image");
        }
    if (to_product[alg.bottom] != img.algebra.bottom || to_product[alg.top] != img.algebra.top)
        throw internal_error("poset product bounds disagree with the conuclear image");
    return p;
}

PosetProduct dual_poset_product(const Frame& f, const Caps& caps) {
    Frame d{f.poset.dual(), f.algebras};
    return build_poset_product(d, caps);
}

}  // namespace rlkit
