#include "rlkit/structure.hpp"

#include <algorithm>

namespace rlkit {

ValueFrameResult value_frame(const Algebra& a, const Caps& caps) {
    const Classification cls = classify(a);
    if (!cls.is_gbl) throw precondition_error("value frame requires a GBL-algebra");
    if (a.n > caps.carrier) throw size_error("value frame exceeds the size cap");

    ValueFrameResult out;
    out.delta = values(a, caps);
    const int k = static_cast<int>(out.delta.values.size());
    for (int i = 0; i < k; ++i) {
        QuotientResult q = quotient(a, out.delta.values[i]);
        const SiReport si = si_analysis(q.algebra);
        if (!si.is_si)
            throw internal_error("quotient by a value is not subdirectly irreducible");
        const std::vector<Element> members = si.min_nontrivial_filter->members();

        // the minimal nontrivial filter carries a subalgebra: closed under
        // all four operations, with its least element as bottom and the
        // quotient top as top
        const Algebra& qa = q.algebra;
        const int m = static_cast<int>(members.size());
        std::vector<int> rank(qa.n, -1);
        for (int r = 0; r < m; ++r) rank[members[r]] = r;
        Algebra factor;
        factor.n = m;
        factor.meet_t.resize(static_cast<std::size_t>(m) * m);
        factor.join_t.resize(static_cast<std::size_t>(m) * m);
        factor.prod_t.resize(static_cast<std::size_t>(m) * m);
        factor.impl_t.resize(static_cast<std::size_t>(m) * m);
        auto in_filter = [&](Element e) {
            if (rank[e] < 0)
                throw internal_error("minimal filter not closed under an operation");
            return rank[e];
        };
        for (int i2 = 0; i2 < m; ++i2)
            for (int j2 = 0; j2 < m; ++j2) {
                const Element x = members[i2], y = members[j2];
                const std::size_t cell = static_cast<std::size_t>(i2) * m + j2;
                factor.meet_t[cell] = in_filter(qa.meet(x, y));
                factor.join_t[cell] = in_filter(qa.join(x, y));
                factor.prod_t[cell] = in_filter(qa.prod(x, y));
                factor.impl_t[cell] = in_filter(qa.impl(x, y));
            }
        Element least = members[0];
        for (Element e : members)
            if (qa.leq(e, least)) least = e;
        factor.bottom = rank[least];
        factor.top = in_filter(qa.top);
        const ValidationReport v = validate_algebra(factor);
        if (!v.ok) throw internal_error("value-frame factor fails validation: " + v.axiom);

        // each factor must be a finite simple MV-chain L_m, 2 <= m <= potency+1
        if (m < 2 || m > cls.potency + 1)
            throw internal_error("value-frame factor has impossible size");
        if (!morphism_search(factor, lukasiewicz_chain(m), MorphismMode::Isomorphism, caps))
            throw internal_error("value-frame factor is not a Lukasiewicz chain");

        out.quotients.push_back(std::move(q));
        out.factor_members.push_back(members);
        out.factors.push_back(std::move(factor));
        out.factor_chain_size.push_back(m);
    }
    out.frame = Frame{out.delta.order, out.factors};
    return out;
}

EmbeddingResult epsilon_embedding(const Algebra& a, const ValueFrameResult& vf,
                                  const PosetProduct& product) {
    const int k = static_cast<int>(vf.factors.size());
    EmbeddingResult out;
    for (Element e = 0; e < a.n; ++e) {
        Labeling eps(k);
        for (int x = 0; x < k; ++x) {
            const Element cls = vf.quotients[x].projection[e];
            const auto& members = vf.factor_members[x];
            const auto it = std::find(members.begin(), members.end(), cls);
            eps[x] = it == members.end()
                         ? vf.factors[x].bottom
                         : static_cast<Element>(it - members.begin());
        }
        if (!is_ac_labeling(vf.frame, eps))
            throw internal_error("epsilon of an element is not an ac-labeling");
        const int idx = product.index_of(eps);
        if (idx < 0) throw internal_error("epsilon image missing from the poset product");
        out.epsilon.push_back(std::move(eps));
        out.image_index.push_back(idx);
    }

    // injectivity
    for (Element x = 0; x < a.n; ++x)
        for (Element y = x + 1; y < a.n; ++y)
            if (out.image_index[x] == out.image_index[y])
                throw internal_error("epsilon is not injective");

    // homomorphism, exhaustively over all pairs and all four operations
    const Algebra& p = product.algebra;
    for (Element x = 0; x < a.n; ++x)
        for (Element y = 0; y < a.n; ++y) {
            const int fx = out.image_index[x], fy = out.image_index[y];
            if (out.image_index[a.meet(x, y)] != p.meet(fx, fy) ||
                out.image_index[a.join(x, y)] != p.join(fx, fy) ||
                out.image_index[a.prod(x, y)] != p.prod(fx, fy) ||
                out.image_index[a.impl(x, y)] != p.impl(fx, fy))
                throw internal_error("epsilon is not a homomorphism");
        }
    if (out.image_index[a.bottom] != p.bottom || out.image_index[a.top] != p.top)
        throw internal_error("epsilon does not preserve the bounds");

    out.surjective = a.n == p.n;
    return out;
}

RepresentResult represent_finite_gbl(const Algebra& a, const Caps& caps) {
    RepresentResult out{value_frame(a, caps), {}, {}, {}};
    out.product = build_poset_product(out.frame.frame, caps);
    out.embedding = epsilon_embedding(a, out.frame, out.product);
    if (out.embedding.surjective) {
        out.iso = out.embedding.image_index;  // injective onto equal carriers
        return out;
    }
    const auto found = morphism_search(a, out.product.algebra, MorphismMode::Isomorphism, caps);
    if (!found)
        throw internal_error("no isomorphism onto the poset product of the value frame");
    out.iso = *found;
    return out;
}

PreservationReport conuclear_preservation_check(const Algebra& a,
                                                const std::vector<Element>& sigma,
                                                const Equation& ineq, const Caps& caps) {
    if (!ineq.is_leq) throw precondition_error("expected an inequality t <= u");
    PreservationReport rep;
    rep.antecedent = classify_hierarchy(ineq.lhs);
    rep.consequent = classify_hierarchy(ineq.rhs);
    if (!rep.antecedent.in_p2_star)
        throw precondition_error("antecedent is not in P2*; the lemma does not apply");
    if (!rep.consequent.in_n2_star)
        throw precondition_error("consequent is not in N2*; the lemma does not apply");
    const ConucleusReport cr = is_conucleus(a, sigma);
    if (!cr.ok) throw precondition_error("map is not a conucleus; violates " + cr.condition);

    rep.base_valid = check_equation(a, ineq, caps).valid;
    const ConuclearImage img = conuclear_image(a, sigma);
    rep.image_valid = check_equation(img.algebra, ineq, caps).valid;
    if (rep.base_valid && !rep.image_valid)
        throw internal_error("conuclear image lost a conuclear inequality");
    return rep;
}

}  // namespace rlkit
