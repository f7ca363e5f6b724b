#pragma once

#include "rlkit/algebra.hpp"
#include "rlkit/filters.hpp"
#include "rlkit/poset_product.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rlkit {

/// The value frame F(A) = (Delta(A), inclusion, {A_x}) of a finite
/// GBL-algebra: one node per value x, carrying the subalgebra of A/x induced
/// on its minimal nontrivial deductive filter. Each factor is a finite
/// simple MV-chain, isomorphic to some Lukasiewicz chain.
struct ValueFrameResult {
    ValuesResult delta;                            // values of A with inclusion order
    std::vector<QuotientResult> quotients;         // A/x per value
    std::vector<std::vector<Element>> factor_members;  // quotient elements forming A_x
    std::vector<Algebra> factors;                  // A_x, re-indexed
    std::vector<int> factor_chain_size;            // m with A_x isomorphic to L_m
    Frame frame;                                   // (Delta, inclusion, {A_x})
};

/// Requires classify(a).is_gbl. Asserts that every factor is isomorphic to
/// some L_m with 2 <= m <= potency(A) + 1.
ValueFrameResult value_frame(const Algebra& a, const Caps& caps = {});

/// The map a |-> epsilon_a into the poset product of the value frame:
/// epsilon_a(x) is the class of a in A/x when that class lies in A_x, and
/// the bottom of A_x otherwise. Verifies that every epsilon_a is an
/// ac-labeling and that the map is an injective homomorphism; a failure
/// would falsify the embedding lemma instance and raises internal_error.
struct EmbeddingResult {
    std::vector<Labeling> epsilon;      // per element of A
    std::vector<int> image_index;       // rank of epsilon_a in the product carrier
    bool surjective = false;
};

EmbeddingResult epsilon_embedding(const Algebra& a, const ValueFrameResult& vf,
                                  const PosetProduct& product);

/// An isomorphism witness A = P(F(A)) for a finite GBL-algebra. The epsilon
/// map is tried first; a residual morphism search backs it up. Failure to
/// find an isomorphism raises internal_error.
struct RepresentResult {
    ValueFrameResult frame;
    PosetProduct product;
    EmbeddingResult embedding;
    std::vector<int> iso;  // element of A -> product carrier index
};

RepresentResult represent_finite_gbl(const Algebra& a, const Caps& caps = {});

/// Instance check of the conuclear preservation lemma: for t in P2* and
/// u in N2*, validity of t <= u passes from an algebra to any conuclear
/// image of it. Raises precondition_error when the inequality is not
/// conuclear and internal_error when preservation fails on a base that
/// satisfies the inequality.
struct PreservationReport {
    bool base_valid = false;
    bool image_valid = false;
    HierarchyClass antecedent, consequent;
};

PreservationReport conuclear_preservation_check(const Algebra& a,
                                                const std::vector<Element>& sigma,
                                                const Equation& ineq, const Caps& caps = {});

}  // namespace rlkit
