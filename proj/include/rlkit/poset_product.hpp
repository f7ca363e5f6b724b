#pragma once

#include "rlkit/algebra.hpp"
#include "rlkit/poset.hpp"

#include <map>
#include <string>
#include <vector>

namespace rlkit {

/// A poset together with one residuated lattice per node. Every factor keeps
/// its own designated bottom/top; the shared least and greatest elements of
/// the abstract construction are modeled by these roles rather than by
/// element identity.
struct Frame {
    Poset poset;
    std::vector<Algebra> algebras;  // one per node, in node order
};

/// Checks node/algebra count agreement and validates every factor.
void validate_frame(const Frame& f);

/// A choice function: one element index per node, in node order.
using Labeling = std::vector<Element>;

/// The interior operator of the construction: keeps f(x) when f(y) = top
/// for every y > x, and sends it to bottom otherwise.
Labeling box_map(const Frame& f, const Labeling& g);

struct LabelingParts {
    std::vector<int> support;  // S_f: nodes with a value strictly between the bounds
    std::vector<int> zeros;    // L_f
    std::vector<int> ones;     // U_f
};

LabelingParts labeling_parts(const Frame& f, const Labeling& g);

/// Evaluates the three equivalent antichain-labeling criteria (box fixpoint;
/// the pointwise condition "f(x) = bottom or f(y) = top for x < y"; support
/// an antichain with L_f a down-set and U_f an up-set) and asserts that they
/// agree before returning their common verdict.
bool is_ac_labeling(const Frame& f, const Labeling& g);

/// All ac-labelings, in mixed-radix order over the nodes sorted by the
/// poset's stable linear extension (first node of the extension most
/// significant).
std::vector<Labeling> enumerate_ac_labelings(const Frame& f, const Caps& caps = {});

/// The comparability-lemma order: L_g contained in L_f, U_f contained in
/// U_g, and f <= g pointwise on the common support. Coincides with the
/// pointwise order on ac-labelings.
bool labeling_leq(const Frame& f, const Labeling& x, const Labeling& y);

/// A poset product materialized as a finite residuated lattice whose carrier
/// is the ac-labelings of the frame.
struct PosetProduct {
    Frame frame;
    std::vector<Labeling> labelings;
    Algebra algebra;

    int index_of(const Labeling& g) const;  // -1 when not an ac-labeling

private:
    friend PosetProduct build_poset_product(const Frame&, const Caps&);
    std::map<Labeling, int> index_;
};

/// Builds the poset product: meet, join and product pointwise; implication
/// is box applied to the pointwise implication; bottom/top are the constant
/// bottom/top labelings. The result is validated and checked element-for-
/// element against the conuclear image of the direct product under box.
PosetProduct build_poset_product(const Frame& f, const Caps& caps = {});

/// The poset product over the order dual of the frame's poset.
PosetProduct dual_poset_product(const Frame& f, const Caps& caps = {});

/// box as a self-map on direct-product indices (factors in node order).
std::vector<Element> box_on_product(const Frame& f, const Caps& caps = {});

}  // namespace rlkit
