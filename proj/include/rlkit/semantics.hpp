#pragma once

#include "rlkit/poset_product.hpp"
#include "rlkit/term.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rlkit {

/// A valuation assigns an ac-labeling of a fixed poset product to each
/// variable, recorded by carrier index.
struct Valuation {
    std::map<std::string, int> labeling_index;
};

/// The homomorphic extension of a valuation, computed on labelings via the
/// recursive clauses: meet, join and product pointwise, implication as box
/// of the pointwise implication. Independent of the product's tables.
Labeling eval_labeling(const PosetProduct& p, const Valuation& h, const TermPtr& t);

/// True at a node when the extension takes that node's top there.
bool forces(const PosetProduct& p, const Valuation& h, int node, const TermPtr& t);

struct FrameValidity {
    bool valid = false;
    bool exhaustive = false;       // enumeration route covered every valuation
    long long checked = 0;         // valuations examined by the forcing route
    std::optional<Valuation> witness;
    std::optional<int> witness_node;
};

/// Validity of a formula in a frame. Two routes are computed: forcing over
/// enumerated valuations, and the equation phi = 1 in the poset product.
/// With at most 2 variables and a product carrier of at most 25 the forcing
/// route is exhaustive and the routes are asserted equal; beyond that the
/// forcing route samples pseudo-randomly from the given seed and the
/// equation route decides the verdict.
FrameValidity frame_valid(const PosetProduct& p, const TermPtr& t, const Caps& caps = {},
                          std::uint64_t seed = 0);

struct CountermodelResult {
    bool found = false;
    std::optional<Frame> frame;
    std::optional<Valuation> witness;
    int witness_node = -1;
    std::string frame_desc;
    long long frames_checked = 0;
};

/// Searches frames over all posets with up to max_nodes nodes (canonical
/// enumeration order) and all assignments of the given algebras to nodes.
/// Any witness is re-verified through forces before being reported.
CountermodelResult countermodel_search(const TermPtr& t, int max_nodes,
                                       const std::vector<std::pair<std::string, Algebra>>& values,
                                       const Caps& caps = {}, std::uint64_t seed = 0);

/// Enumerates the frames countermodel_search visits, with descriptions.
std::vector<std::pair<std::string, Frame>> generate_frames(
    int max_nodes, const std::vector<std::pair<std::string, Algebra>>& values);

// --- Kripke bridge (frames valued in the two-element algebra) --------------

/// Builds the valuation whose labelings are the indicator functions of the
/// given up-sets. Requires every factor to be two-element and every set to
/// be an up-set.
Valuation valuation_of_upsets(const PosetProduct& p,
                              const std::map<std::string, std::set<int>>& upsets);

/// Inverse direction: the up-set of nodes where each variable takes top.
std::map<std::string, std::set<int>> upsets_of_valuation(const PosetProduct& p,
                                                         const Valuation& h);

/// Standard intuitionistic Kripke forcing over up-set valuations, computed
/// by the persistent-valuation recursion, independent of labelings. The
/// product connective coincides with meet on two-element factors.
bool kripke_forces(const Poset& poset, const std::map<std::string, std::set<int>>& upsets,
                   int node, const TermPtr& t);

// --- Temporal flows ---------------------------------------------------------

/// Exact rational in [0, 1]; denominators stay within the chain sizes.
struct Rational {
    long long num = 0, den = 1;
    static Rational of(long long n, long long d);
    bool operator==(const Rational&) const = default;
};
bool rat_leq(const Rational& a, const Rational& b);
Rational rat_prod(const Rational& a, const Rational& b);  // max(0, a + b - 1)
Rational rat_impl(const Rational& a, const Rational& b);  // min(1, 1 - a + b)
std::string to_string(const Rational& r);

/// A poset with a Lukasiewicz chain size per node.
struct TemporalFlow {
    Poset poset;
    std::vector<int> chain_size;  // L(t) >= 2 for every node
};

/// Values of the variables at every node. Condition (1): the value at t
/// lies in the chain of size L(t); (2): monotone along the order; (3): two
/// distinct nodes with strictly internal values are incomparable.
struct TemporalAssignment {
    std::map<std::string, std::vector<Rational>> values;
};

void validate_temporal_assignment(const TemporalFlow& flow, const TemporalAssignment& v);

/// Recursive evaluation over the {prod, impl, 0} fragment with the
/// three-case implication clause. Meets, joins and the constant 1 are
/// outside the fragment and raise precondition_error.
Rational temporal_eval(const TemporalFlow& flow, const TemporalAssignment& v, int node,
                       const TermPtr& t);

/// The temporal flow of a frame whose factors are literally Lukasiewicz
/// chain tables; raises precondition_error otherwise.
TemporalFlow flow_of_frame(const Frame& f);

struct CrosscheckReport {
    bool agree = true;
    std::vector<std::string> lines;  // one entry per node: both values
};

/// Converts the valuation to a temporal assignment via h(p, x) = h(p)(x) and
/// compares temporal evaluation with forcing at every node. Disagreement
/// raises internal_error.
CrosscheckReport temporal_crosscheck(const PosetProduct& p, const Valuation& h,
                                     const TermPtr& t);

// --- Soundness instance suite ----------------------------------------------

enum class AxiomClass { All, Gbl, Bl, Ha, Ga, Potency2, Potency3, None };

struct Axiom {
    std::string name;
    std::string text;
    TermPtr formula;
    AxiomClass cls = AxiomClass::None;
};

/// The built-in axiom list used by the soundness suite and the test corpus.
const std::vector<Axiom>& axiom_list();

/// Whether a frame lies in the hypothesis class of an axiom class:
/// All: any frame; Gbl: MV-chain-valued; Bl: root-system MV-chain-valued;
/// Ha: two-element-valued; Ga: root-system two-element-valued;
/// Potency-k: MV-chain-valued with factors of at most k+1 elements.
bool frame_matches(const Frame& f, AxiomClass cls);

struct SuiteEntry {
    std::string frame_desc;
    std::string axiom;
    bool applicable = false;
    std::optional<bool> valid;  // evaluated only when applicable
};

struct SuiteReport {
    std::vector<SuiteEntry> entries;
    int checked = 0;
    int skipped = 0;
};

/// Runs every (frame, axiom) pair; an applicable pair that fails validity
/// falsifies a theorem instance and raises internal_error.
SuiteReport soundness_instance_suite(const std::vector<std::pair<std::string, Frame>>& frames,
                                     const std::vector<Axiom>& axioms, const Caps& caps = {},
                                     std::uint64_t seed = 0);

}  // namespace rlkit
