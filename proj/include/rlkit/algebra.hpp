#pragma once

#include "rlkit/errors.hpp"
#include "rlkit/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rlkit {

using Element = int;

/// Size caps guarding exhaustive computations. Exceeding a cap raises
/// size_error; results are never silently truncated.
struct Caps {
    int carrier = 4096;                   // maximum carrier size of a constructed algebra
    long long assignments = 10'000'000;   // maximum assignments per equation check
};

/// A finite bounded commutative integral residuated lattice, given by
/// operation tables over the carrier {0, ..., n-1}. The order is always
/// derived from the meet table (x <= y iff meet(x, y) = x) and never stored
/// separately.
struct Algebra {
    int n = 0;
    std::vector<Element> meet_t, join_t, prod_t, impl_t;  // n*n, row-major
    Element bottom = 0, top = 0;

    Element meet(Element x, Element y) const { return meet_t[x * n + y]; }
    Element join(Element x, Element y) const { return join_t[x * n + y]; }
    Element prod(Element x, Element y) const { return prod_t[x * n + y]; }
    Element impl(Element x, Element y) const { return impl_t[x * n + y]; }
    bool leq(Element x, Element y) const { return meet(x, y) == x; }
    bool in_range(Element x) const { return x >= 0 && x < n; }

    bool operator==(const Algebra&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::string axiom;              // name of the first violated axiom
    std::vector<Element> witness;   // elements witnessing the violation
    std::string detail;
    // Residuation is checked two ways; both results are recorded whenever the
    // lattice and monoid stages passed (they provably agree at that point).
    bool reached_residuation = false;
    bool residuation_forall = false;
    bool residuation_equations = false;
};

/// Checks the bounded-lattice, commutative-monoid and residuation axioms.
/// Residuation is verified both by the defining biconditional
/// (x*y <= z iff x <= y -> z) and by the equivalent four-equation
/// axiomatization; the two routes must agree once the earlier stages hold.
/// Structurally malformed tables raise format_error.
ValidationReport validate_algebra(const Algebra& a);

/// The k-element Lukasiewicz chain on {0, 1/(k-1), ..., 1}, indexed 0..k-1:
/// prod(i, j) = max(0, i + j - (k - 1)), impl(i, j) = min(k-1, k-1-i+j),
/// meet/join = min/max. Requires k >= 2.
Algebra lukasiewicz_chain(int k);

struct CounterAssignment {
    std::vector<std::string> vars;   // sorted
    std::vector<Element> values;    // parallel to vars
};

struct EquationResult {
    bool valid = false;
    std::optional<CounterAssignment> counter;  // first counterexample in
                                               // assignment-index order
};

/// Exhaustive check over all |A|^v assignments. Supports s = t and s <= t.
EquationResult check_equation(const Algebra& a, const Equation& eq, const Caps& caps = {});

/// Evaluates a term under an assignment of its free variables; the unique
/// homomorphic extension of the assignment.
Element evaluate_term(const Algebra& a, const std::map<std::string, Element>& assignment,
                      const TermPtr& t);

struct Classification {
    bool is_gbl = false;      // divisibility: x * (x -> y) = x & y
    bool is_bl = false;       // GBL + prelinearity
    bool is_mv = false;       // BL + involution
    bool is_heyting = false;  // 1-potent GBL
    bool is_godel = false;    // Heyting + prelinearity
    bool is_boolean = false;  // Heyting + involution
    bool is_chain = false;
    int potency = 1;          // least k with x^(k+1) = x^k for all x
};

Classification classify(const Algebra& a);

/// Componentwise product. The carrier is indexed in mixed radix with the
/// leftmost factor most significant. Requires a nonempty factor list.
Algebra direct_product(const std::vector<Algebra>& factors, const Caps& caps = {});

/// Decode/encode between product indices and component tuples, using the
/// same mixed-radix convention as direct_product.
std::vector<Element> product_tuple(const std::vector<Algebra>& factors, long long index);
long long product_index(const std::vector<Algebra>& factors, const std::vector<Element>& tuple);

struct SubalgebraResult {
    std::vector<Element> elements;  // ascending indices into the parent
    Algebra algebra;                // induced operations, re-indexed
};

/// Least subuniverse containing seed together with bottom and top.
SubalgebraResult generated_subalgebra(const Algebra& a, const std::vector<Element>& seed);

enum class MorphismMode { Hom, Embedding, Isomorphism };

/// Backtracking search for a map preserving meet, join, prod, impl, 0 and 1.
/// Embedding adds injectivity, isomorphism adds bijectivity. Candidates are
/// explored in ascending element order, so the first witness is
/// deterministic (and morphism_search(a, a, Isomorphism) finds the identity).
std::optional<std::vector<Element>> morphism_search(const Algebra& a, const Algebra& b,
                                                    MorphismMode mode, const Caps& caps = {});

struct ConucleusReport {
    bool ok = true;
    std::string condition;          // first violated condition
    std::vector<Element> witness;
};

/// Checks the five conucleus conditions: sigma(x) <= x, sigma idempotent,
/// sigma monotone, sigma(x)sigma(y) <= sigma(xy), sigma(1)sigma(x) = sigma(x).
ConucleusReport is_conucleus(const Algebra& a, const std::vector<Element>& sigma);

struct ConuclearImage {
    std::vector<Element> fixpoints;  // ascending indices into the base
    Algebra algebra;                 // meet/impl composed with sigma; join,
                                     // prod, bottom inherited; top = sigma(1)
};

/// The residuated lattice on the fixpoints of a conucleus. The result is
/// re-validated; a failure would contradict the construction and raises
/// internal_error.
ConuclearImage conuclear_image(const Algebra& a, const std::vector<Element>& sigma);

struct SequentResult {
    bool direct = false;                     // truth-preservation over all assignments
    std::optional<int> local_deduction_k;    // least k <= k_max with
                                             // (psi_1^k * ... * psi_n^k) -> phi = 1 valid
};

SequentResult sequent_consequence(const Algebra& a, const Sequent& s, int k_max,
                                  const Caps& caps = {});

}  // namespace rlkit
