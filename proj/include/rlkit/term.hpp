#pragma once

#include "rlkit/errors.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rlkit {

enum class TermKind { Var, Zero, One, Meet, Join, Prod, Impl };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable AST over {&, |, *, ->, 0, 1, variables}.
struct Term {
    TermKind kind;
    std::string var;   // Var nodes only
    TermPtr lhs, rhs;  // binary nodes only
};

TermPtr tvar(std::string name);
TermPtr tzero();
TermPtr tone();
TermPtr tmeet(TermPtr l, TermPtr r);
TermPtr tjoin(TermPtr l, TermPtr r);
TermPtr tprod(TermPtr l, TermPtr r);
TermPtr timpl(TermPtr l, TermPtr r);
TermPtr tiff(TermPtr l, TermPtr r);  // sugar: (l -> r) & (r -> l)
TermPtr tneg(TermPtr t);             // sugar: t -> 0
TermPtr tpow(TermPtr t, int k);      // t * t * ... (k factors); k = 0 gives 1

bool term_equal(const TermPtr& a, const TermPtr& b);

/// Free variables, sorted and deduplicated.
std::vector<std::string> free_vars(const TermPtr& t);

/// Canonical ASCII rendering with minimal parentheses.
/// parse(render(t)) reproduces t exactly.
std::string render(const TermPtr& t);

struct parse_error : format_error {
    parse_error(const std::string& msg, std::size_t pos);
    std::size_t position;
};

/// Grammar, loosest to tightest: "->" (right-assoc) < "|" < "&" < "*".
/// Atoms are 0, 1, identifiers and parenthesized terms. Unicode aliases
/// for the connectives and the sugar "<->", "~" are accepted on input.
TermPtr parse_term(std::string_view text);

struct Equation {
    TermPtr lhs, rhs;
    bool is_leq = false;  // lhs <= rhs; equivalent to lhs & rhs = lhs
};

/// "s = t" or "s <= t".
Equation parse_equation(std::string_view text);
std::string render(const Equation& eq);

struct Sequent {
    std::vector<TermPtr> premises;
    TermPtr conclusion;
};

/// "p, q |- r"; the premise list may be empty.
Sequent parse_sequent(std::string_view text);
std::string render(const Sequent& s);

/// Polarity levels of a term in the substructural hierarchy, together with
/// membership in the starred classes used to recognize conuclear equations.
struct HierarchyClass {
    static constexpr int level_cap = 8;
    std::optional<int> p_level;  // least n with t in P_n; absent above cap
    std::optional<int> n_level;  // least n with t in N_n
    bool in_p2_star = false;
    bool in_n2_star = false;
};

HierarchyClass classify_hierarchy(const TermPtr& t);

struct ConuclearCheck {
    bool conuclear = false;
    bool shape_ok = false;  // equation has the form t -> u = 1
    HierarchyClass antecedent, consequent;
};

/// An equation is conuclear when it has the form t -> u = 1 with t in P2*
/// and u in N2*. Such inequalities survive passage to conuclear images.
ConuclearCheck is_conuclear_equation(const Equation& eq);

}  // namespace rlkit
