#include "rlkit/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rlkit {

TermPtr tvar(std::string name) {
    return std::make_shared<Term>(Term{TermKind::Var, std::move(name), nullptr, nullptr});
}
TermPtr tzero() {
    static const TermPtr z = std::make_shared<Term>(Term{TermKind::Zero, "", nullptr, nullptr});
    return z;
}
TermPtr tone() {
    static const TermPtr o = std::make_shared<Term>(Term{TermKind::One, "", nullptr, nullptr});
    return o;
}
static TermPtr binary(TermKind k, TermPtr l, TermPtr r) {
    return std::make_shared<Term>(Term{k, "", std::move(l), std::move(r)});
}
TermPtr tmeet(TermPtr l, TermPtr r) { return binary(TermKind::Meet, std::move(l), std::move(r)); }
TermPtr tjoin(TermPtr l, TermPtr r) { return binary(TermKind::Join, std::move(l), std::move(r)); }
TermPtr tprod(TermPtr l, TermPtr r) { return binary(TermKind::Prod, std::move(l), std::move(r)); }
TermPtr timpl(TermPtr l, TermPtr r) { return binary(TermKind::Impl, std::move(l), std::move(r)); }
TermPtr tiff(TermPtr l, TermPtr r) { return tmeet(timpl(l, r), timpl(r, l)); }
TermPtr tneg(TermPtr t) { return timpl(std::move(t), tzero()); }

TermPtr tpow(TermPtr t, int k) {
    if (k <= 0) return tone();
    TermPtr out = t;
    for (int i = 1; i < k; ++i) out = tprod(out, t);
    return out;
}

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::Var: return a->var == b->var;
        case TermKind::Zero:
        case TermKind::One: return true;
        default: return term_equal(a->lhs, b->lhs) && term_equal(a->rhs, b->rhs);
    }
}

static void collect_vars(const TermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind == TermKind::Var) {
        out.insert(t->var);
        return;
    }
    collect_vars(t->lhs, out);
    collect_vars(t->rhs, out);
}

std::vector<std::string> free_vars(const TermPtr& t) {
    std::set<std::string> s;
    collect_vars(t, s);
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Rendering. Precedence: Impl 0 (right-assoc) < Join 1 < Meet 2 < Prod 3.

namespace {

int precedence(TermKind k) {
    switch (k) {
        case TermKind::Impl: return 0;
        case TermKind::Join: return 1;
        case TermKind::Meet: return 2;
        case TermKind::Prod: return 3;
        default: return 4;
    }
}

const char* op_text(TermKind k) {
    switch (k) {
        case TermKind::Impl: return " -> ";
        case TermKind::Join: return " | ";
        case TermKind::Meet: return " & ";
        case TermKind::Prod: return " * ";
        default: return "";
    }
}

void render_into(const TermPtr& t, std::string& out, int parent_prec, bool strict) {
    const int prec = precedence(t->kind);
    switch (t->kind) {
        case TermKind::Var: out += t->var; return;
        case TermKind::Zero: out += '0'; return;
        case TermKind::One: out += '1'; return;
        default: break;
    }
    const bool parens = prec < parent_prec || (strict && prec == parent_prec);
    if (parens) out += '(';
    if (t->kind == TermKind::Impl) {
        // right-associative: parenthesize an implication on the left
        render_into(t->lhs, out, prec, true);
        out += op_text(t->kind);
        render_into(t->rhs, out, prec, false);
    } else {
        // left-associative chain: parenthesize a same-precedence right child
        render_into(t->lhs, out, prec, false);
        out += op_text(t->kind);
        render_into(t->rhs, out, prec, true);
    }
    if (parens) out += ')';
}

}  // namespace

std::string render(const TermPtr& t) {
    std::string out;
    render_into(t, out, 0, false);
    return out;
}

std::string render(const Equation& eq) {
    return render(eq.lhs) + (eq.is_leq ? " <= " : " = ") + render(eq.rhs);
}

std::string render(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (i) out += ", ";
        out += render(s.premises[i]);
    }
    if (!s.premises.empty()) out += ' ';
    out += "|- " + render(s.conclusion);
    return out;
}

// ---------------------------------------------------------------------------
// Lexing and parsing.

parse_error::parse_error(const std::string& msg, std::size_t pos)
    : format_error(msg + " at position " + std::to_string(pos)), position(pos) {}

namespace {

enum class Tok { End, LParen, RParen, Amp, Pipe, Star, Arrow, Iff, Tilde, Zero, One, Ident };

struct Lexer {
    std::string_view text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::string ident;
    std::size_t tok_pos = 0;

    explicit Lexer(std::string_view t) : text(t) { advance(); }

    bool starts_with(const char* s) const {
        std::string_view rest = text.substr(pos);
        return rest.substr(0, std::string_view(s).size()) == s;
    }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tok_pos = pos;
        if (pos >= text.size()) {
            tok = Tok::End;
            return;
        }
        const char c = text[pos];
        // unicode aliases
        if (starts_with("∧")) { tok = Tok::Amp; pos += 3; return; }    // wedge
        if (starts_with("∨")) { tok = Tok::Pipe; pos += 3; return; }   // vee
        if (starts_with("·")) { tok = Tok::Star; pos += 2; return; }   // middle dot
        if (starts_with("→")) { tok = Tok::Arrow; pos += 3; return; }  // rightwards arrow
        if (starts_with("↔")) { tok = Tok::Iff; pos += 3; return; }    // left right arrow
        if (starts_with("¬")) { tok = Tok::Tilde; pos += 2; return; }  // not sign
        if (starts_with("<->")) { tok = Tok::Iff; pos += 3; return; }
        if (starts_with("->")) { tok = Tok::Arrow; pos += 2; return; }
        switch (c) {
            case '(': tok = Tok::LParen; ++pos; return;
            case ')': tok = Tok::RParen; ++pos; return;
            case '&': tok = Tok::Amp; ++pos; return;
            case '|': tok = Tok::Pipe; ++pos; return;
            case '*': tok = Tok::Star; ++pos; return;
            case '~': tok = Tok::Tilde; ++pos; return;
            case '0': tok = Tok::Zero; ++pos; return;
            case '1': tok = Tok::One; ++pos; return;
            default: break;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size()) {
                const char d = text[pos];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'')
                    ++pos;
                else
                    break;
            }
            ident.assign(text.substr(start, pos - start));
            tok = Tok::Ident;
            return;
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos);
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(std::string_view text) : lex(text) {}

    TermPtr parse_expr() {
        TermPtr left = parse_join();
        if (lex.tok == Tok::Arrow) {
            lex.advance();
            TermPtr right = parse_expr();  // right-associative
            return timpl(std::move(left), std::move(right));
        }
        if (lex.tok == Tok::Iff) {
            lex.advance();
            TermPtr right = parse_join();  // non-associative sugar
            if (lex.tok == Tok::Iff) throw parse_error("'<->' is non-associative", lex.tok_pos);
            return tiff(std::move(left), std::move(right));
        }
        return left;
    }

    TermPtr parse_join() {
        TermPtr left = parse_meet();
        while (lex.tok == Tok::Pipe) {
            lex.advance();
            left = tjoin(std::move(left), parse_meet());
        }
        return left;
    }

    TermPtr parse_meet() {
        TermPtr left = parse_prod();
        while (lex.tok == Tok::Amp) {
            lex.advance();
            left = tmeet(std::move(left), parse_prod());
        }
        return left;
    }

    TermPtr parse_prod() {
        TermPtr left = parse_atom();
        while (lex.tok == Tok::Star) {
            lex.advance();
            left = tprod(std::move(left), parse_atom());
        }
        return left;
    }

    TermPtr parse_atom() {
        switch (lex.tok) {
            case Tok::Zero: lex.advance(); return tzero();
            case Tok::One: lex.advance(); return tone();
            case Tok::Ident: {
                TermPtr v = tvar(lex.ident);
                lex.advance();
                return v;
            }
            case Tok::Tilde: {
                lex.advance();
                return tneg(parse_atom());
            }
            case Tok::LParen: {
                lex.advance();
                TermPtr inner = parse_expr();
                if (lex.tok != Tok::RParen) throw parse_error("expected ')'", lex.tok_pos);
                lex.advance();
                return inner;
            }
            default: throw parse_error("expected a formula atom", lex.tok_pos);
        }
    }
};

}  // namespace

TermPtr parse_term(std::string_view text) {
    Parser p(text);
    TermPtr t = p.parse_expr();
    if (p.lex.tok != Tok::End) throw parse_error("trailing input after formula", p.lex.tok_pos);
    return t;
}

Equation parse_equation(std::string_view text) {
    // Terms contain no '=', so the first '=' splits the equation. A '<'
    // immediately before it makes the delimiter "<=".
    std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) throw parse_error("expected '=' or '<=' in equation", 0);
    Equation out;
    if (eq > 0 && text[eq - 1] == '<') {
        out.is_leq = true;
        out.lhs = parse_term(text.substr(0, eq - 1));
    } else {
        out.lhs = parse_term(text.substr(0, eq));
    }
    out.rhs = parse_term(text.substr(eq + 1));
    return out;
}

Sequent parse_sequent(std::string_view text) {
    // Find "|-" (not followed by '>', which would be part of an arrow).
    std::size_t turnstile = std::string_view::npos;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == '|' && text[i + 1] == '-' && (i + 2 >= text.size() || text[i + 2] != '>')) {
            turnstile = i;
            break;
        }
    }
    if (turnstile == std::string_view::npos)
        throw parse_error("expected '|-' in sequent", 0);
    Sequent s;
    std::string_view prem = text.substr(0, turnstile);
    std::size_t start = 0;
    // commas cannot occur inside terms, so a flat split suffices
    while (start <= prem.size()) {
        std::size_t comma = prem.find(',', start);
        std::string_view piece =
            comma == std::string_view::npos ? prem.substr(start) : prem.substr(start, comma - start);
        std::size_t a = piece.find_first_not_of(" \t");
        if (a != std::string_view::npos) s.premises.push_back(parse_term(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    s.conclusion = parse_term(text.substr(turnstile + 2));
    return s;
}

// ---------------------------------------------------------------------------
// Substructural hierarchy.
//
// P_{n+1} is generated from {1} and N_n by | and *; N_{n+1} is generated from
// {0} and P_n by & and by t -> (.) with t in P_{n+1}. Least levels are
// computed bottom-up, saturating above level_cap.

namespace {

constexpr int kLevelSat = HierarchyClass::level_cap + 1;

struct Levels {
    int p, n;  // saturated at kLevelSat
    bool p2s, n2s;
};

int sat(int v) { return std::min(v, kLevelSat); }

Levels levels_of(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Var: return {0, 0, true, true};
        case TermKind::One: return {1, 2, true, true};   // 1 in P1; via P1 in N2
        case TermKind::Zero: return {2, 1, true, true};  // 0 in N1; via N1 in P2
        default: break;
    }
    const Levels l = levels_of(t->lhs);
    const Levels r = levels_of(t->rhs);
    Levels out{};
    switch (t->kind) {
        case TermKind::Join:
        case TermKind::Prod:
            out.p = sat(std::max({1, l.p, r.p}));
            out.n = sat(out.p + 1);
            out.p2s = l.p2s && r.p2s;
            out.n2s = out.p <= 1;  // joins and products enter N2* only through P1
            break;
        case TermKind::Meet:
            out.n = sat(std::max({1, l.n, r.n}));
            out.p = sat(out.n + 1);
            out.p2s = l.p2s && r.p2s;
            out.n2s = l.n2s && r.n2s;
            break;
        case TermKind::Impl:
            out.n = sat(std::max({1, l.p, r.n}));
            out.p = sat(out.n + 1);
            out.p2s = l.p <= 1 && r.p2s;  // (P3)*
            out.n2s = l.p2s && r.n2s;     // (N3)*
            break;
        default: break;
    }
    // P2 is contained in P2*, and {0, 1} with all of P1 lie in N2*.
    if (out.p <= 2) out.p2s = true;
    if (out.p <= 1) out.n2s = true;
    return out;
}

}  // namespace

HierarchyClass classify_hierarchy(const TermPtr& t) {
    const Levels l = levels_of(t);
    HierarchyClass out;
    if (l.p <= HierarchyClass::level_cap) out.p_level = l.p;
    if (l.n <= HierarchyClass::level_cap) out.n_level = l.n;
    out.in_p2_star = l.p2s;
    out.in_n2_star = l.n2s;
    return out;
}

ConuclearCheck is_conuclear_equation(const Equation& eq) {
    ConuclearCheck out;
    if (eq.is_leq) return out;
    if (!eq.lhs || eq.lhs->kind != TermKind::Impl) return out;
    if (!eq.rhs || eq.rhs->kind != TermKind::One) return out;
    out.shape_ok = true;
    out.antecedent = classify_hierarchy(eq.lhs->lhs);
    out.consequent = classify_hierarchy(eq.lhs->rhs);
    out.conuclear = out.antecedent.in_p2_star && out.consequent.in_n2_star;
    return out;
}

}  // namespace rlkit
