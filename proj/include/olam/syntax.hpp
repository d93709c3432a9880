#pragma once

// Three-level abstract syntax: kinds, type constructors and terms.
//
// Nodes are immutable and shared. Names are kept as written; alpha_eq is
// the equality used everywhere.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "olam/error.hpp"
#include "olam/rational.hpp"

namespace olam {

using Name = std::string;
using NameSet = std::set<Name>;

struct TermNode;
struct ConNode;
struct KindNode;

using Term = std::shared_ptr<const TermNode>;
using TypeCon = std::shared_ptr<const ConNode>;
using Kind = std::shared_ptr<const KindNode>;

namespace term {

struct Var { Name name; };
/// A bare oracle constant `#o`.
struct OracleRef { Name oracle; };
/// A unary oracle constant applied to its argument, `#o t`.
struct OracleApp { Name oracle; Term arg; };
struct Lambda { Name binder; TypeCon domain; Term body; };
struct App { Term fn; Term arg; };
struct Choice { Term left; Rational prob; Term right; };
/// Postfix ν, written `t !`.
struct Nu { Term body; };
struct Pair { Term first; Term second; };
struct Proj { Term body; int index; };
struct Efq { Term body; TypeCon target; };
/// Computation `[t1, ..., tn]^p`. Produced by the trace engine only.
struct CompList { std::vector<Term> steps; std::optional<Rational> prob; };
/// Merged computation `[t, [k1 / ... / kn], s]^p`.
struct CompMerge {
  Term source;
  std::vector<std::vector<Term>> branches;
  Term target;
  std::optional<Rational> prob;
};
/// Designated hole of a multi-hole context, numbered from 1.
struct Hole { std::size_t index; };

}  // namespace term

struct TermNode {
  using Variant = std::variant<term::Var, term::OracleRef, term::OracleApp, term::Lambda, term::App,
                               term::Choice, term::Nu, term::Pair, term::Proj, term::Efq,
                               term::CompList, term::CompMerge, term::Hole>;
  Variant node;
  SourcePos pos;
};

namespace con {

struct Var { Name name; };
/// Constructor abstraction over a term variable, `\\x:T. phi`.
struct Lambda { Name binder; TypeCon domain; TypeCon body; };
/// Constructor applied to a term.
struct App { TypeCon fn; Term arg; };
struct Forall { Name binder; TypeCon domain; TypeCon body; };
struct Oplus { TypeCon body; };
struct Sigma { TypeCon body; };
struct And { TypeCon left; TypeCon right; };
struct Bottom {};

}  // namespace con

struct ConNode {
  using Variant = std::variant<con::Var, con::Lambda, con::App, con::Forall, con::Oplus, con::Sigma,
                               con::And, con::Bottom>;
  Variant node;
  SourcePos pos;
};

namespace kind {

struct Star {};
struct Pi { Name binder; TypeCon domain; Kind body; };

}  // namespace kind

struct KindNode {
  std::variant<kind::Star, kind::Pi> node;
  SourcePos pos;
};

template <class T>
const T* as(const Term& t) { return std::get_if<T>(&t->node); }
template <class T>
const T* as(const TypeCon& c) { return std::get_if<T>(&c->node); }
template <class T>
const T* as(const Kind& k) { return std::get_if<T>(&k->node); }

// --- construction ----------------------------------------------------------

Term var(Name name, SourcePos pos = {});
Term oracle_ref(Name oracle, SourcePos pos = {});
Term oracle_app(Name oracle, Term arg, SourcePos pos = {});
Term lam(Name binder, TypeCon domain, Term body, SourcePos pos = {});
Term app(Term fn, Term arg, SourcePos pos = {});
/// Throws Error(ProbabilityOutOfRange) unless 0 <= prob <= 1.
Term choice(Term left, Rational prob, Term right, SourcePos pos = {});
Term nu(Term body, SourcePos pos = {});
Term pair(Term first, Term second, SourcePos pos = {});
Term proj(Term body, int index, SourcePos pos = {});
Term efq(Term body, TypeCon target, SourcePos pos = {});
Term comp_list(std::vector<Term> steps, std::optional<Rational> prob = std::nullopt);
Term comp_merge(Term source, std::vector<std::vector<Term>> branches, Term target,
                std::optional<Rational> prob = std::nullopt);
Term hole(std::size_t index);

/// Right-nested tuple <t1, <t2, ... <t(n-1), tn>>>. Requires n >= 1.
Term tuple(const std::vector<Term>& items);
/// Inverse of tuple() for a known width; returns nullopt if the shape differs.
std::optional<std::vector<Term>> untuple(const Term& t, std::size_t width);

TypeCon con_var(Name name, SourcePos pos = {});
TypeCon con_lam(Name binder, TypeCon domain, TypeCon body, SourcePos pos = {});
TypeCon con_app(TypeCon fn, Term arg, SourcePos pos = {});
TypeCon forall(Name binder, TypeCon domain, TypeCon body, SourcePos pos = {});
/// `A -> B`: a forall whose binder does not occur in B.
TypeCon arrow(TypeCon domain, TypeCon codomain, SourcePos pos = {});
TypeCon oplus(TypeCon body, SourcePos pos = {});
TypeCon sigma(TypeCon body, SourcePos pos = {});
TypeCon conj(TypeCon left, TypeCon right, SourcePos pos = {});
TypeCon bottom(SourcePos pos = {});

Kind star(SourcePos pos = {});
Kind pi(Name binder, TypeCon domain, Kind body, SourcePos pos = {});

/// Binder name used for the non-dependent arrow sugar.
inline constexpr const char* kArrowBinder = "_";

// --- variables -------------------------------------------------------------

NameSet free_term_vars(const Term& t);
NameSet free_term_vars(const TypeCon& c);
NameSet free_term_vars(const Kind& k);

/// Constructor variables are never bound, so every occurrence counts.
NameSet con_vars(const TypeCon& c);
NameSet con_vars(const Term& t);
NameSet con_vars(const Kind& k);

/// Names of every oracle constant occurring anywhere in t.
NameSet oracle_names(const Term& t);

/// Smallest `base`, `base1`, `base2`, ... not in `avoid`.
Name fresh_name(const Name& base, const NameSet& avoid);

// --- substitution ----------------------------------------------------------

/// t[s/x], capture-avoiding.
Term substitute_term(const Term& t, const Name& x, const Term& s);
/// phi[t/x], capture-avoiding.
TypeCon substitute_in_con(const TypeCon& phi, const Name& x, const Term& t);
Kind substitute_in_kind(const Kind& k, const Name& x, const Term& t);

// --- alpha equivalence -----------------------------------------------------

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const TypeCon& a, const TypeCon& b);
bool alpha_eq(const Kind& a, const Kind& b);

/// Renames every bound variable to a canonical name determined by binder
/// depth, so alpha-equal inputs become syntactically identical.
Term alpha_normalize(const Term& t);
TypeCon alpha_normalize(const TypeCon& c);
Kind alpha_normalize(const Kind& k);

// --- positions -------------------------------------------------------------

/// Child indices from the root. Term children: Lambda{0: body},
/// App{0: fn, 1: arg}, Choice{0: left, 1: right}, Nu/Proj/Efq/OracleApp{0}.
/// Pair{0, 1}. Type annotations are not term positions.
using Path = std::vector<std::size_t>;

/// Throws Error(InvalidRedexPath) if the path does not address a subterm.
const Term& subterm_at(const Term& t, const Path& path);
Term replace_at(const Term& t, const Path& path, const Term& replacement);

/// Constructor positions: Lambda{0: domain, 1: body}, App{0: fn},
/// Forall{0: domain, 1: body}, Oplus/Sigma{0}, And{0, 1}.
const TypeCon& subcon_at(const TypeCon& c, const Path& path);
TypeCon replace_con_at(const TypeCon& c, const Path& path, const TypeCon& replacement);

}  // namespace olam
