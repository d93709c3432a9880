#include "olam/checker.hpp"

#include "olam/constructor.hpp"
#include "olam/oracle.hpp"
#include "olam/overloaded.hpp"
#include "olam/surface.hpp"

namespace olam {

// --- environment ---------------------------------------------------------------

Environment Environment::push(Entry e) const {
  if (contains(e.name)) throw Error(ErrorCode::DuplicateName, "'" + e.name + "' is already bound");
  Environment out;
  out.head_ = std::make_shared<const Node>(Node{std::move(e), head_});
  return out;
}

Environment Environment::with_term(Name name, TypeCon type) const {
  return push(Entry{std::move(name), std::move(type)});
}

Environment Environment::with_con(Name name, Kind kind) const {
  return push(Entry{std::move(name), std::move(kind)});
}

const Environment::Entry* Environment::lookup(const Name& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->entry.name == name) return &n->entry;
  return nullptr;
}

const TypeCon* Environment::term_type(const Name& name) const {
  auto* e = lookup(name);
  return e ? std::get_if<TypeCon>(&e->classifier) : nullptr;
}

const Kind* Environment::con_kind(const Name& name) const {
  auto* e = lookup(name);
  return e ? std::get_if<Kind>(&e->classifier) : nullptr;
}

bool Environment::contains(const Name& name) const { return lookup(name) != nullptr; }

NameSet Environment::names() const {
  NameSet out;
  for (const Node* n = head_.get(); n; n = n->next.get()) out.insert(n->entry.name);
  return out;
}

NameSet Environment::term_names() const {
  NameSet out;
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (std::holds_alternative<TypeCon>(n->entry.classifier)) out.insert(n->entry.name);
  return out;
}

std::vector<Environment::Entry> Environment::entries() const {
  std::vector<Entry> out;
  for (const Node* n = head_.get(); n; n = n->next.get()) out.push_back(n->entry);
  return {out.rbegin(), out.rend()};
}

// --- checking ------------------------------------------------------------------

namespace {

TypeCon nf(const TypeCon& c) { return normalize_con(c); }

bool contains_forall(const TypeCon& c) {
  return std::visit(overloaded{
                        [](const con::Forall&) { return true; },
                        [](const con::Lambda& l) { return contains_forall(l.domain) || contains_forall(l.body); },
                        [](const con::App& a) { return contains_forall(a.fn); },
                        [](const con::Oplus& o) { return contains_forall(o.body); },
                        [](const con::Sigma& s) { return contains_forall(s.body); },
                        [](const con::And& a) { return contains_forall(a.left) || contains_forall(a.right); },
                        [](const auto&) { return false; },
                    },
                    c->node);
}

/// Binder name safe to push onto env, plus the body with the binder renamed.
template <class Body>
std::pair<Name, Body> open_binder(const Environment& env, const Name& x, const Body& body) {
  if (!env.contains(x)) return {x, body};
  NameSet avoid = env.names();
  for (auto& n : free_term_vars(body)) avoid.insert(n);
  Name y = fresh_name(x, avoid);
  if constexpr (std::is_same_v<Body, Term>)
    return {y, substitute_term(body, x, var(y))};
  else if constexpr (std::is_same_v<Body, TypeCon>)
    return {y, substitute_in_con(body, x, var(y))};
  else
    return {y, substitute_in_kind(body, x, var(y))};
}

[[noreturn]] void mismatch(const Term& t, const TypeCon& expected, const TypeCon& found) {
  throw Error(ErrorCode::TypeMismatch,
              "expected type " + print_type(expected) + ", found " + print_type(found) + " for '" +
                  print_term(t) + "'",
              t->pos);
}

}  // namespace

void TypeChecker::check_kind(const Environment& env, const Kind& k) const {
  auto* p = as<kind::Pi>(k);
  if (!p) return;
  try {
    check_is_type(env, p->domain);
  } catch (const Error& e) {
    throw Error(ErrorCode::IllFormedKind, "ill-formed kind '" + print_kind(k) + "': " + e.what(), k->pos);
  }
  auto [x, body] = open_binder(env, p->binder, p->body);
  check_kind(env.with_term(x, nf(p->domain)), body);
}

void TypeChecker::check_is_type(const Environment& env, const TypeCon& phi) const {
  Kind k = infer_kind(env, phi);
  if (!as<kind::Star>(k))
    throw Error(ErrorCode::KindMismatch, "'" + print_type(phi) + "' has kind " + print_kind(k) + ", expected *",
                phi->pos);
}

Kind TypeChecker::infer_kind(const Environment& env, const TypeCon& phi) const {
  auto binder_star = [&](const Name& x, const TypeCon& domain, const TypeCon& body) {
    check_is_type(env, domain);
    auto [y, b] = open_binder(env, x, body);
    check_is_type(env.with_term(y, nf(domain)), b);
    return star();
  };
  return std::visit(
      overloaded{
          [&](const con::Var& v) -> Kind {
            auto* k = env.con_kind(v.name);
            if (!k) throw Error(ErrorCode::UnboundConVar, "type constructor '" + v.name + "' is not declared", phi->pos);
            return *k;
          },
          [&](const con::Lambda& l) -> Kind {
            check_is_type(env, l.domain);
            auto [y, b] = open_binder(env, l.binder, l.body);
            Kind body = infer_kind(env.with_term(y, nf(l.domain)), b);
            return pi(y, l.domain, body);
          },
          [&](const con::App& a) -> Kind {
            Kind fk = infer_kind(env, a.fn);
            auto* p = as<kind::Pi>(fk);
            if (!p)
              throw Error(ErrorCode::NotAKindFunction,
                          "'" + print_type(a.fn) + "' has kind " + print_kind(fk) + " and cannot take an argument",
                          phi->pos);
            TypeCon found = infer_type(env, a.arg);
            if (!con_equiv(found, p->domain))
              throw Error(ErrorCode::KindMismatch,
                          "argument '" + print_term(a.arg) + "' of '" + print_type(a.fn) + "' has type " +
                              print_type(found) + ", expected " + print_type(p->domain),
                          phi->pos);
            return substitute_in_kind(p->body, p->binder, a.arg);
          },
          [&](const con::Forall& f) -> Kind { return binder_star(f.binder, f.domain, f.body); },
          [&](const con::Oplus& o) -> Kind {
            check_is_type(env, o.body);
            return star();
          },
          [&](const con::Sigma& s) -> Kind {
            check_is_type(env, s.body);
            return star();
          },
          [&](const con::And& a) -> Kind {
            check_is_type(env, a.left);
            check_is_type(env, a.right);
            return star();
          },
          [&](const con::Bottom&) -> Kind { return star(); },
      },
      phi->node);
}

TypeCon TypeChecker::infer_type(const Environment& env, const Term& t) const {
  return std::visit(
      overloaded{
          [&](const term::Var& v) -> TypeCon {
            auto* ty = env.term_type(v.name);
            if (!ty) throw Error(ErrorCode::UnboundVar, "variable '" + v.name + "' is not bound", t->pos);
            return nf(*ty);
          },
          [&](const term::OracleRef& o) -> TypeCon {
            auto* def = oracles_->find(o.oracle);
            if (!def) throw Error(ErrorCode::UnknownOracle, "oracle '#" + o.oracle + "' is not defined", t->pos);
            return nf(def->type);
          },
          [&](const term::OracleApp& o) -> TypeCon {
            auto* def = oracles_->find(o.oracle);
            if (!def) throw Error(ErrorCode::UnknownOracle, "oracle '#" + o.oracle + "' is not defined", t->pos);
            if (def->arity != 1)
              throw Error(ErrorCode::NotAFunction, "oracle '#" + o.oracle + "' takes no argument", t->pos);
            check_type(env, o.arg, def->argument_type());
            return nf(sigma(def->output_type(o.arg)));
          },
          [&](const term::Lambda& l) -> TypeCon {
            check_is_type(env, l.domain);
            TypeCon domain = nf(l.domain);
            auto [y, body] = open_binder(env, l.binder, l.body);
            TypeCon result = infer_type(env.with_term(y, domain), body);
            return forall(y, domain, result);
          },
          [&](const term::App& a) -> TypeCon {
            TypeCon fty = infer_type(env, a.fn);
            auto* f = as<con::Forall>(fty);
            if (!f)
              throw Error(ErrorCode::NotAFunction,
                          "'" + print_term(a.fn) + "' has type " + print_type(fty) + " and cannot be applied",
                          t->pos);
            check_type(env, a.arg, f->domain);
            return nf(substitute_in_con(f->body, f->binder, a.arg));
          },
          [&](const term::Choice& c) -> TypeCon {
            TypeCon left = infer_type(env, c.left);
            TypeCon right = infer_type(env, c.right);
            if (!con_equiv(left, right))
              throw Error(ErrorCode::BranchTypeMismatch,
                          "choice branches have types " + print_type(left) + " and " + print_type(right), t->pos);
            return oplus(left);
          },
          [&](const term::Nu& n) -> TypeCon {
            TypeCon ty = infer_type(env, n.body);
            if (auto* o = as<con::Oplus>(ty)) return o->body;
            if (auto* s = as<con::Sigma>(ty)) return s->body;
            throw Error(ErrorCode::NotAChoice,
                        "'" + print_term(n.body) + "' has type " + print_type(ty) + ", expected Oplus or Sigma",
                        t->pos);
          },
          [&](const term::Pair& p) -> TypeCon { return conj(infer_type(env, p.first), infer_type(env, p.second)); },
          [&](const term::Proj& p) -> TypeCon {
            TypeCon ty = infer_type(env, p.body);
            auto* a = as<con::And>(ty);
            if (!a)
              throw Error(ErrorCode::NotAPair,
                          "'" + print_term(p.body) + "' has type " + print_type(ty) + ", expected a conjunction",
                          t->pos);
            return p.index == 0 ? a->left : a->right;
          },
          [&](const term::Efq& e) -> TypeCon {
            TypeCon ty = infer_type(env, e.body);
            if (!as<con::Bottom>(ty))
              throw Error(ErrorCode::EfqOnNonBottom,
                          "efq needs a proof of Bot, '" + print_term(e.body) + "' has type " + print_type(ty), t->pos);
            check_is_type(env, e.target);
            TypeCon target = nf(e.target);
            if (contains_forall(target))
              throw Error(ErrorCode::EfqTargetContainsForall,
                          "efq target " + print_type(target) + " contains a universal quantifier", t->pos);
            return target;
          },
          [&](const auto&) -> TypeCon {
            throw Error(ErrorCode::ComputationTerm,
                        "computation terms are typed by the trace engine, not by infer_type", t->pos);
          },
      },
      t->node);
}

void TypeChecker::check_type(const Environment& env, const Term& t, const TypeCon& expected) const {
  TypeCon found = infer_type(env, t);
  if (!con_equiv(found, expected)) mismatch(t, expected, found);
}

}  // namespace olam
