#include "olam/constructor.hpp"

#include <sstream>

#include "olam/overloaded.hpp"

namespace olam {

namespace {

bool is_con_redex(const TypeCon& c) {
  auto* a = as<con::App>(c);
  return a && as<con::Lambda>(a->fn);
}

/// Constructor children in position order.
std::vector<const TypeCon*> con_children(const TypeCon& c) {
  return std::visit(overloaded{
                        [](const con::Lambda& l) { return std::vector<const TypeCon*>{&l.domain, &l.body}; },
                        [](const con::App& a) { return std::vector<const TypeCon*>{&a.fn}; },
                        [](const con::Forall& f) { return std::vector<const TypeCon*>{&f.domain, &f.body}; },
                        [](const con::Oplus& o) { return std::vector<const TypeCon*>{&o.body}; },
                        [](const con::Sigma& s) { return std::vector<const TypeCon*>{&s.body}; },
                        [](const con::And& a) { return std::vector<const TypeCon*>{&a.left, &a.right}; },
                        [](const auto&) { return std::vector<const TypeCon*>{}; },
                    },
                    c->node);
}

void collect(const TypeCon& c, Path& path, std::vector<ConRedex>& out) {
  if (is_con_redex(c)) out.push_back(ConRedex{path});
  auto kids = con_children(c);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(i);
    collect(*kids[i], path, out);
    path.pop_back();
  }
}

bool rightmost_innermost(const TypeCon& c, Path& path) {
  auto kids = con_children(c);
  for (std::size_t i = kids.size(); i-- > 0;) {
    path.push_back(i);
    if (rightmost_innermost(*kids[i], path)) return true;
    path.pop_back();
  }
  return is_con_redex(c);
}

bool leftmost_outermost(const TypeCon& c, Path& path) {
  if (is_con_redex(c)) return true;
  auto kids = con_children(c);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(i);
    if (leftmost_outermost(*kids[i], path)) return true;
    path.pop_back();
  }
  return false;
}

// --- deterministic term steps ------------------------------------------------

std::vector<const Term*> term_children(const Term& t) {
  using V = std::vector<const Term*>;
  return std::visit(overloaded{
                        [](const term::OracleApp& o) { return V{&o.arg}; },
                        [](const term::Lambda& l) { return V{&l.body}; },
                        [](const term::App& a) { return V{&a.fn, &a.arg}; },
                        [](const term::Choice& c) { return V{&c.left, &c.right}; },
                        [](const term::Nu& n) { return V{&n.body}; },
                        [](const term::Pair& p) { return V{&p.first, &p.second}; },
                        [](const term::Proj& p) { return V{&p.body}; },
                        [](const term::Efq& e) { return V{&e.body}; },
                        [](const auto&) { return V{}; },
                    },
                    t->node);
}

std::optional<Term> contract_deterministic(const Term& t) {
  if (auto* a = as<term::App>(t)) {
    if (auto* l = as<term::Lambda>(a->fn)) return substitute_term(l->body, l->binder, a->arg);
  }
  if (auto* p = as<term::Proj>(t)) {
    if (auto* pr = as<term::Pair>(p->body)) return p->index == 0 ? pr->first : pr->second;
  }
  return std::nullopt;
}

bool first_deterministic(const Term& t, Path& path) {
  if (contract_deterministic(t)) return true;
  auto kids = term_children(t);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(i);
    if (first_deterministic(*kids[i], path)) return true;
    path.pop_back();
  }
  return false;
}

Term normalize_annotations(const Term& t, std::size_t fuel) {
  auto rec = [&](const Term& s) { return normalize_annotations(s, fuel); };
  return std::visit(overloaded{
                        [&](const term::OracleApp& o) { return oracle_app(o.oracle, rec(o.arg), t->pos); },
                        [&](const term::Lambda& l) {
                          return lam(l.binder, deep_normalize(l.domain, fuel), rec(l.body), t->pos);
                        },
                        [&](const term::App& a) { return app(rec(a.fn), rec(a.arg), t->pos); },
                        [&](const term::Choice& c) { return choice(rec(c.left), c.prob, rec(c.right), t->pos); },
                        [&](const term::Nu& n) { return nu(rec(n.body), t->pos); },
                        [&](const term::Pair& p) { return pair(rec(p.first), rec(p.second), t->pos); },
                        [&](const term::Proj& p) { return proj(rec(p.body), p.index, t->pos); },
                        [&](const term::Efq& e) { return efq(rec(e.body), deep_normalize(e.target, fuel), t->pos); },
                        [&](const auto&) { return t; },
                    },
                    t->node);
}

[[noreturn]] void out_of_fuel(std::size_t fuel) {
  throw Error(ErrorCode::FuelExhausted, "no normal form within " + std::to_string(fuel) + " steps");
}

void write_skeleton(const TypeCon& c, std::ostream& os) {
  std::visit(overloaded{
                 [&](const con::Var& v) { os << v.name; },
                 [&](const con::Lambda& l) {
                   os << "(lam ";
                   write_skeleton(l.domain, os);
                   os << ' ';
                   write_skeleton(l.body, os);
                   os << ')';
                 },
                 [&](const con::App& a) {
                   os << "(app ";
                   write_skeleton(a.fn, os);
                   os << " _)";
                 },
                 [&](const con::Forall& f) {
                   os << "(forall ";
                   write_skeleton(f.domain, os);
                   os << ' ';
                   write_skeleton(f.body, os);
                   os << ')';
                 },
                 [&](const con::Oplus& o) {
                   os << "(oplus ";
                   write_skeleton(o.body, os);
                   os << ')';
                 },
                 [&](const con::Sigma& s) {
                   os << "(sigma ";
                   write_skeleton(s.body, os);
                   os << ')';
                 },
                 [&](const con::And& a) {
                   os << "(and ";
                   write_skeleton(a.left, os);
                   os << ' ';
                   write_skeleton(a.right, os);
                   os << ')';
                 },
                 [&](const con::Bottom&) { os << "Bot"; },
             },
             c->node);
}

}  // namespace

std::vector<ConRedex> find_con_redexes(const TypeCon& phi) {
  std::vector<ConRedex> out;
  Path path;
  collect(phi, path, out);
  return out;
}

std::optional<ConRedex> select_con_redex(const TypeCon& phi, ConStrategy strategy) {
  Path path;
  bool found = strategy == ConStrategy::LeftmostOutermost ? leftmost_outermost(phi, path)
                                                          : rightmost_innermost(phi, path);
  if (!found) return std::nullopt;
  return ConRedex{std::move(path)};
}

TypeCon con_step(const TypeCon& phi, const ConRedex& r) {
  const TypeCon& at = subcon_at(phi, r.path);
  if (!is_con_redex(at)) throw Error(ErrorCode::InvalidRedexPath, "no constructor redex at the given path");
  auto& a = std::get<con::App>(at->node);
  auto& l = std::get<con::Lambda>(a.fn->node);
  return replace_con_at(phi, r.path, substitute_in_con(l.body, l.binder, a.arg));
}

TypeCon normalize_con(const TypeCon& phi, ConStrategy strategy, std::size_t fuel) {
  TypeCon cur = phi;
  for (std::size_t used = 0;; ++used) {
    auto r = select_con_redex(cur, strategy);
    if (!r) return cur;
    if (used == fuel) out_of_fuel(fuel);
    cur = con_step(cur, *r);
  }
}

Kind normalize_kind(const Kind& k, std::size_t fuel) {
  if (auto* p = as<kind::Pi>(k))
    return pi(p->binder, deep_normalize(p->domain, fuel), normalize_kind(p->body, fuel), k->pos);
  return k;
}

Term normalize_deterministic(const Term& t, std::size_t fuel) {
  Term cur = t;
  for (std::size_t used = 0;; ++used) {
    Path path;
    if (!first_deterministic(cur, path)) break;
    if (used == fuel) out_of_fuel(fuel);
    cur = replace_at(cur, path, *contract_deterministic(subterm_at(cur, path)));
  }
  return normalize_annotations(cur, fuel);
}

TypeCon deep_normalize(const TypeCon& phi, std::size_t fuel) {
  struct Walk {
    std::size_t fuel;
    TypeCon run(const TypeCon& c) const {
      return std::visit(overloaded{
                            [&](const con::Lambda& l) { return con_lam(l.binder, run(l.domain), run(l.body), c->pos); },
                            [&](const con::App& a) {
                              return con_app(run(a.fn), normalize_deterministic(a.arg, fuel), c->pos);
                            },
                            [&](const con::Forall& f) { return forall(f.binder, run(f.domain), run(f.body), c->pos); },
                            [&](const con::Oplus& o) { return oplus(run(o.body), c->pos); },
                            [&](const con::Sigma& s) { return sigma(run(s.body), c->pos); },
                            [&](const con::And& a) { return conj(run(a.left), run(a.right), c->pos); },
                            [&](const auto&) { return c; },
                        },
                        c->node);
    }
  };
  return Walk{fuel}.run(normalize_con(phi, ConStrategy::LeftmostOutermost, fuel));
}

bool con_equiv(const TypeCon& a, const TypeCon& b) {
  if (alpha_eq(a, b)) return true;
  return alpha_eq(deep_normalize(a), deep_normalize(b));
}

bool kind_equiv(const Kind& a, const Kind& b) {
  if (alpha_eq(a, b)) return true;
  return alpha_eq(normalize_kind(a), normalize_kind(b));
}

std::string skeleton(const TypeCon& phi) {
  std::ostringstream os;
  write_skeleton(phi, os);
  return os.str();
}

}  // namespace olam
