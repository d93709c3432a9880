#include "olam/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "olam/overloaded.hpp"

namespace olam {

// --- construction ----------------------------------------------------------

namespace {

Term make(TermNode::Variant v, SourcePos pos = {}) {
  return std::make_shared<const TermNode>(TermNode{std::move(v), pos});
}
TypeCon make(ConNode::Variant v, SourcePos pos = {}) {
  return std::make_shared<const ConNode>(ConNode{std::move(v), pos});
}

}  // namespace

Term var(Name name, SourcePos pos) { return make(term::Var{std::move(name)}, pos); }
Term oracle_ref(Name oracle, SourcePos pos) { return make(term::OracleRef{std::move(oracle)}, pos); }
Term oracle_app(Name oracle, Term arg, SourcePos pos) {
  return make(term::OracleApp{std::move(oracle), std::move(arg)}, pos);
}
Term lam(Name binder, TypeCon domain, Term body, SourcePos pos) {
  return make(term::Lambda{std::move(binder), std::move(domain), std::move(body)}, pos);
}
Term app(Term fn, Term arg, SourcePos pos) { return make(term::App{std::move(fn), std::move(arg)}, pos); }
Term choice(Term left, Rational prob, Term right, SourcePos pos) {
  if (!prob.is_probability())
    throw Error(ErrorCode::ProbabilityOutOfRange, "choice probability " + prob.str() + " not in [0,1]", pos);
  return make(term::Choice{std::move(left), std::move(prob), std::move(right)}, pos);
}
Term nu(Term body, SourcePos pos) { return make(term::Nu{std::move(body)}, pos); }
Term pair(Term first, Term second, SourcePos pos) {
  return make(term::Pair{std::move(first), std::move(second)}, pos);
}
Term proj(Term body, int index, SourcePos pos) { return make(term::Proj{std::move(body), index}, pos); }
Term efq(Term body, TypeCon target, SourcePos pos) {
  return make(term::Efq{std::move(body), std::move(target)}, pos);
}
Term comp_list(std::vector<Term> steps, std::optional<Rational> prob) {
  if (prob && !prob->is_probability())
    throw Error(ErrorCode::ProbabilityOutOfRange, "computation probability not in [0,1]");
  return make(term::CompList{std::move(steps), std::move(prob)});
}
Term comp_merge(Term source, std::vector<std::vector<Term>> branches, Term target,
                std::optional<Rational> prob) {
  if (prob && !prob->is_probability())
    throw Error(ErrorCode::ProbabilityOutOfRange, "computation probability not in [0,1]");
  return make(term::CompMerge{std::move(source), std::move(branches), std::move(target), std::move(prob)});
}
Term hole(std::size_t index) { return make(term::Hole{index}); }

Term tuple(const std::vector<Term>& items) {
  if (items.empty()) throw std::invalid_argument("tuple of width 0");
  Term out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) out = pair(items[i], out);
  return out;
}

std::optional<std::vector<Term>> untuple(const Term& t, std::size_t width) {
  std::vector<Term> out;
  Term cur = t;
  for (std::size_t i = 1; i < width; ++i) {
    auto* p = as<term::Pair>(cur);
    if (!p) return std::nullopt;
    out.push_back(p->first);
    cur = p->second;
  }
  out.push_back(cur);
  return out;
}

TypeCon con_var(Name name, SourcePos pos) { return make(con::Var{std::move(name)}, pos); }
TypeCon con_lam(Name binder, TypeCon domain, TypeCon body, SourcePos pos) {
  return make(con::Lambda{std::move(binder), std::move(domain), std::move(body)}, pos);
}
TypeCon con_app(TypeCon fn, Term arg, SourcePos pos) { return make(con::App{std::move(fn), std::move(arg)}, pos); }
TypeCon forall(Name binder, TypeCon domain, TypeCon body, SourcePos pos) {
  return make(con::Forall{std::move(binder), std::move(domain), std::move(body)}, pos);
}
TypeCon arrow(TypeCon domain, TypeCon codomain, SourcePos pos) {
  Name binder = fresh_name(kArrowBinder, free_term_vars(codomain));
  return forall(std::move(binder), std::move(domain), std::move(codomain), pos);
}
TypeCon oplus(TypeCon body, SourcePos pos) { return make(con::Oplus{std::move(body)}, pos); }
TypeCon sigma(TypeCon body, SourcePos pos) { return make(con::Sigma{std::move(body)}, pos); }
TypeCon conj(TypeCon left, TypeCon right, SourcePos pos) {
  return make(con::And{std::move(left), std::move(right)}, pos);
}
TypeCon bottom(SourcePos pos) { return make(con::Bottom{}, pos); }

Kind star(SourcePos pos) { return std::make_shared<const KindNode>(KindNode{kind::Star{}, pos}); }
Kind pi(Name binder, TypeCon domain, Kind body, SourcePos pos) {
  return std::make_shared<const KindNode>(
      KindNode{kind::Pi{std::move(binder), std::move(domain), std::move(body)}, pos});
}

// --- variables -------------------------------------------------------------

namespace {

struct FreeVars {
  NameSet out;
  std::vector<Name> bound;

  bool is_bound(const Name& n) const { return std::find(bound.begin(), bound.end(), n) != bound.end(); }

  template <class Body>
  void binder(const Name& x, const TypeCon& domain, const Body& body) {
    visit(domain);
    bound.push_back(x);
    visit(body);
    bound.pop_back();
  }

  void visit(const Term& t) {
    std::visit(overloaded{
                   [&](const term::Var& v) {
                     if (!is_bound(v.name)) out.insert(v.name);
                   },
                   [&](const term::OracleRef&) {},
                   [&](const term::OracleApp& o) { visit(o.arg); },
                   [&](const term::Lambda& l) { binder(l.binder, l.domain, l.body); },
                   [&](const term::App& a) { visit(a.fn); visit(a.arg); },
                   [&](const term::Choice& c) { visit(c.left); visit(c.right); },
                   [&](const term::Nu& n) { visit(n.body); },
                   [&](const term::Pair& p) { visit(p.first); visit(p.second); },
                   [&](const term::Proj& p) { visit(p.body); },
                   [&](const term::Efq& e) { visit(e.body); visit(e.target); },
                   [&](const term::CompList& c) {
                     for (auto& s : c.steps) visit(s);
                   },
                   [&](const term::CompMerge& m) {
                     visit(m.source);
                     for (auto& b : m.branches)
                       for (auto& s : b) visit(s);
                     visit(m.target);
                   },
                   [&](const term::Hole&) {},
               },
               t->node);
  }

  void visit(const TypeCon& c) {
    std::visit(overloaded{
                   [&](const con::Var&) {},
                   [&](const con::Lambda& l) { binder(l.binder, l.domain, l.body); },
                   [&](const con::App& a) { visit(a.fn); visit(a.arg); },
                   [&](const con::Forall& f) { binder(f.binder, f.domain, f.body); },
                   [&](const con::Oplus& o) { visit(o.body); },
                   [&](const con::Sigma& s) { visit(s.body); },
                   [&](const con::And& a) { visit(a.left); visit(a.right); },
                   [&](const con::Bottom&) {},
               },
               c->node);
  }

  void visit(const Kind& k) {
    std::visit(overloaded{
                   [&](const kind::Star&) {},
                   [&](const kind::Pi& p) { binder(p.binder, p.domain, p.body); },
               },
               k->node);
  }
};

struct ConVars {
  NameSet out;
  bool oracles = false;  // collect oracle names instead

  void visit(const Term& t) {
    std::visit(overloaded{
                   [&](const term::Var&) {},
                   [&](const term::OracleRef& o) {
                     if (oracles) out.insert(o.oracle);
                   },
                   [&](const term::OracleApp& o) {
                     if (oracles) out.insert(o.oracle);
                     visit(o.arg);
                   },
                   [&](const term::Lambda& l) { visit(l.domain); visit(l.body); },
                   [&](const term::App& a) { visit(a.fn); visit(a.arg); },
                   [&](const term::Choice& c) { visit(c.left); visit(c.right); },
                   [&](const term::Nu& n) { visit(n.body); },
                   [&](const term::Pair& p) { visit(p.first); visit(p.second); },
                   [&](const term::Proj& p) { visit(p.body); },
                   [&](const term::Efq& e) { visit(e.body); visit(e.target); },
                   [&](const term::CompList& c) {
                     for (auto& s : c.steps) visit(s);
                   },
                   [&](const term::CompMerge& m) {
                     visit(m.source);
                     for (auto& b : m.branches)
                       for (auto& s : b) visit(s);
                     visit(m.target);
                   },
                   [&](const term::Hole&) {},
               },
               t->node);
  }

  void visit(const TypeCon& c) {
    std::visit(overloaded{
                   [&](const con::Var& v) {
                     if (!oracles) out.insert(v.name);
                   },
                   [&](const con::Lambda& l) { visit(l.domain); visit(l.body); },
                   [&](const con::App& a) { visit(a.fn); visit(a.arg); },
                   [&](const con::Forall& f) { visit(f.domain); visit(f.body); },
                   [&](const con::Oplus& o) { visit(o.body); },
                   [&](const con::Sigma& s) { visit(s.body); },
                   [&](const con::And& a) { visit(a.left); visit(a.right); },
                   [&](const con::Bottom&) {},
               },
               c->node);
  }

  void visit(const Kind& k) {
    if (auto* p = as<kind::Pi>(k)) {
      visit(p->domain);
      visit(p->body);
    }
  }
};

}  // namespace

NameSet free_term_vars(const Term& t) { FreeVars f; f.visit(t); return std::move(f.out); }
NameSet free_term_vars(const TypeCon& c) { FreeVars f; f.visit(c); return std::move(f.out); }
NameSet free_term_vars(const Kind& k) { FreeVars f; f.visit(k); return std::move(f.out); }

NameSet con_vars(const TypeCon& c) { ConVars v; v.visit(c); return std::move(v.out); }
NameSet con_vars(const Term& t) { ConVars v; v.visit(t); return std::move(v.out); }
NameSet con_vars(const Kind& k) { ConVars v; v.visit(k); return std::move(v.out); }

NameSet oracle_names(const Term& t) {
  ConVars v;
  v.oracles = true;
  v.visit(t);
  return std::move(v.out);
}

Name fresh_name(const Name& base, const NameSet& avoid) {
  if (!avoid.contains(base)) return base;
  // Strip a trailing numeric suffix so x1 freshens to x2, not x11.
  std::size_t end = base.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(base[end - 1]))) --end;
  Name stem = end == 0 ? base : base.substr(0, end);
  for (std::size_t i = 1;; ++i) {
    Name candidate = stem + std::to_string(i);
    if (!avoid.contains(candidate)) return candidate;
  }
}

// --- substitution ----------------------------------------------------------

namespace {

bool free_in(const Name& x, const Term& t) { return free_term_vars(t).contains(x); }
bool free_in(const Name& x, const TypeCon& c) { return free_term_vars(c).contains(x); }
bool free_in(const Name& x, const Kind& k) { return free_term_vars(k).contains(x); }

struct Substituter {
  const Name& x;
  const Term& s;
  NameSet fv_s;

  // Substitutes under a binder, renaming it when it would capture a free
  // variable of s. Returns the (possibly renamed) binder and new body.
  template <class Body>
  std::pair<Name, Body> under_binder(const Name& y, const Body& body) {
    if (y == x || !free_in(x, body)) return {y, body};
    if (!fv_s.contains(y)) return {y, apply(body)};
    NameSet avoid = fv_s;
    avoid.merge(free_term_vars(body));
    avoid.insert(x);
    Name fresh = fresh_name(y, avoid);
    Body renamed = rename(body, y, fresh);
    return {fresh, apply(renamed)};
  }

  static Term rename(const Term& body, const Name& from, const Name& to) {
    return substitute_term(body, from, var(to));
  }
  static TypeCon rename(const TypeCon& body, const Name& from, const Name& to) {
    return substitute_in_con(body, from, var(to));
  }
  static Kind rename(const Kind& body, const Name& from, const Name& to) {
    return substitute_in_kind(body, from, var(to));
  }

  Term apply(const Term& t) {
    if (!free_in(x, t)) return t;
    const SourcePos pos = t->pos;
    return std::visit(
        overloaded{
            [&](const term::Var& v) -> Term { return v.name == x ? s : t; },
            [&](const term::OracleRef&) -> Term { return t; },
            [&](const term::OracleApp& o) -> Term { return oracle_app(o.oracle, apply(o.arg), pos); },
            [&](const term::Lambda& l) -> Term {
              TypeCon dom = apply(l.domain);
              auto [y, body] = under_binder(l.binder, l.body);
              return lam(y, dom, body, pos);
            },
            [&](const term::App& a) -> Term { return app(apply(a.fn), apply(a.arg), pos); },
            [&](const term::Choice& c) -> Term { return choice(apply(c.left), c.prob, apply(c.right), pos); },
            [&](const term::Nu& n) -> Term { return nu(apply(n.body), pos); },
            [&](const term::Pair& p) -> Term { return pair(apply(p.first), apply(p.second), pos); },
            [&](const term::Proj& p) -> Term { return proj(apply(p.body), p.index, pos); },
            [&](const term::Efq& e) -> Term { return efq(apply(e.body), apply(e.target), pos); },
            [&](const term::CompList& c) -> Term {
              std::vector<Term> steps;
              for (auto& st : c.steps) steps.push_back(apply(st));
              return comp_list(std::move(steps), c.prob);
            },
            [&](const term::CompMerge& m) -> Term {
              std::vector<std::vector<Term>> branches;
              for (auto& b : m.branches) {
                std::vector<Term> nb;
                for (auto& st : b) nb.push_back(apply(st));
                branches.push_back(std::move(nb));
              }
              return comp_merge(apply(m.source), std::move(branches), apply(m.target), m.prob);
            },
            [&](const term::Hole&) -> Term { return t; },
        },
        t->node);
  }

  TypeCon apply(const TypeCon& c) {
    if (!free_in(x, c)) return c;
    const SourcePos pos = c->pos;
    return std::visit(overloaded{
                          [&](const con::Var&) -> TypeCon { return c; },
                          [&](const con::Lambda& l) -> TypeCon {
                            TypeCon dom = apply(l.domain);
                            auto [y, body] = under_binder(l.binder, l.body);
                            return con_lam(y, dom, body, pos);
                          },
                          [&](const con::App& a) -> TypeCon { return con_app(apply(a.fn), apply(a.arg), pos); },
                          [&](const con::Forall& f) -> TypeCon {
                            TypeCon dom = apply(f.domain);
                            auto [y, body] = under_binder(f.binder, f.body);
                            return forall(y, dom, body, pos);
                          },
                          [&](const con::Oplus& o) -> TypeCon { return oplus(apply(o.body), pos); },
                          [&](const con::Sigma& sg) -> TypeCon { return sigma(apply(sg.body), pos); },
                          [&](const con::And& a) -> TypeCon { return conj(apply(a.left), apply(a.right), pos); },
                          [&](const con::Bottom&) -> TypeCon { return c; },
                      },
                      c->node);
  }

  Kind apply(const Kind& k) {
    if (!free_in(x, k)) return k;
    auto& p = std::get<kind::Pi>(k->node);
    TypeCon dom = apply(p.domain);
    auto [y, body] = under_binder(p.binder, p.body);
    return pi(y, dom, body, k->pos);
  }
};

}  // namespace

Term substitute_term(const Term& t, const Name& x, const Term& s) {
  Substituter sub{x, s, free_term_vars(s)};
  return sub.apply(t);
}

TypeCon substitute_in_con(const TypeCon& phi, const Name& x, const Term& t) {
  Substituter sub{x, t, free_term_vars(t)};
  return sub.apply(phi);
}

Kind substitute_in_kind(const Kind& k, const Name& x, const Term& t) {
  Substituter sub{x, t, free_term_vars(t)};
  return sub.apply(k);
}

// --- alpha equivalence -----------------------------------------------------

namespace {

struct AlphaEq {
  std::vector<Name> left;
  std::vector<Name> right;

  static std::ptrdiff_t depth_of(const std::vector<Name>& scope, const Name& n) {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i] == n) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }

  bool same_var(const Name& a, const Name& b) const {
    auto i = depth_of(left, a);
    auto j = depth_of(right, b);
    if (i < 0 && j < 0) return a == b;
    return i == j;
  }

  template <class Body>
  bool binder(const Name& xa, const TypeCon& da, const Body& ba, const Name& xb, const TypeCon& db,
              const Body& bb) {
    if (!eq(da, db)) return false;
    left.push_back(xa);
    right.push_back(xb);
    bool r = eq(ba, bb);
    left.pop_back();
    right.pop_back();
    return r;
  }

  bool eq_lists(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!eq(a[i], b[i])) return false;
    return true;
  }

  bool eq(const Term& a, const Term& b) {
    if (a == b && left == right) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        overloaded{
            [&](const term::Var& x) { return same_var(x.name, std::get<term::Var>(b->node).name); },
            [&](const term::OracleRef& o) { return o.oracle == std::get<term::OracleRef>(b->node).oracle; },
            [&](const term::OracleApp& o) {
              auto& q = std::get<term::OracleApp>(b->node);
              return o.oracle == q.oracle && eq(o.arg, q.arg);
            },
            [&](const term::Lambda& l) {
              auto& m = std::get<term::Lambda>(b->node);
              return binder(l.binder, l.domain, l.body, m.binder, m.domain, m.body);
            },
            [&](const term::App& x) {
              auto& y = std::get<term::App>(b->node);
              return eq(x.fn, y.fn) && eq(x.arg, y.arg);
            },
            [&](const term::Choice& x) {
              auto& y = std::get<term::Choice>(b->node);
              return x.prob == y.prob && eq(x.left, y.left) && eq(x.right, y.right);
            },
            [&](const term::Nu& x) { return eq(x.body, std::get<term::Nu>(b->node).body); },
            [&](const term::Pair& x) {
              auto& y = std::get<term::Pair>(b->node);
              return eq(x.first, y.first) && eq(x.second, y.second);
            },
            [&](const term::Proj& x) {
              auto& y = std::get<term::Proj>(b->node);
              return x.index == y.index && eq(x.body, y.body);
            },
            [&](const term::Efq& x) {
              auto& y = std::get<term::Efq>(b->node);
              return eq(x.body, y.body) && eq(x.target, y.target);
            },
            [&](const term::CompList& x) {
              auto& y = std::get<term::CompList>(b->node);
              return x.prob == y.prob && eq_lists(x.steps, y.steps);
            },
            [&](const term::CompMerge& x) {
              auto& y = std::get<term::CompMerge>(b->node);
              if (x.prob != y.prob || x.branches.size() != y.branches.size()) return false;
              for (std::size_t i = 0; i < x.branches.size(); ++i)
                if (!eq_lists(x.branches[i], y.branches[i])) return false;
              return eq(x.source, y.source) && eq(x.target, y.target);
            },
            [&](const term::Hole& h) { return h.index == std::get<term::Hole>(b->node).index; },
        },
        a->node);
  }

  bool eq(const TypeCon& a, const TypeCon& b) {
    if (a == b && left == right) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(overloaded{
                          [&](const con::Var& x) { return x.name == std::get<con::Var>(b->node).name; },
                          [&](const con::Lambda& l) {
                            auto& m = std::get<con::Lambda>(b->node);
                            return binder(l.binder, l.domain, l.body, m.binder, m.domain, m.body);
                          },
                          [&](const con::App& x) {
                            auto& y = std::get<con::App>(b->node);
                            return eq(x.fn, y.fn) && eq(x.arg, y.arg);
                          },
                          [&](const con::Forall& l) {
                            auto& m = std::get<con::Forall>(b->node);
                            return binder(l.binder, l.domain, l.body, m.binder, m.domain, m.body);
                          },
                          [&](const con::Oplus& x) { return eq(x.body, std::get<con::Oplus>(b->node).body); },
                          [&](const con::Sigma& x) { return eq(x.body, std::get<con::Sigma>(b->node).body); },
                          [&](const con::And& x) {
                            auto& y = std::get<con::And>(b->node);
                            return eq(x.left, y.left) && eq(x.right, y.right);
                          },
                          [&](const con::Bottom&) { return true; },
                      },
                      a->node);
  }

  bool eq(const Kind& a, const Kind& b) {
    if (a->node.index() != b->node.index()) return false;
    auto* p = as<kind::Pi>(a);
    if (!p) return true;
    auto& q = std::get<kind::Pi>(b->node);
    return binder(p->binder, p->domain, p->body, q.binder, q.domain, q.body);
  }
};

struct Canonicalizer {
  Name prefix;
  std::vector<std::pair<Name, Name>> scope;

  explicit Canonicalizer(const NameSet& free) : prefix("v") {
    auto clashes = [&] {
      for (auto& n : free) {
        if (n.size() <= prefix.size() || n.compare(0, prefix.size(), prefix) != 0) continue;
        if (std::all_of(n.begin() + static_cast<std::ptrdiff_t>(prefix.size()), n.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          return true;
      }
      return false;
    };
    while (clashes()) prefix += "v";
  }

  Name lookup(const Name& n) const {
    for (std::size_t i = scope.size(); i-- > 0;)
      if (scope[i].first == n) return scope[i].second;
    return n;
  }

  template <class Body, class Rebuild>
  auto binder(const Name& x, const TypeCon& domain, const Body& body, Rebuild rebuild) {
    TypeCon dom = run(domain);
    Name fresh = prefix + std::to_string(scope.size());
    scope.emplace_back(x, fresh);
    auto b = run(body);
    scope.pop_back();
    return rebuild(fresh, dom, b);
  }

  Term run(const Term& t) {
    return std::visit(
        overloaded{
            [&](const term::Var& v) -> Term { return var(lookup(v.name), t->pos); },
            [&](const term::OracleRef&) -> Term { return t; },
            [&](const term::OracleApp& o) -> Term { return oracle_app(o.oracle, run(o.arg), t->pos); },
            [&](const term::Lambda& l) -> Term {
              return binder(l.binder, l.domain, l.body,
                            [&](const Name& x, TypeCon d, Term b) { return lam(x, d, b, t->pos); });
            },
            [&](const term::App& a) -> Term { return app(run(a.fn), run(a.arg), t->pos); },
            [&](const term::Choice& c) -> Term { return choice(run(c.left), c.prob, run(c.right), t->pos); },
            [&](const term::Nu& n) -> Term { return nu(run(n.body), t->pos); },
            [&](const term::Pair& p) -> Term { return pair(run(p.first), run(p.second), t->pos); },
            [&](const term::Proj& p) -> Term { return proj(run(p.body), p.index, t->pos); },
            [&](const term::Efq& e) -> Term { return efq(run(e.body), run(e.target), t->pos); },
            [&](const term::CompList& c) -> Term {
              std::vector<Term> steps;
              for (auto& s : c.steps) steps.push_back(run(s));
              return comp_list(std::move(steps), c.prob);
            },
            [&](const term::CompMerge& m) -> Term {
              std::vector<std::vector<Term>> branches;
              for (auto& b : m.branches) {
                std::vector<Term> nb;
                for (auto& s : b) nb.push_back(run(s));
                branches.push_back(std::move(nb));
              }
              return comp_merge(run(m.source), std::move(branches), run(m.target), m.prob);
            },
            [&](const term::Hole&) -> Term { return t; },
        },
        t->node);
  }

  TypeCon run(const TypeCon& c) {
    return std::visit(overloaded{
                          [&](const con::Var&) -> TypeCon { return c; },
                          [&](const con::Lambda& l) -> TypeCon {
                            return binder(l.binder, l.domain, l.body, [&](const Name& x, TypeCon d, TypeCon b) {
                              return con_lam(x, d, b, c->pos);
                            });
                          },
                          [&](const con::App& a) -> TypeCon { return con_app(run(a.fn), run(a.arg), c->pos); },
                          [&](const con::Forall& f) -> TypeCon {
                            return binder(f.binder, f.domain, f.body, [&](const Name& x, TypeCon d, TypeCon b) {
                              return forall(x, d, b, c->pos);
                            });
                          },
                          [&](const con::Oplus& o) -> TypeCon { return oplus(run(o.body), c->pos); },
                          [&](const con::Sigma& s) -> TypeCon { return sigma(run(s.body), c->pos); },
                          [&](const con::And& a) -> TypeCon { return conj(run(a.left), run(a.right), c->pos); },
                          [&](const con::Bottom&) -> TypeCon { return c; },
                      },
                      c->node);
  }

  Kind run(const Kind& k) {
    auto* p = as<kind::Pi>(k);
    if (!p) return k;
    return binder(p->binder, p->domain, p->body,
                  [&](const Name& x, TypeCon d, Kind b) { return pi(x, d, b, k->pos); });
  }
};

}  // namespace

bool alpha_eq(const Term& a, const Term& b) { return AlphaEq{}.eq(a, b); }
bool alpha_eq(const TypeCon& a, const TypeCon& b) { return AlphaEq{}.eq(a, b); }
bool alpha_eq(const Kind& a, const Kind& b) { return AlphaEq{}.eq(a, b); }

Term alpha_normalize(const Term& t) { return Canonicalizer(free_term_vars(t)).run(t); }
TypeCon alpha_normalize(const TypeCon& c) { return Canonicalizer(free_term_vars(c)).run(c); }
Kind alpha_normalize(const Kind& k) { return Canonicalizer(free_term_vars(k)).run(k); }

// --- positions -------------------------------------------------------------

namespace {

[[noreturn]] void bad_path() { throw Error(ErrorCode::InvalidRedexPath, "path does not address a subterm"); }

const Term* child(const Term& t, std::size_t i) {
  return std::visit(overloaded{
                        [&](const term::OracleApp& o) -> const Term* { return i == 0 ? &o.arg : nullptr; },
                        [&](const term::Lambda& l) -> const Term* { return i == 0 ? &l.body : nullptr; },
                        [&](const term::App& a) -> const Term* {
                          return i == 0 ? &a.fn : i == 1 ? &a.arg : nullptr;
                        },
                        [&](const term::Choice& c) -> const Term* {
                          return i == 0 ? &c.left : i == 1 ? &c.right : nullptr;
                        },
                        [&](const term::Nu& n) -> const Term* { return i == 0 ? &n.body : nullptr; },
                        [&](const term::Pair& p) -> const Term* {
                          return i == 0 ? &p.first : i == 1 ? &p.second : nullptr;
                        },
                        [&](const term::Proj& p) -> const Term* { return i == 0 ? &p.body : nullptr; },
                        [&](const term::Efq& e) -> const Term* { return i == 0 ? &e.body : nullptr; },
                        [&](const auto&) -> const Term* { return nullptr; },
                    },
                    t->node);
}

Term with_child(const Term& t, std::size_t i, const Term& c) {
  const SourcePos pos = t->pos;
  return std::visit(overloaded{
                        [&](const term::OracleApp& o) -> Term { return oracle_app(o.oracle, c, pos); },
                        [&](const term::Lambda& l) -> Term { return lam(l.binder, l.domain, c, pos); },
                        [&](const term::App& a) -> Term { return i == 0 ? app(c, a.arg, pos) : app(a.fn, c, pos); },
                        [&](const term::Choice& ch) -> Term {
                          return i == 0 ? choice(c, ch.prob, ch.right, pos) : choice(ch.left, ch.prob, c, pos);
                        },
                        [&](const term::Nu&) -> Term { return nu(c, pos); },
                        [&](const term::Pair& p) -> Term {
                          return i == 0 ? pair(c, p.second, pos) : pair(p.first, c, pos);
                        },
                        [&](const term::Proj& p) -> Term { return proj(c, p.index, pos); },
                        [&](const term::Efq& e) -> Term { return efq(c, e.target, pos); },
                        [&](const auto&) -> Term { bad_path(); },
                    },
                    t->node);
}

const TypeCon* con_child(const TypeCon& c, std::size_t i) {
  return std::visit(overloaded{
                        [&](const con::Lambda& l) -> const TypeCon* {
                          return i == 0 ? &l.domain : i == 1 ? &l.body : nullptr;
                        },
                        [&](const con::App& a) -> const TypeCon* { return i == 0 ? &a.fn : nullptr; },
                        [&](const con::Forall& f) -> const TypeCon* {
                          return i == 0 ? &f.domain : i == 1 ? &f.body : nullptr;
                        },
                        [&](const con::Oplus& o) -> const TypeCon* { return i == 0 ? &o.body : nullptr; },
                        [&](const con::Sigma& s) -> const TypeCon* { return i == 0 ? &s.body : nullptr; },
                        [&](const con::And& a) -> const TypeCon* {
                          return i == 0 ? &a.left : i == 1 ? &a.right : nullptr;
                        },
                        [&](const auto&) -> const TypeCon* { return nullptr; },
                    },
                    c->node);
}

TypeCon with_con_child(const TypeCon& c, std::size_t i, const TypeCon& n) {
  const SourcePos pos = c->pos;
  return std::visit(
      overloaded{
          [&](const con::Lambda& l) -> TypeCon {
            return i == 0 ? con_lam(l.binder, n, l.body, pos) : con_lam(l.binder, l.domain, n, pos);
          },
          [&](const con::App& a) -> TypeCon { return con_app(n, a.arg, pos); },
          [&](const con::Forall& f) -> TypeCon {
            return i == 0 ? forall(f.binder, n, f.body, pos) : forall(f.binder, f.domain, n, pos);
          },
          [&](const con::Oplus&) -> TypeCon { return oplus(n, pos); },
          [&](const con::Sigma&) -> TypeCon { return sigma(n, pos); },
          [&](const con::And& a) -> TypeCon { return i == 0 ? conj(n, a.right, pos) : conj(a.left, n, pos); },
          [&](const auto&) -> TypeCon { bad_path(); },
      },
      c->node);
}

}  // namespace

const Term& subterm_at(const Term& t, const Path& path) {
  const Term* cur = &t;
  for (std::size_t i : path) {
    cur = child(*cur, i);
    if (!cur) bad_path();
  }
  return *cur;
}

Term replace_at(const Term& t, const Path& path, const Term& replacement) {
  if (path.empty()) return replacement;
  std::vector<const Term*> spine{&t};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Term* next = child(*spine.back(), path[i]);
    if (!next) bad_path();
    spine.push_back(next);
  }
  if (!child(*spine.back(), path.back())) bad_path();
  Term out = replacement;
  for (std::size_t i = path.size(); i-- > 0;) out = with_child(*spine[i], path[i], out);
  return out;
}

const TypeCon& subcon_at(const TypeCon& c, const Path& path) {
  const TypeCon* cur = &c;
  for (std::size_t i : path) {
    cur = con_child(*cur, i);
    if (!cur) bad_path();
  }
  return *cur;
}

TypeCon replace_con_at(const TypeCon& c, const Path& path, const TypeCon& replacement) {
  if (path.empty()) return replacement;
  std::vector<const TypeCon*> spine{&c};
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const TypeCon* next = con_child(*spine.back(), path[i]);
    if (!next) bad_path();
    spine.push_back(next);
  }
  if (!con_child(*spine.back(), path.back())) bad_path();
  TypeCon out = replacement;
  for (std::size_t i = path.size(); i-- > 0;) out = with_con_child(*spine[i], path[i], out);
  return out;
}

}  // namespace olam
