#include <sstream>

#include "olam/overloaded.hpp"
#include "olam/surface.hpp"

namespace olam {

namespace {

// Term levels: 0 lambda, 1 application, 2 postfix, 3 atom.
// Type levels: 0 binders and arrows, 1 conjunction, 2 Oplus/Sigma,
// 3 constructor application, 4 atom.
class Printer {
 public:
  std::string term(const Term& t) {
    emit(t, 0);
    return out_.str();
  }
  std::string type(const TypeCon& c) {
    emit(c, 0);
    return out_.str();
  }
  std::string kind(const Kind& k) {
    emit(k);
    return out_.str();
  }

 private:
  static int level(const Term& t) {
    return std::visit(overloaded{
                          [](const term::Lambda&) { return 0; },
                          [](const term::App&) { return 1; },
                          [](const term::OracleApp&) { return 1; },
                          [](const term::Nu&) { return 2; },
                          [](const term::Proj&) { return 2; },
                          [](const auto&) { return 3; },
                      },
                      t->node);
  }

  static int level(const TypeCon& c) {
    return std::visit(overloaded{
                          [](const con::Lambda&) { return 0; },
                          [](const con::Forall&) { return 0; },
                          [](const con::And&) { return 1; },
                          [](const con::Oplus&) { return 2; },
                          [](const con::Sigma&) { return 2; },
                          [](const con::App&) { return 3; },
                          [](const auto&) { return 4; },
                      },
                      c->node);
  }

  void emit(const Term& t, int min) {
    bool paren = level(t) < min;
    if (paren) out_ << '(';
    std::visit(overloaded{
                   [&](const term::Var& v) { out_ << v.name; },
                   [&](const term::OracleRef& o) { out_ << '#' << o.oracle; },
                   [&](const term::OracleApp& o) {
                     out_ << '#' << o.oracle << ' ';
                     emit(o.arg, 2);
                   },
                   [&](const term::Lambda& l) {
                     out_ << '\\' << l.binder << ':';
                     emit(l.domain, 0);
                     out_ << ". ";
                     emit(l.body, 0);
                   },
                   [&](const term::App& a) {
                     if (as<term::OracleRef>(a.fn)) {
                       out_ << '(';
                       emit(a.fn, 0);
                       out_ << ')';
                     } else {
                       emit(a.fn, 1);
                     }
                     out_ << ' ';
                     emit(a.arg, 2);
                   },
                   [&](const term::Choice& c) {
                     out_ << "choose[" << c.prob.str() << "]{";
                     emit(c.left, 0);
                     out_ << "}{";
                     emit(c.right, 0);
                     out_ << '}';
                   },
                   [&](const term::Nu& n) {
                     emit(n.body, 2);
                     out_ << " !";
                   },
                   [&](const term::Pair& p) {
                     out_ << '<';
                     emit(p.first, 0);
                     out_ << ", ";
                     emit(p.second, 0);
                     out_ << '>';
                   },
                   [&](const term::Proj& p) {
                     emit(p.body, 2);
                     out_ << '.' << p.index;
                   },
                   [&](const term::Efq& e) {
                     out_ << "efq(";
                     emit(e.body, 0);
                     out_ << " : ";
                     emit(e.target, 0);
                     out_ << ')';
                   },
                   [&](const term::CompList& c) {
                     list(c.steps);
                     suffix(c.prob);
                   },
                   [&](const term::CompMerge& m) {
                     out_ << '[';
                     emit(m.source, 0);
                     out_ << ", [";
                     for (std::size_t i = 0; i < m.branches.size(); ++i) {
                       if (i) out_ << " / ";
                       list(m.branches[i]);
                     }
                     out_ << "], ";
                     emit(m.target, 0);
                     out_ << ']';
                     suffix(m.prob);
                   },
                   [&](const term::Hole& h) { out_ << "[_" << h.index << ']'; },
               },
               t->node);
    if (paren) out_ << ')';
  }

  void list(const std::vector<Term>& items) {
    out_ << '[';
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out_ << ", ";
      emit(items[i], 0);
    }
    out_ << ']';
  }

  void suffix(const std::optional<Rational>& p) {
    if (p) out_ << '^' << p->str();
  }

  void emit(const TypeCon& c, int min) {
    bool paren = level(c) < min;
    if (paren) out_ << '(';
    std::visit(overloaded{
                   [&](const con::Var& v) { out_ << v.name; },
                   [&](const con::Lambda& l) {
                     out_ << "\\\\" << l.binder << ':';
                     emit(l.domain, 0);
                     out_ << ". ";
                     emit(l.body, 0);
                   },
                   [&](const con::App& a) {
                     emit(a.fn, 3);
                     out_ << ' ';
                     emit(a.arg, 2);
                   },
                   [&](const con::Forall& f) {
                     if (!free_term_vars(f.body).contains(f.binder)) {
                       emit(f.domain, 1);
                       out_ << " -> ";
                       emit(f.body, 0);
                     } else {
                       out_ << "forall " << f.binder << ':';
                       emit(f.domain, 0);
                       out_ << ". ";
                       emit(f.body, 0);
                     }
                   },
                   [&](const con::Oplus& o) {
                     out_ << "Oplus ";
                     emit(o.body, 2);
                   },
                   [&](const con::Sigma& s) {
                     out_ << "Sigma ";
                     emit(s.body, 2);
                   },
                   [&](const con::And& a) {
                     emit(a.left, 2);
                     out_ << " /\\ ";
                     emit(a.right, 1);
                   },
                   [&](const con::Bottom&) { out_ << "Bot"; },
               },
               c->node);
    if (paren) out_ << ')';
  }

  void emit(const Kind& k) {
    std::visit(overloaded{
                   [&](const kind::Star&) { out_ << '*'; },
                   [&](const kind::Pi& p) {
                     out_ << "Pi " << p.binder << ':';
                     emit(p.domain, 0);
                     out_ << ". ";
                     emit(p.body);
                   },
               },
               k->node);
  }

  std::ostringstream out_;
};

}  // namespace

std::string print_term(const Term& t) { return Printer().term(t); }
std::string print_type(const TypeCon& c) { return Printer().type(c); }
std::string print_kind(const Kind& k) { return Printer().kind(k); }

std::string canonical_form(const Term& t) { return print_term(alpha_normalize(t)); }
std::string canonical_form(const TypeCon& c) { return print_type(alpha_normalize(c)); }

}  // namespace olam
