#include "olam/reducer.hpp"

#include <random>
#include <set>

#include "olam/context.hpp"
#include "olam/oracle.hpp"
#include "olam/overloaded.hpp"
#include "olam/surface.hpp"

namespace olam {

std::string_view label_name(Label l) {
  switch (l) {
    case Label::Beta: return "beta";
    case Label::Left: return "left";
    case Label::Right: return "right";
    case Label::Omega: return "omega";
    case Label::Pi: return "pi";
  }
  return "?";
}

std::string_view label_symbol(Label l) {
  switch (l) {
    case Label::Beta: return "β";
    case Label::Left: return "left";
    case Label::Right: return "right";
    case Label::Omega: return "ω";
    case Label::Pi: return "π";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view s) {
  for (Label l : {Label::Beta, Label::Left, Label::Right, Label::Omega, Label::Pi})
    if (label_name(l) == s) return l;
  return std::nullopt;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace {

std::optional<RedexKind> local_kind(const Term& t) {
  if (auto* a = as<term::App>(t); a && as<term::Lambda>(a->fn)) return RedexKind::Beta;
  if (auto* p = as<term::Proj>(t); p && as<term::Pair>(p->body)) return RedexKind::Proj;
  if (auto* n = as<term::Nu>(t); n && as<term::Choice>(n->body)) return RedexKind::ChoiceNu;
  return std::nullopt;
}

std::vector<const Term*> children(const Term& t) {
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

struct RedexWalk {
  std::vector<TermRedex> out;
  std::set<Name> oracles_seen;
  Path path;
  bool first_only = false;

  bool done() const { return first_only && !out.empty(); }

  void run(const Term& t) {
    if (auto k = local_kind(t)) {
      out.push_back(TermRedex{path, *k, {}});
    } else if (auto shape = oracle_redex_shape(t)) {
      if (oracles_seen.insert(shape->oracle).second)
        out.push_back(TermRedex{path, shape->arg ? RedexKind::OracleUnary : RedexKind::OracleNullary, shape->oracle});
    }
    if (done()) return;
    auto kids = children(t);
    for (std::size_t i = 0; i < kids.size() && !done(); ++i) {
      path.push_back(i);
      run(*kids[i]);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<TermRedex> Reducer::find_redexes(const Term& t) const {
  RedexWalk w;
  w.run(t);
  return std::move(w.out);
}

std::optional<TermRedex> Reducer::deterministic_strategy(const Term& t) const {
  RedexWalk w;
  w.first_only = true;
  w.run(t);
  if (w.out.empty()) return std::nullopt;
  return w.out.front();
}

std::vector<StepOutcome> Reducer::step(const Term& t, const TermRedex& r) const {
  const Term& at = subterm_at(t, r.path);
  auto bad_path = [&] {
    return Error(ErrorCode::InvalidRedexPath, "no redex of the requested kind at the given path");
  };
  switch (r.kind) {
    case RedexKind::Beta: {
      auto* a = as<term::App>(at);
      auto* l = a ? as<term::Lambda>(a->fn) : nullptr;
      if (!l) throw bad_path();
      return {StepOutcome{replace_at(t, r.path, substitute_term(l->body, l->binder, a->arg)), 1, Label::Beta}};
    }
    case RedexKind::Proj: {
      auto* p = as<term::Proj>(at);
      auto* pr = p ? as<term::Pair>(p->body) : nullptr;
      if (!pr) throw bad_path();
      return {StepOutcome{replace_at(t, r.path, p->index == 0 ? pr->first : pr->second), 1, Label::Pi}};
    }
    case RedexKind::ChoiceNu: {
      auto* n = as<term::Nu>(at);
      auto* c = n ? as<term::Choice>(n->body) : nullptr;
      if (!c) throw bad_path();
      return {StepOutcome{replace_at(t, r.path, c->left), c->prob, Label::Left},
              StepOutcome{replace_at(t, r.path, c->right), Rational(1) - c->prob, Label::Right}};
    }
    case RedexKind::OracleNullary:
    case RedexKind::OracleUnary: {
      auto shape = oracle_redex_shape(at);
      if (!shape || shape->oracle != r.oracle) throw bad_path();
      auto d = decompose_oracle_context(t, r.oracle);
      if (d.occurrences.empty() || d.occurrences.front().path != r.path) throw bad_path();
      const OracleDef& def = checker_->oracles().get(r.oracle);
      NameSet globals = globals_.term_names();
      std::vector<Term> outputs;
      for (std::size_t i = 0; i < d.occurrences.size(); ++i) {
        auto& occ = d.occurrences[i];
        Term out = eval_oracle(def, d.context, i + 1, occ.arg);
        if (def.arity == 1 && occ.arg) {
          bool closed = true;
          for (auto& x : free_term_vars(*occ.arg)) closed = closed && globals.contains(x);
          if (closed) {
            try {
              checker_->check_type(globals_, out, def.output_type(occ.arg));
            } catch (const Error& e) {
              throw Error(ErrorCode::OutputIllTyped, "oracle '#" + def.name + "' at hole " + std::to_string(i + 1) +
                                                         ": " + e.what());
            }
          }
        }
        outputs.push_back(std::move(out));
      }
      return {StepOutcome{d.context.fill_all(outputs), 1, Label::Omega}};
    }
  }
  throw bad_path();
}

Reducer::Sample Reducer::run_sample(const Term& t, std::uint64_t seed, std::size_t fuel) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 gen(seq);
  const Rational::Integer two64 = Rational::Integer(1) << 64;

  Sample s{t, 1, {}};
  for (std::size_t used = 0;; ++used) {
    auto r = deterministic_strategy(s.normal_form);
    if (!r) return s;
    if (used == fuel)
      throw Error(ErrorCode::FuelExhausted, "no normal form within " + std::to_string(fuel) + " steps");
    auto outs = step(s.normal_form, *r);
    std::size_t pick = 0;
    if (r->kind == RedexKind::ChoiceNu) {
      Rational::Integer u = gen();
      const Rational& p = outs[0].prob;
      pick = u * p.denominator() < p.numerator() * two64 ? 0 : 1;
    }
    s.prob *= outs[pick].prob;
    s.normal_form = outs[pick].term;
    s.trace.push_back(std::move(outs[pick]));
  }
}

}  // namespace olam
