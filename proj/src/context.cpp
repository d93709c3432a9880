#include "olam/context.hpp"

#include "olam/overloaded.hpp"

namespace olam {

namespace {

struct HoleFiller {
  const std::vector<std::optional<Term>>& fillers;

  Term run(const Term& t) {
    const SourcePos pos = t->pos;
    return std::visit(
        overloaded{
            [&](const term::Hole& h) -> Term {
              if (h.index >= 1 && h.index <= fillers.size() && fillers[h.index - 1]) return *fillers[h.index - 1];
              return t;
            },
            [&](const term::OracleApp& o) -> Term { return oracle_app(o.oracle, run(o.arg), pos); },
            [&](const term::Lambda& l) -> Term { return lam(l.binder, l.domain, run(l.body), pos); },
            [&](const term::App& a) -> Term { return app(run(a.fn), run(a.arg), pos); },
            [&](const term::Choice& c) -> Term { return choice(run(c.left), c.prob, run(c.right), pos); },
            [&](const term::Nu& n) -> Term { return nu(run(n.body), pos); },
            [&](const term::Pair& p) -> Term { return pair(run(p.first), run(p.second), pos); },
            [&](const term::Proj& p) -> Term { return proj(run(p.body), p.index, pos); },
            [&](const term::Efq& e) -> Term { return efq(run(e.body), e.target, pos); },
            [&](const auto&) -> Term { return t; },
        },
        t->node);
  }
};

struct Decomposer {
  const Name& oracle;
  std::vector<OracleOccurrence> found;
  Path path;

  Term descend(std::size_t i, const Term& c) {
    path.push_back(i);
    Term r = run(c);
    path.pop_back();
    return r;
  }

  Term run(const Term& t) {
    if (auto shape = oracle_redex_shape(t); shape && shape->oracle == oracle) {
      found.push_back(OracleOccurrence{path, shape->arg, t});
      return hole(found.size());
    }
    const SourcePos pos = t->pos;
    return std::visit(
        overloaded{
            [&](const term::OracleApp& o) -> Term { return oracle_app(o.oracle, descend(0, o.arg), pos); },
            [&](const term::Lambda& l) -> Term { return lam(l.binder, l.domain, descend(0, l.body), pos); },
            [&](const term::App& a) -> Term {
              Term fn = descend(0, a.fn);
              return app(fn, descend(1, a.arg), pos);
            },
            [&](const term::Choice& c) -> Term {
              Term left = descend(0, c.left);
              return choice(left, c.prob, descend(1, c.right), pos);
            },
            [&](const term::Nu& n) -> Term { return nu(descend(0, n.body), pos); },
            [&](const term::Pair& p) -> Term {
              Term first = descend(0, p.first);
              return pair(first, descend(1, p.second), pos);
            },
            [&](const term::Proj& p) -> Term { return proj(descend(0, p.body), p.index, pos); },
            [&](const term::Efq& e) -> Term { return efq(descend(0, e.body), e.target, pos); },
            [&](const auto&) -> Term { return t; },
        },
        t->node);
  }
};

}  // namespace

HoleContext HoleContext::fill(std::size_t index, const Term& filler) const {
  if (index < 1 || index > holes_)
    throw Error(ErrorCode::InvalidHoleIndex, "hole index " + std::to_string(index) + " out of range");
  std::vector<std::optional<Term>> fillers(holes_);
  fillers[index - 1] = filler;
  return HoleContext(HoleFiller{fillers}.run(skeleton_), holes_);
}

Term HoleContext::fill_all(const std::vector<Term>& fillers) const {
  if (fillers.size() != holes_)
    throw Error(ErrorCode::InvalidHoleIndex, "expected " + std::to_string(holes_) + " fillers, got " +
                                                 std::to_string(fillers.size()));
  std::vector<std::optional<Term>> opt(fillers.begin(), fillers.end());
  return HoleFiller{opt}.run(skeleton_);
}

std::optional<OracleRedexShape> oracle_redex_shape(const Term& t) {
  auto* n = as<term::Nu>(t);
  if (!n) return std::nullopt;
  if (auto* r = as<term::OracleRef>(n->body)) return OracleRedexShape{r->oracle, std::nullopt};
  if (auto* a = as<term::OracleApp>(n->body)) return OracleRedexShape{a->oracle, a->arg};
  if (auto* a = as<term::App>(n->body))
    if (auto* r = as<term::OracleRef>(a->fn)) return OracleRedexShape{r->oracle, a->arg};
  return std::nullopt;
}

OracleDecomposition decompose_oracle_context(const Term& t, const Name& oracle) {
  Decomposer d{oracle, {}, {}};
  Term skeleton = d.run(t);
  std::size_t n = d.found.size();
  return OracleDecomposition{HoleContext(std::move(skeleton), n), std::move(d.found)};
}

}  // namespace olam
